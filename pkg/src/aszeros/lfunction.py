"""Character sums, exact L-polynomials, and their normalized zeros.

For a degree-d polynomial f over F_q (gcd(d, p) = 1) and a nontrivial
additive character psi of F_p, the inner sums

    S_r(f, psi) = sum over alpha in F_{q^r} of psi(Tr_{q^r/p} f(alpha))

are exact elements of Z[zeta_p].  The length-(d-1) polynomial L with
L(z) = exp(sum_r S_r z^r / r) is recovered from the log-derivative recursion
k c_k = sum_{j<=k} S_j c_{k-j}; the division by k happens in Q(zeta_p) and
integrality of every coefficient is asserted, so a silent arithmetic error
upstream cannot survive to the statistics layer.

Normalized zeros rho_i = (q^(1/2) z_i)^(-1) all lie on the unit circle; the
zero extractor checks this and the per-root residuals rather than assuming
it.  Frobenius trace powers T^r = sum rho_i^r double as -q^(-r/2) S_r for
|r| < d, and both routes are exposed so they can be compared.

Family sweeps never loop field enumeration per member: for each r the
per-element trace data is bucketed once, after which per-member sums are
table lookups.  Everything stays exact (integer counts, cyclotomic values).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import gcd, pi

import numpy as np

from .algebra import CycloElem, build_tower
from .algebra import polys
from .errors import NonIntegralCoefficient, check_cap
from .families import FamilySpec, coefficient_matrix, family_size

RESIDUAL_REL_TOL = 1e-10
RH_TOL = 1e-8


def trace_value_counts(f, r: int, fq, cap=None) -> np.ndarray:
    """counts[v] = #{alpha in F_{q^r} : Tr_{q^r/p} f(alpha) = v}, exact."""
    n = getattr(fq, "dim", 1)
    tower = build_tower(fq.p, n, r, cap)
    ctx = tower.enum_context(cap)
    if not f:
        counts = np.zeros(fq.p, dtype=np.int64)
        counts[0] = ctx.size
        return counts
    acc = ctx.full_const(f[-1])
    for c in reversed(f[:-1]):
        acc = ctx.mul(acc, ctx.elements)
        acc = ctx.add_const(acc, c)
    traces = ctx.trace_to_prime(acc)
    return np.bincount(traces, minlength=fq.p)


def char_sum(f, psi: int, r: int, fq, cap=None) -> CycloElem:
    """S_r(f, psi) as an exact cyclotomic integer."""
    if psi % fq.p == 0:
        raise ValueError("the trivial character is excluded")
    counts = trace_value_counts(f, r, fq, cap)
    return CycloElem.from_counts(fq.p, counts.tolist(), a=psi)


@dataclass(frozen=True)
class CharSumVector:
    """S_1 .. S_{d-1} for one polynomial and one character index."""

    f: tuple
    psi: int
    sums: tuple

    def __post_init__(self):
        for s in self.sums:
            s.integer_coords()  # character sums are algebraic integers


def char_sum_vector(f, psi: int, fq, cap=None) -> CharSumVector:
    d = polys.degree(f)
    sums = tuple(char_sum(f, psi, r, fq, cap) for r in range(1, d))
    return CharSumVector(tuple(f), psi, sums)


# -- family sweeps -------------------------------------------------------------


def _family_power_traces(spec: FamilySpec, r: int, cap=None):
    """Tr_{q^r/q}(alpha^i) for every alpha and every free index i, as columns."""
    tower = build_tower(spec.p, spec.n, r, cap)
    ctx = tower.enum_context(cap)
    free = set(spec.free_indices())
    cols = {}
    cur = ctx.elements
    if 1 in free:
        cols[1] = ctx.trace_to_fq(cur)
    for i in range(2, spec.d + 1):
        cur = ctx.mul(cur, ctx.elements)
        if i in free:
            cols[i] = ctx.trace_to_fq(cur)
    return ctx, [cols[i] for i in spec.free_indices()]


def family_trace_counts(spec: FamilySpec, r: int, cap=None) -> np.ndarray:
    """(#family, p) matrix: counts of Tr_{q^r/p} f(alpha) per member.

    Tr f(alpha) is F_p-linear in the free coefficients through the per-element
    trace vector t(alpha), so the q^r elements are bucketed by t once and each
    member's counts come from one pass over the q^k buckets.  Rows follow the
    family enumeration order and the entries are exact counts.
    """
    q, p, fq = spec.q, spec.p, spec.field()
    k = len(spec.free_indices())
    check_cap(q**k, cap, what=f"trace bucket table of size {q}^{k}")
    ctx, tcols = _family_power_traces(spec, r, cap)

    enc = np.zeros(ctx.size, dtype=np.int64)
    mult = 1
    for col in tcols:
        enc += col * mult
        mult *= q
    bucket_counts = np.bincount(enc, minlength=q**k)

    nbuckets = q**k
    bdig = np.empty((nbuckets, k), dtype=np.int64)
    codes = np.arange(nbuckets, dtype=np.int64)
    for t in range(k):
        bdig[:, t] = (codes // q**t) % q

    amat = coefficient_matrix(spec, cap)
    nfam = amat.shape[0]
    out = np.zeros((nfam, p), dtype=np.int64)
    chunk = max(1, (1 << 22) // max(nbuckets, 1))
    if fq.is_prime_field:
        bT = bdig.T
        for lo in range(0, nfam, chunk):
            hi = min(lo + chunk, nfam)
            phases = (amat[lo:hi] @ bT) % p
            for v in range(p):
                out[lo:hi, v] = ((phases == v) * bucket_counts).sum(axis=1)
    else:
        addt, mult_t = fq.code_tables()
        trp = fq.trace_to_prime_table()
        for lo in range(0, nfam, chunk):
            hi = min(lo + chunk, nfam)
            acc = np.zeros((hi - lo, nbuckets), dtype=np.int64)
            for t in range(k):
                acc = addt[acc, mult_t[amat[lo:hi, t][:, None], bdig[None, :, t]]]
            phases = trp[acc]
            for v in range(p):
                out[lo:hi, v] = ((phases == v) * bucket_counts).sum(axis=1)
    return out


def family_char_sums(spec: FamilySpec, psi: int, r: int, cap=None) -> list:
    """S_r(f, psi) for every family member, in enumeration order."""
    counts = family_trace_counts(spec, r, cap)
    p = spec.p
    return [CycloElem.from_counts(p, row.tolist(), a=psi) for row in counts]


def family_sum_char(spec: FamilySpec, r: int, cap=None) -> int:
    """The exact integer sum over the family of S_r(f, psi).

    The sum over each free coefficient factors out of the character sum:
    a free index i contributes q per element when Tr_{q^r/q}(alpha^i) = 0 and
    kills the term otherwise, while the nonzero leading coefficient
    contributes q-1 or -1.  The value is independent of the character index.
    """
    if spec.kind not in ("full", "odd"):
        raise ValueError("factored family sums need a constrained-coefficient family")
    q = spec.q
    k = len(spec.free_indices())
    _, tcols = _family_power_traces(spec, r, cap)
    mask = np.ones(tcols[0].shape[0], dtype=bool)
    for col in tcols[:-1]:
        mask &= col == 0
    lead_zero = tcols[-1] == 0
    contrib = np.where(mask, np.where(lead_zero, q - 1, -1), 0)
    return (q ** (k - 1)) * int(contrib.sum())


# -- L-polynomials --------------------------------------------------------------


@dataclass(frozen=True)
class LPoly:
    """Exact L-polynomial: coefficients c_0 = 1, ..., c_{d-1} in Z[zeta_p]."""

    p: int
    q: int
    d: int
    psi: int
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def embed(self) -> list:
        return [c.embed() for c in self.coeffs]

    def eval_complex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.embed()):
            acc = acc * z + c
        return acc


def l_polynomial(f, psi: int, fq, sums=None, cap=None) -> LPoly:
    """The exact L-polynomial of y^p - y = f(x) at character index psi.

    c_0 = 1 and k c_k = sum_{j=1}^{k} S_j c_{k-j}; every division by k must
    land back in Z[zeta_p], which is asserted coefficient by coefficient.
    """
    d = polys.degree(f)
    if d < 1:
        raise ValueError("f must be nonconstant")
    if gcd(d, fq.p) != 1:
        raise ValueError("degree must be prime to the characteristic")
    if sums is None:
        sums = [char_sum(f, psi, r, fq, cap) for r in range(1, d)]
    else:
        sums = list(sums)
        if len(sums) < d - 1:
            raise ValueError(f"need S_1..S_{d - 1}, got {len(sums)} sums")
    coeffs = [CycloElem.one(fq.p)]
    for k in range(1, d):
        acc = CycloElem.zero(fq.p)
        for j in range(1, k + 1):
            acc = acc + sums[j - 1] * coeffs[k - j]
        ck = acc.div_int(k)
        try:
            ck.integer_coords()
        except ValueError as exc:
            raise NonIntegralCoefficient(
                f"coefficient c_{k} of L_(f={polys.to_string(f)}) is not integral"
            ) from exc
        coeffs.append(ck)
    if d >= 2 and coeffs[d - 1].is_zero():
        raise ValueError(
            f"L-polynomial degree shortfall for f={polys.to_string(f)}; "
            "the precondition gcd(deg f, p) = 1 must have been violated"
        )
    return LPoly(fq.p, fq.q, d, psi, tuple(coeffs))


# -- zeros ----------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroSet:
    """Zeros of an L-polynomial with their normalizations, sorted by angle."""

    q: int
    zeros: tuple  # roots z_i of L, |z_i| = q^(-1/2) under the circle law
    rho: tuple  # normalized zeros (q^(1/2) z_i)^(-1), on the unit circle
    angles: tuple  # arg(rho_i) in [0, 2*pi), ascending
    residuals: tuple  # |L(z_i)|
    max_unit_dev: float
    rh_ok: bool

    def trace_power(self, r: int) -> complex:
        return sum(z**r for z in self.rho) if self.rho else 0j


def zeros(lpoly: LPoly) -> ZeroSet:
    """All degree-many roots, companion-matrix eigenvalues plus one Newton polish.

    Roots are never dropped: a residual above the tolerance raises instead of
    returning a quietly broken set.
    """
    emb = lpoly.embed()
    if len(emb) == 1:
        return ZeroSet(lpoly.q, (), (), (), (), 0.0, True)
    scale = max(abs(c) for c in emb)
    roots = np.roots(emb[::-1])
    deriv = [k * emb[k] for k in range(1, len(emb))]

    def _eval(cs, z):
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    polished = []
    for z in roots:
        z = complex(z)
        fz = _eval(emb, z)
        dz = _eval(deriv, z)
        if dz != 0:
            z2 = z - fz / dz
            if abs(_eval(emb, z2)) < abs(fz):
                z = z2
                fz = _eval(emb, z)
        polished.append((z, abs(fz)))

    bad = [res for _, res in polished if res > RESIDUAL_REL_TOL * scale]
    if bad:
        raise ArithmeticError(
            f"root refinement did not converge: residuals {bad} exceed "
            f"{RESIDUAL_REL_TOL * scale:.3e}"
        )
    sqrt_q = lpoly.q**0.5
    entries = []
    for z, res in polished:
        rho = 1.0 / (sqrt_q * z)
        theta = cmath.phase(rho) % (2 * pi)
        entries.append((theta, rho, z, res))
    entries.sort(key=lambda t: t[0])
    max_dev = max((abs(abs(e[1]) - 1.0) for e in entries), default=0.0)
    return ZeroSet(
        lpoly.q,
        tuple(e[2] for e in entries),
        tuple(e[1] for e in entries),
        tuple(e[0] for e in entries),
        tuple(e[3] for e in entries),
        max_dev,
        max_dev <= RH_TOL,
    )


# -- trace powers ----------------------------------------------------------------


@dataclass(frozen=True)
class TracePower:
    r: int
    value: complex
    exact_sum: CycloElem | None  # T^r = q^(qpow/2) * embed(exact_sum) when present
    qpow: int


def trace_power(f, psi: int, r: int, fq, zeroset: ZeroSet | None = None, cap=None) -> TracePower:
    """T^r = sum of r-th powers of the normalized zeros.

    For 0 < |r| < d this is computed exactly as -q^(-|r|/2) S_|r| (conjugated
    for negative r); otherwise it needs the extracted zeros.
    """
    d = polys.degree(f)
    if r == 0:
        return TracePower(0, complex(d - 1), CycloElem.from_int(fq.p, d - 1), 0)
    if abs(r) < d:
        s = char_sum(f, psi, abs(r), fq, cap)
        if r < 0:
            s = s.conj()
        exact = -s
        value = exact.embed() * fq.q ** (-abs(r) / 2)
        return TracePower(r, value, exact, -abs(r))
    if zeroset is None:
        raise ValueError(f"|r| = {abs(r)} >= d = {d} needs an extracted zero set")
    return TracePower(r, zeroset.trace_power(r), None, 0)
