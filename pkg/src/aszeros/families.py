"""Polynomial families over F_q and the reduction onto them.

Three families of degree-d polynomials are enumerable here:

  full  - coefficient a_i = 0 whenever p | i (including a_0), a_d != 0;
          this is the natural parameter space of curves y^p - y = f(x)
          up to isomorphism and twist.
  odd   - the odd subfamily of `full` (only odd powers of x), d odd, p > 2.
  monic - all monic degree-d polynomials, no further constraint.

Members are enumerated in lexicographic order of their free-coefficient
tuples (free indices ascending, coefficients ordered by code), which fixes a
deterministic bijection index <-> member used for cursor splitting and for
reproducible output.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .algebra import build_tower, middle_field, trace_to_prime
from .algebra import polys
from .errors import check_cap

KINDS = ("full", "odd", "monic")


@dataclass(frozen=True)
class FamilySpec:
    """A family of degree-d polynomials over F_q, q = p^n."""

    kind: str
    p: int
    n: int
    d: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.d < 1:
            raise ValueError("degree must be positive")
        if self.kind in ("full", "odd") and gcd(self.d, self.p) != 1:
            raise ValueError(f"family requires gcd(d, p) = 1, got d={self.d}, p={self.p}")
        if self.kind == "odd":
            if self.d % 2 == 0:
                raise ValueError("odd family requires odd d")
            if self.p == 2:
                raise ValueError("odd family requires p > 2")

    @property
    def q(self) -> int:
        return self.p**self.n

    def field(self):
        return middle_field(self.p, self.n)

    def free_indices(self) -> tuple:
        """Indices of the freely varying coefficients, ascending."""
        if self.kind == "monic":
            return tuple(range(self.d))
        idx = [i for i in range(1, self.d + 1) if i % self.p != 0]
        if self.kind == "odd":
            idx = [i for i in idx if i % 2 == 1]
        return tuple(idx)

    def contains(self, f) -> bool:
        if polys.degree(f) != self.d:
            return False
        if self.kind == "monic":
            return f[-1] == 1
        free = set(self.free_indices())
        return all(c == 0 for i, c in enumerate(f) if i not in free)


def family_size(spec: FamilySpec) -> int:
    """Number of members, straight from the coefficient constraints."""
    q = spec.q
    k = len(spec.free_indices())
    if spec.kind == "monic":
        return q**k
    return (q - 1) * q ** (k - 1)


def _radices(spec: FamilySpec) -> list:
    # per-coordinate ranges; the leading coefficient of full/odd omits zero
    q = spec.q
    free = spec.free_indices()
    if spec.kind == "monic":
        return [q] * len(free)
    return [q] * (len(free) - 1) + [q - 1]


def member_at(spec: FamilySpec, index: int) -> tuple:
    """The index-th member in enumeration order."""
    free = spec.free_indices()
    radices = _radices(spec)
    coords = [0] * len(free)
    m = index
    for t in range(len(free) - 1, -1, -1):
        coords[t] = m % radices[t]
        m //= radices[t]
    if m:
        raise IndexError(f"index {index} out of range")
    coeffs = [0] * (spec.d + 1)
    for t, i in enumerate(free):
        coeffs[i] = coords[t]
    if spec.kind == "monic":
        coeffs[spec.d] = 1
    else:
        coeffs[spec.d] = coords[-1] + 1  # leading coefficient in 1..q-1
    return tuple(coeffs)


def enumerate_family(spec: FamilySpec, cap=None):
    """All members exactly once, in lexicographic free-coefficient order."""
    total = check_cap(family_size(spec), cap, what=f"family of size {family_size(spec)}")
    for index in range(total):
        yield member_at(spec, index)


def coefficient_matrix(spec: FamilySpec, cap=None) -> np.ndarray:
    """(#family, #free) matrix of free coefficients, rows in enumeration order."""
    total = check_cap(family_size(spec), cap)
    radices = _radices(spec)
    idx = np.arange(total, dtype=np.int64)
    cols = []
    div = 1
    for t in range(len(radices) - 1, -1, -1):
        cols.append((idx // div) % radices[t])
        div *= radices[t]
    cols.reverse()
    mat = np.stack(cols, axis=1)
    if spec.kind == "monic":
        mat[:, -1] = 1
    else:
        mat[:, -1] += 1
    return mat


def sample(spec: FamilySpec, seed) -> tuple:
    """One member drawn uniformly; deterministic for a given seed.

    `seed` may be an int or a numpy Generator (so callers can stream draws).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    index = int(rng.integers(0, family_size(spec)))
    return member_at(spec, index)


def distinguished_element(fq) -> int:
    """The least element c of F_q with Tr_{q/p}(c) = 1, fixed per field."""
    for c in range(fq.q):
        if fq.trace_to_prime(c) == 1:
            return c
    raise ArithmeticError("trace map cannot be identically zero")


def _inverse_frobenius(a: int, fq, times: int) -> int:
    """a^(p^-times) in F_q; the identity on a prime field."""
    n = getattr(fq, "dim", 1)
    if n == 1 or a == 0:
        return a
    k = (n - times % n) % n
    return fq.pow_(a, fq.p**k)


def reduce_to_family(f, spec: FamilySpec):
    """Project a degree-d polynomial onto the full family.

    Returns (g, w) with g in the family and w in F_p such that f and g + w*c
    (c the distinguished trace-one element) have the same trace sums
    Tr_{q^r/p} f(alpha) for every r and every alpha in F_{q^r}: each
    coefficient a_{i p^j} folds onto index i after j inverse Frobenius twists,
    and the constant term only matters through its prime-field trace.
    """
    if spec.kind != "full":
        raise ValueError("reduction targets the full family")
    fq = spec.field()
    p, d = spec.p, spec.d
    if polys.degree(f) != d:
        raise ValueError(f"expected degree {d}, got {polys.degree(f)}")
    if gcd(d, p) != 1:
        raise ValueError("reduction requires gcd(d, p) = 1")
    out = [0] * (d + 1)
    for i in range(1, d + 1):
        if i % p == 0:
            continue
        acc = 0
        ipj = i
        j = 0
        while ipj <= d:
            if ipj < len(f) and f[ipj]:
                acc = fq.add(acc, _inverse_frobenius(f[ipj], fq, j))
            ipj *= p
            j += 1
        out[i] = acc
    g = polys.normalize(out)
    w = fq.trace_to_prime(f[0]) if f else 0
    if not spec.contains(g):
        raise ArithmeticError("reduction left the family; degree must have dropped")
    return g, w


def char_sum_shift(spec: FamilySpec, w: int, r: int, psi: int) -> int:
    """Exponent shift relating character sums of f and of its reduction g:
    S_r(f) = zeta^shift * S_r(g) where shift = psi * w * (r mod p)."""
    return (psi * w * r) % spec.p


# -- convenience -------------------------------------------------------------


def family_tower(spec: FamilySpec, r: int, cap=None):
    return build_tower(spec.p, spec.n, r, cap)
