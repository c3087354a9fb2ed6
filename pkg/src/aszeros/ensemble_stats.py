"""Family averages of Frobenius trace powers, with exact closed-form oracles,
window-function one-level statistics, and the two-level density.

Exact values are carried as (rational coefficient) * q^(qpow/2) triples
(`QScaled`), so every identity with an exact statement is checked by integer
or rational equality, never by floating tolerance.  Floating views are only
derived at the very end for reporting.

Two independent routes exist for every average:

  * enumeration - exact sums of character sums over the family (either the
    literal member-by-member sum or the per-coefficient factorization, which
    is the same finite sum reordered);
  * oracle - the eta-count / irreducible-count formulas.

Their exact agreement is the main test surface of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, cos, gcd, pi, sin

import numpy as np
from scipy.integrate import quad

from .algebra import CycloElem, middle_field
from .algebra import polys
from .errors import check_cap
from .families import FamilySpec, family_size, member_at
from .lfunction import (
    char_sum,
    family_char_sums,
    family_sum_char,
    family_trace_counts,
    l_polynomial,
    zeros,
)


@dataclass(frozen=True)
class QScaled:
    """An exact real value coeff * q^(qpow/2)."""

    q: int
    coeff: Fraction
    qpow: int

    def canonical(self):
        return self.coeff * Fraction(self.q) ** (self.qpow // 2), self.qpow % 2

    def to_float(self) -> float:
        whole, rem = self.canonical()
        val = float(whole)
        if rem:
            val *= self.q**0.5
        return val

    def __eq__(self, other):
        if not isinstance(other, QScaled):
            return NotImplemented
        if self.q != other.q:
            return False
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.q,) + self.canonical())

    def __repr__(self):
        return f"QScaled({self.coeff} * {self.q}^({self.qpow}/2))"


def _e(p: int, r: int) -> int:
    """Indicator that p divides r."""
    return 1 if r % p == 0 else 0


# -- eta counts and the irreducible-count oracle --------------------------------


@dataclass(frozen=True)
class EtaCounts:
    """Counts of constrained monic irreducibles of degree s.

    eta: top coefficients c_{s-k} vanish for all 1 <= k < d prime to p.
    eta0: additionally c_{s-d} = 0 (zero by definition when s = d).
    """

    d: int
    s: int
    eta: int
    eta0: int
    total: int  # number of monic irreducibles of degree s

    def __post_init__(self):
        if not 0 <= self.eta0 <= self.eta <= self.total:
            raise ValueError(f"inconsistent counts {self}")


def eta_counts(d: int, s: int, fq, cap=None) -> EtaCounts:
    ks = [k for k in range(1, d) if k <= s and gcd(k, fq.p) == 1]
    eta = 0
    eta0 = 0
    for h in polys.irreducibles(fq, s, cap):
        if any(h[s - k] for k in ks):
            continue
        eta += 1
        if s > d and h[s - d] == 0:
            eta0 += 1
    return EtaCounts(d, s, eta, eta0, polys.count_irreducibles(s, fq.q))


def corollary_value(p: int, q: int, r: int) -> QScaled:
    """Exact average trace power for r < d: -e q^(r/p - r/2) + (e - 1) q^(-r/2)."""
    e = _e(p, r)
    return QScaled(q, Fraction(-(e * q ** (r // p) - e + 1)), -r)


def prop_irr_oracle(d: int, r: int, fq, cap=None) -> QScaled:
    """Exact average trace power for any r, from constrained irreducible counts.

    Degree-s elements (s | r, p not dividing r/s, s >= d) contribute through
    eta_d(s) and eta0_d(s); everything of lower degree collapses to the
    corollary terms.
    """
    p, q = fq.p, fq.q
    coeff = Fraction(corollary_value(p, q, r).coeff)
    for s in range(d, r + 1):
        if r % s or gcd(r // s, p) != 1:
            continue
        ec = eta_counts(d, s, fq, cap)
        coeff += Fraction(q, q - 1) * s * (Fraction(ec.eta, q) - ec.eta0)
    return QScaled(q, coeff, -r)


def mdrs1_oracle(r: int, s: int, sign: int, fq) -> QScaled:
    """Exact pair average for r + s < d, from irreducible counts at the
    divisors m of gcd(r, s) with mp | r -+ s and mp not dividing r."""
    if r < 1 or s < 1:
        raise ValueError("pair orders must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    p, q = fq.p, fq.q
    combo = r - s if sign == -1 else r + s
    g = gcd(r, s)
    bracket = 0
    for m in range(1, g + 1):
        if g % m == 0 and combo % (m * p) == 0 and r % (m * p) != 0:
            bracket += polys.count_irreducibles(m, q) * m * m
    er, es = _e(p, r), _e(p, s)
    bracket += er * es * q ** ((r + s) // p)
    bracket += (1 - er) * es * q ** (s // p)
    bracket += er * (1 - es) * q ** (r // p)
    bracket += (1 - er) * (1 - es)
    return QScaled(q, Fraction(bracket), -(r + s))


# -- family averages -------------------------------------------------------------


@dataclass(frozen=True)
class MomentReport:
    """One family average with its exact value and closed-form prediction."""

    kind: str  # "trace" or "pair"
    spec: FamilySpec
    psi: int
    r: int
    s: int | None
    sign: int | None
    family_size: int
    family_sum: int  # exact sum over the family (rational, scale q^0)
    exact: QScaled
    oracle: QScaled | None
    leading_term: float | None
    error_bound: float | None

    @property
    def float_value(self) -> float:
        return self.exact.to_float()

    @property
    def oracle_float(self) -> float | None:
        return None if self.oracle is None else self.oracle.to_float()

    @property
    def matches_oracle(self) -> bool | None:
        return None if self.oracle is None else self.exact == self.oracle

    @property
    def abs_error(self) -> float | None:
        if self.oracle is None:
            return None
        return abs(self.float_value - self.oracle.to_float())


def _direct_family_sum(spec: FamilySpec, psi: int, r: int, cap=None) -> int:
    total = CycloElem.zero(spec.p)
    for val in family_char_sums(spec, psi, r, cap):
        total = total + val
    frac = total.rational()  # the family sum is rational: realness built in
    if frac.denominator != 1:
        raise ArithmeticError("family character sum must be an integer")
    return frac.numerator


def avg_trace(
    spec: FamilySpec,
    r: int,
    psi: int = 1,
    method: str = "factored",
    with_oracle: bool = True,
    cap=None,
) -> MomentReport:
    """M_d^r = average over the family of T^r = -q^(-r/2) S_r, exactly.

    `method` picks the enumeration route: "factored" sums the per-coefficient
    factorization over F_{q^r} (fast, psi-independent by construction);
    "direct" adds up the per-member character sums (psi enters and must drop
    out).  Both produce the identical integer.
    """
    fq = spec.field()
    if method == "factored":
        fam_sum = family_sum_char(spec, r, cap)
    elif method == "direct":
        fam_sum = _direct_family_sum(spec, psi, r, cap)
    else:
        raise ValueError(f"unknown method {method!r}")
    size = family_size(spec)
    exact = QScaled(spec.q, Fraction(-fam_sum, size), -r)
    oracle = None
    if with_oracle:
        if r < spec.d:
            oracle = corollary_value(spec.p, spec.q, r)
        else:
            oracle = prop_irr_oracle(spec.d, r, fq, cap)
    e = _e(spec.p, r)
    leading = -e * float(spec.q) ** (r / spec.p - r / 2)
    bound = r * float(spec.q) ** (r / 2 - (1 - 1 / spec.p) * spec.d) + float(
        spec.q
    ) ** (-r / 2)
    return MomentReport(
        "trace", spec, psi, r, None, None, size, fam_sum, exact, oracle, leading, bound
    )


def avg_pair(
    spec: FamilySpec,
    r: int,
    s: int,
    sign: int,
    psi: int = 1,
    with_oracle: bool = True,
    cap=None,
) -> MomentReport:
    """M_d^{r, +-s} = average of T^r T^(+-s), exactly.

    sign = -1 pairs S_r with the conjugate of S_s (the correlation-type
    average), sign = +1 with S_s itself.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    p = spec.p
    sums_r = family_char_sums(spec, psi, r, cap)
    sums_s = sums_r if s == r else family_char_sums(spec, psi, s, cap)
    total = CycloElem.zero(p)
    for a, b in zip(sums_r, sums_s):
        total = total + a * (b.conj() if sign == -1 else b)
    frac = total.rational()
    if frac.denominator != 1:
        raise ArithmeticError("family pair sum must be an integer")
    pair_sum = frac.numerator
    size = family_size(spec)
    exact = QScaled(spec.q, Fraction(pair_sum, size), -(r + s))
    oracle = None
    if with_oracle and r + s < spec.d:
        oracle = mdrs1_oracle(r, s, sign, spec.field())
    hi, lo = max(r, s), min(r, s)
    if sign == -1:
        leading = float(r) if r == s else 0.0
        bound = hi * float(spec.q) ** (-hi / 2) + float(spec.q) ** (
            (1 / p - 0.5) * (r + s)
        )
    else:
        leading = 0.0
        bound = hi * float(spec.q) ** ((1 / p - 0.5) * (r + s))
    return MomentReport(
        "pair", spec, psi, r, s, sign, size, pair_sum, exact, oracle, leading, bound
    )


# -- window functions -------------------------------------------------------------


def fejer_window(a: float, t: float) -> float:
    """V(t) = (sin(at)/(at))^2, the smooth window used throughout; V(0) = 1."""
    if a <= 0:
        raise ValueError("window parameter must be positive")
    x = a * t
    if x == 0.0:
        return 1.0
    return (sin(x) / x) ** 2

def fejer_hat(a: float, s: float) -> float:
    """Fourier transform of fejer_window under V^(s) = (1/2pi) int V e^(-ist):
    a triangle of height 1/(2a) supported on |s| < 2a."""
    if a <= 0:
        raise ValueError("window parameter must be positive")
    return max(0.0, 1.0 - abs(s) / (2 * a)) / (2 * a)


@dataclass(frozen=True)
class WindowSpec:
    """A Fejer window with shift theta; the scaling parameter is supplied by
    the statistic (d for one-level, d-1 for two-level)."""

    a: float
    theta: float = 0.0

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("window parameter must be positive")


def window_frequencies(a: float, scale: int) -> list:
    """Positive Fourier orders r with fejer_hat(a, r/scale) nonzero."""
    return [r for r in range(1, ceil(2 * a * scale) + 1) if fejer_hat(a, r / scale) > 0]


@dataclass(frozen=True)
class WindowStatResult:
    spec: FamilySpec
    window: WindowSpec
    psi: int
    scale: int
    fourier_average: float
    moments: dict  # r -> MomentReport
    per_f_zero_side: tuple | None
    per_f_exact_side: tuple | None
    zero_side_average: float | None
    max_route_gap: float | None


def _check_one_level_support(a: float, p: int) -> None:
    if not 2 * a < 2 - 2 / p:
        raise ValueError(
            f"window support [{-2 * a}, {2 * a}] violates the one-level "
            f"constraint 2a < {2 - 2 / p} for p = {p}"
        )


def window_average_fourier(
    spec: FamilySpec, window: WindowSpec, cap=None
) -> tuple:
    """Family average of S_f evaluated on the Fourier side with exact moments.

    Returns (average, {r: MomentReport}).  The average is
    hat V(0) + sum_r [hat V(r/d) e^(-ir theta) + hat V(-r/d) e^(ir theta)] M_d^r / d.
    """
    _check_one_level_support(window.a, spec.p)
    d = spec.d
    moments = {}
    acc = complex(fejer_hat(window.a, 0.0))
    for r in window_frequencies(window.a, d):
        rep = avg_trace(spec, r, with_oracle=False, cap=cap)
        moments[r] = rep
        m = rep.float_value
        hat_pos = fejer_hat(window.a, r / d)
        hat_neg = fejer_hat(window.a, -r / d)
        phase = complex(cos(r * window.theta), -sin(r * window.theta))
        acc += (hat_pos * phase + hat_neg * phase.conjugate()) * m / d
    if abs(acc.imag) > 1e-12:
        raise ArithmeticError(f"one-level average has imaginary residue {acc.imag}")
    return acc.real, moments


def _per_f_window_values(spec: FamilySpec, window: WindowSpec, psi: int, cap=None):
    """Per-member S_f two ways: from extracted zeros and from exact sums."""
    d = spec.d
    fq = spec.field()
    freqs = window_frequencies(window.a, d)
    if freqs and freqs[-1] >= d:
        raise ValueError(
            "per-member evaluation needs all frequencies below d; "
            f"got max order {freqs[-1]} at d = {d}"
        )
    counts_by_r = {r: family_trace_counts(spec, r, cap) for r in range(1, d)}
    size = family_size(spec)
    hat0 = fejer_hat(window.a, 0.0)
    theta = window.theta
    zero_side = []
    exact_side = []
    for idx in range(size):
        sums = [
            CycloElem.from_counts(spec.p, counts_by_r[r][idx].tolist(), a=psi)
            for r in range(1, d)
        ]
        lp = l_polynomial(_member(spec, idx), psi, fq, sums=sums)
        zs = zeros(lp)
        rho = np.array(zs.rho, dtype=complex)
        acc_zero = complex(hat0)
        acc_exact = complex(hat0)
        for r in freqs:
            hat_pos = fejer_hat(window.a, r / d)
            hat_neg = fejer_hat(window.a, -r / d)
            phase = complex(cos(r * theta), -sin(r * theta))
            t_zero = (rho**r).sum() if len(rho) else 0j
            t_exact = (-sums[r - 1].embed()) * fq.q ** (-r / 2)
            acc_zero += (hat_pos * phase * t_zero + hat_neg * phase.conjugate() * t_zero.conjugate()) / d
            acc_exact += (hat_pos * phase * t_exact + hat_neg * phase.conjugate() * t_exact.conjugate()) / d
        zero_side.append(acc_zero.real)
        exact_side.append(acc_exact.real)
    return zero_side, exact_side


def _member(spec: FamilySpec, idx: int):
    from .families import member_at

    return member_at(spec, idx)


def window_stat(
    spec: FamilySpec,
    window: WindowSpec,
    psi: int = 1,
    per_f: bool = True,
    cap=None,
) -> WindowStatResult:
    """One-level statistic S_f = sum_j v_{d,theta}(theta_j) over the family.

    The family average is always computed on the Fourier side from exact
    moments; with per_f=True each member is additionally evaluated both from
    its extracted zeros and from its exact character sums, and the worst
    disagreement between the routes is reported.
    """
    _check_one_level_support(window.a, spec.p)
    fourier_avg, moments = window_average_fourier(spec, window, cap)
    per_zero = per_exact = None
    zero_avg = gap = None
    if per_f:
        zero_side, exact_side = _per_f_window_values(spec, window, psi, cap)
        per_zero = tuple(zero_side)
        per_exact = tuple(exact_side)
        zero_avg = sum(zero_side) / len(zero_side)
        gap = max(abs(a - b) for a, b in zip(zero_side, exact_side))
    return WindowStatResult(
        spec, window, psi, spec.d, fourier_avg, moments, per_zero, per_exact, zero_avg, gap
    )


# -- two-level density -------------------------------------------------------------


@dataclass(frozen=True)
class TwoLevelResult:
    spec: FamilySpec
    a1: float
    a2: float
    theta: float
    psi: int
    scale: int
    empirical: float
    prediction: float
    n_members: int


def two_level_prediction(a1: float, a2: float) -> float:
    """Expected two-level statistic under the unitary pair correlation.

    Plancherel route: hatV(0,0) - int hatV(sigma,-sigma) K(sigma) dsigma with
    K(sigma) = max(1 - |sigma|, 0).  Equivalently (1/4pi^2) times the integral
    of V(t, u) (1 - (sin((t-u)/2)/((t-u)/2))^2).
    """
    s0 = min(2 * a1, 2 * a2, 1.0)

    def integrand(sig):
        return fejer_hat(a1, sig) * fejer_hat(a2, sig) * max(0.0, 1.0 - abs(sig))

    val, _ = quad(integrand, -s0, s0, points=[0.0], limit=200)
    return fejer_hat(a1, 0.0) * fejer_hat(a2, 0.0) - val


def two_level_prediction_2d(a1: float, a2: float, tmax: float = 500.0) -> float:
    """The same prediction by nested quadrature in rotated coordinates
    (an independent cross-check of the Plancherel route)."""

    def autocorr(tau):
        val, _ = quad(
            lambda t: fejer_window(a1, t + tau) * fejer_window(a2, t),
            -tmax,
            tmax,
            limit=800,
        )
        return val

    def outer(tau):
        x = tau / 2
        kernel = 1.0 if x == 0 else (sin(x) / x) ** 2
        return autocorr(tau) * kernel

    val, _ = quad(outer, -tmax, tmax, limit=800)
    return fejer_hat(a1, 0.0) * fejer_hat(a2, 0.0) - val / (4 * pi**2)


def _check_two_level_support(a1: float, a2: float) -> None:
    if a1 <= 0 or a2 <= 0:
        raise ValueError("window parameters must be positive")
    if a1 + a2 > 0.5 + 1e-12:
        raise ValueError(
            f"product window with a1 + a2 = {a1 + a2} violates the support "
            "constraint a1 + a2 <= 1/2"
        )


def two_level_stat(
    spec: FamilySpec,
    a1: float,
    a2: float,
    psi: int = 1,
    theta: float = 0.0,
    cap=None,
) -> TwoLevelResult:
    """Empirical two-level statistic over the family against the unitary
    pair-correlation prediction.

    Per member, S^2 = sum over j != k of v_{d-1}(theta_j - theta, theta_k - theta)
    is evaluated through the finite Fourier expansion with trace powers taken
    from the member's extracted zeros; the scaling parameter is d - 1.
    """
    _check_two_level_support(a1, a2)
    if spec.p == 2:
        raise ValueError("the two-level statistic is defined for p > 2")
    d = spec.d
    scale = d - 1
    fq = spec.field()
    freqs1 = [0] + window_frequencies(a1, scale)
    freqs2 = [0] + window_frequencies(a2, scale)
    r1 = freqs1[-1]
    r2 = freqs2[-1]
    counts_by_r = {r: family_trace_counts(spec, r, cap) for r in range(1, d)}
    size = family_size(spec)
    total = 0j
    hat1 = {r: fejer_hat(a1, r / scale) for r in range(-r1, r1 + 1)}
    hat2 = {s: fejer_hat(a2, s / scale) for s in range(-r2, r2 + 1)}
    for idx in range(size):
        sums = [
            CycloElem.from_counts(spec.p, counts_by_r[r][idx].tolist(), a=psi)
            for r in range(1, d)
        ]
        lp = l_polynomial(_member(spec, idx), psi, fq, sums=sums)
        zs = zeros(lp)
        rho = np.array(zs.rho, dtype=complex)
        tpow = {0: complex(d - 1)}
        for m in range(1, r1 + r2 + 1):
            tpow[m] = (rho**m).sum()
            tpow[-m] = tpow[m].conjugate()
        acc = 0j
        for r in range(-r1, r1 + 1):
            for s in range(-r2, r2 + 1):
                w = hat1[r] * hat2[s]
                if w == 0.0:
                    continue
                phase = complex(cos((r + s) * theta), -sin((r + s) * theta))
                acc += w * phase * (tpow[r] * tpow[s] - tpow[r + s])
        total += acc / scale**2
    empirical = total / size
    if abs(empirical.imag) > 1e-9:
        raise ArithmeticError(f"two-level average has imaginary residue {empirical.imag}")
    return TwoLevelResult(
        spec, a1, a2, theta, psi, scale, empirical.real, two_level_prediction(a1, a2), size
    )
