"""Polynomials over a finite field, as coefficient tuples of element codes.

A polynomial c_0 + c_1 x + ... + c_n x^n is the tuple (c_0, ..., c_n) of
coefficient codes in some field K (see fields.py for the code convention),
with no trailing zeros; the zero polynomial is the empty tuple and has
degree -1.  All functions take the coefficient field K explicitly, in the
style of stateless gf_* toolkits.

"Lexicographically least" throughout means: compare coefficient tuples of
monic polynomials high degree first, coefficients ordered by their integer
code.  Enumeration of monic irreducibles follows that order and is verified
by trial division against the cached irreducibles of lower degree.
"""

from __future__ import annotations

import numpy as np

from ..errors import check_cap

X = "x"


def normalize(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(f) -> int:
    """Degree of f; -1 for the zero polynomial."""
    return len(f) - 1


def is_monic(f) -> bool:
    return bool(f) and f[-1] == 1


def constant(f, K):
    return f[0] if f else 0


def add(f, g, K):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out.append(K.add(a, b))
    return normalize(out)


def neg(f, K):
    return tuple(K.neg(c) for c in f)


def sub(f, g, K):
    return add(f, neg(g, K), K)


def scalar_mul(c, f, K):
    if c == 0:
        return ()
    return normalize(K.mul(c, a) for a in f)


def mul(f, g, K):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = K.add(out[i + j], K.mul(a, b))
    return normalize(out)


def divmod_(f, g, K):
    """Quotient and remainder of f by nonzero g."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = degree(g)
    inv_lead = K.inv(g[-1])
    quo = [0] * max(len(f) - dg, 0)
    for t in range(len(f) - 1, dg - 1, -1):
        c = r[t]
        if c == 0:
            continue
        qc = K.mul(c, inv_lead)
        quo[t - dg] = qc
        for j in range(dg + 1):
            r[t - dg + j] = K.sub(r[t - dg + j], K.mul(qc, g[j]))
    return normalize(quo), normalize(r)


def mod_(f, g, K):
    return divmod_(f, g, K)[1]


def divides(g, f, K) -> bool:
    return not mod_(f, g, K)


def gcd_(f, g, K):
    """Monic greatest common divisor."""
    while g:
        f, g = g, mod_(f, g, K)
    return make_monic(f, K)


def make_monic(f, K):
    if not f or f[-1] == 1:
        return tuple(f)
    return scalar_mul(K.inv(f[-1]), f, K)


def eval_at(f, x, K):
    """Horner evaluation of f at the field element x."""
    acc = 0
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


def reciprocal(f) -> tuple:
    """h(x) = sum c_i x^i of degree s maps to h*(x) = sum c_{s-i} x^i."""
    if not f:
        raise ValueError("reciprocal of the zero polynomial")
    return normalize(reversed(f))


def shift_compose(f, k: int) -> tuple:
    """f(x^k) as a coefficient tuple."""
    if k < 1:
        raise ValueError("k must be positive")
    if not f:
        return ()
    out = [0] * ((len(f) - 1) * k + 1)
    for i, c in enumerate(f):
        out[i * k] = c
    return tuple(out)


def mul_trunc(f, g, K, n: int):
    """f*g mod x^n."""
    out = [0] * n
    for i, a in enumerate(f):
        if a and i < n:
            for j, b in enumerate(g):
                if i + j >= n:
                    break
                if b:
                    out[i + j] = K.add(out[i + j], K.mul(a, b))
    return tuple(out)


def inv_trunc(f, K, n: int):
    """Multiplicative inverse of f mod x^n; requires f(0) != 0.

    Iterative: given g with f*g = 1 mod x^m, the coefficients of g at
    m..2m-1 are solved one at a time (linear in the unknown coefficient).
    Plain quadratic loop, which is fine at the truncation orders used here.
    """
    if not f or f[0] == 0:
        raise ZeroDivisionError("series inverse needs a unit constant term")
    inv0 = K.inv(f[0])
    g = [inv0] + [0] * (n - 1)
    for m in range(1, n):
        # coefficient of x^m in f*g must vanish
        acc = 0
        for j in range(1, min(m, len(f) - 1) + 1):
            if f[j]:
                acc = K.add(acc, K.mul(f[j], g[m - j]))
        g[m] = K.neg(K.mul(inv0, acc))
    return tuple(g)


# -- irreducibility ----------------------------------------------------------


def _irr_cache(K) -> dict:
    cache = getattr(K, "_irr_cache", None)
    if cache is None:
        cache = {}
        K._irr_cache = cache
    return cache


def irreducibles(K, e: int, cap=None) -> tuple:
    """All monic irreducible polynomials of degree e over K, lex order, cached."""
    if e < 1:
        raise ValueError("degree must be positive")
    cache = _irr_cache(K)
    got = cache.get(e)
    if got is None:
        got = cache[e] = _enumerate_irreducibles(K, e, cap)
    return got


def _enumerate_irreducibles(K, e: int, cap=None) -> tuple:
    q = K.q
    if e == 1:
        return tuple((c, 1) for c in range(q))
    check_cap(q**e, cap, what=f"monic degree-{e} enumeration over F_{q}")
    codes = np.arange(q**e, dtype=np.int64)
    digits = np.empty((len(codes), e), dtype=np.int64)
    for i in range(e):
        digits[:, i] = (codes // q**i) % q
    for a in range(1, e // 2 + 1):
        for g in irreducibles(K, a, cap):
            keep = ~_divisible_by(digits, e, g, K)
            digits = digits[keep]
            codes = codes[keep]
    out = []
    for code in codes.tolist():
        coeffs = [(code // q**i) % q for i in range(e)]
        out.append(tuple(coeffs) + (1,))
    return tuple(out)


def _divisible_by(digits, e, g, K):
    """Vectorized trial division: which monic x^e + sum digits_i x^i vanish mod g."""
    a = degree(g)
    # x^k mod g for k = 0..e
    xmods = []
    cur = (1,)
    for _ in range(e + 1):
        xmods.append(list(cur) + [0] * (a - len(cur)))
        cur = mod_(tuple([0] + list(cur)), g, K)
    xmat = np.array(xmods[:e], dtype=np.int64)  # (e, a)
    lead = np.array(xmods[e], dtype=np.int64)  # (a,)
    if K.is_prime_field:
        rem = (digits @ xmat + lead) % K.p
    else:
        addt, mult = K.code_tables()
        rem = np.zeros((digits.shape[0], a), dtype=np.int64)
        for k in range(e):
            col = digits[:, k]
            for j in range(a):
                if xmat[k, j]:
                    rem[:, j] = addt[rem[:, j], mult[col, xmat[k, j]]]
        for j in range(a):
            if lead[j]:
                rem[:, j] = addt[rem[:, j], lead[j]]
    return ~rem.any(axis=1)


def is_irreducible(f, K) -> bool:
    """Trial division against cached irreducibles of degree <= deg(f)/2."""
    d = degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    for a in range(1, d // 2 + 1):
        for g in irreducibles(K, a):
            if divides(g, f, K):
                return False
    return True


def first_irreducible(K, m: int) -> tuple:
    """The lexicographically least monic irreducible of degree m over K."""
    q = K.q
    for code in range(q**m):
        cand = tuple((code // q**i) % q for i in range(m)) + (1,)
        if is_irreducible(cand, K):
            return cand
    raise RuntimeError("unreachable: irreducibles of every degree exist")


def _mobius_int(m: int) -> int:
    if m == 1:
        return 1
    out = 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            out = -out
        d += 1
    if m > 1:
        out = -out
    return out


def count_irreducibles(e: int, q: int) -> int:
    """Number of monic irreducibles of degree e over F_q (necklace formula)."""
    total = 0
    for m in range(1, e + 1):
        if e % m == 0:
            total += _mobius_int(m) * q ** (e // m)
    assert total % e == 0
    return total // e


def factor_poly(f, K) -> list:
    """Factorization into monic irreducibles by trial division.

    Returns (leading coefficient, [(irreducible, exponent), ...]) with the
    irreducible factors in enumeration order.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lead = f[-1]
    rest = make_monic(f, K)
    out = []
    e = 1
    while degree(rest) > 0:
        if e > degree(rest) // 2:
            out.append((rest, 1))
            break
        for g in irreducibles(K, e):
            k = 0
            while divides(g, rest, K):
                rest = divmod_(rest, g, K)[0]
                k += 1
            if k:
                out.append((g, k))
        e += 1
    return lead, out


def mobius_poly(f, K) -> int:
    """Mobius function on F_q[x]: 0 unless squarefree, else (-1)^(#factors)."""
    if not f:
        raise ValueError("mobius of the zero polynomial")
    _, factors = factor_poly(f, K)
    if any(k > 1 for _, k in factors):
        return 0
    return -1 if len(factors) % 2 else 1


# -- parsing / formatting ----------------------------------------------------


def to_string(f) -> str:
    """Coefficient string \"c0,c1,...\" (the CSV wire form)."""
    if not f:
        return "0"
    return ",".join(str(c) for c in f)


def from_string(s: str, K) -> tuple:
    if s.strip() in ("", "0"):
        return ()
    coeffs = []
    for part in s.split(","):
        c = int(part)
        if not 0 <= c < K.q:
            raise ValueError(f"coefficient code {c} out of range for F_{K.q}")
        coeffs.append(c)
    return normalize(coeffs)


def pretty(f) -> str:
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            xs = X if i == 1 else f"{X}^{i}"
            terms.append(xs if c == 1 else f"{c}*{xs}")
    return " + ".join(terms)
