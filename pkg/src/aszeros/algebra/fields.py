"""Prime fields and extension towers F_p < F_q = F_{p^n} < F_{q^r}.

Field elements are integer codes.  An element of a degree-m extension of a
base field with b elements has code sum(c_i * b**i), where (c_0, ..., c_{m-1})
is its coefficient vector in the power basis of the defining modulus.  Codes
of 0 and 1 are 0 and 1 at every level, and the embedding of the base field
into an extension is the identity on codes.  The integer order of codes is
the order behind every "lexicographically least" rule in this package.

Defining moduli are the lexicographically least monic irreducibles
(coefficient tuples compared high degree first), so towers are reproducible
across runs.  Towers are immutable after construction; the lazily built numpy
tables are private caches and safe to share read-only.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import check_cap
from . import polys
from .cyclo import CycloElem

_TABLE_CAP = 2048  # largest field size for which dense code tables are built


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """F_p with codes 0..p-1 and mod-p arithmetic."""

    is_prime_field = True

    __slots__ = ("p", "q", "dim", "_irr_cache", "_tables")

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.q = p
        self.dim = 1
        self._irr_cache = None
        self._tables = None

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow_(self, a, k: int):
        return pow(a, k, self.p) if k >= 0 else pow(self.inv(a), -k, self.p)

    def of_int(self, k: int):
        return k % self.p

    def elements(self):
        return range(self.p)

    def trace_to_prime(self, a):
        return a % self.p

    def code_tables(self):
        if self._tables is None:
            k = np.arange(self.p, dtype=np.int64)
            self._tables = (
                (k[:, None] + k[None, :]) % self.p,
                (k[:, None] * k[None, :]) % self.p,
            )
        return self._tables

    def __repr__(self):
        return f"F({self.p})"

    def __reduce__(self):
        return (prime_field, (self.p,))


class ExtensionField:
    """A degree-m extension of a base field, with polynomial-basis codes."""

    is_prime_field = False

    __slots__ = (
        "base",
        "dim",
        "modulus",
        "q",
        "p",
        "_red_rows",
        "_trace_vec",
        "_irr_cache",
        "_tables",
        "_trp",
        "_elem_digits",
        "_reduce_key",
    )

    def __init__(self, base, modulus):
        dim = polys.degree(modulus)
        if dim < 2:
            raise ValueError("extension degree must be at least 2")
        if not polys.is_monic(modulus):
            raise ValueError("modulus must be monic")
        if not polys.is_irreducible(modulus, base):
            raise ValueError(f"modulus {modulus} is reducible over {base!r}")
        self.base = base
        self.dim = dim
        self.modulus = tuple(modulus)
        self.q = base.q**dim
        self.p = base.p
        self._red_rows = None
        self._trace_vec = None
        self._irr_cache = None
        self._tables = None
        self._trp = None
        self._elem_digits = None
        self._reduce_key = None

    # -- code <-> coefficient vector ----------------------------------------

    def decode(self, code: int) -> list:
        b = self.base.q
        return [(code // b**i) % b for i in range(self.dim)]

    def encode(self, coeffs) -> int:
        b = self.base.q
        code = 0
        for i, c in enumerate(coeffs):
            code += c * b**i
        return code

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, x, y):
        K = self.base
        return self.encode(K.add(a, b) for a, b in zip(self.decode(x), self.decode(y)))

    def sub(self, x, y):
        K = self.base
        return self.encode(K.sub(a, b) for a, b in zip(self.decode(x), self.decode(y)))

    def neg(self, x):
        K = self.base
        return self.encode(K.neg(a) for a in self.decode(x))

    def mul(self, x, y):
        if x == 0 or y == 0:
            return 0
        K = self.base
        m = self.dim
        a = self.decode(x)
        b = self.decode(y)
        conv = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] = K.add(conv[i + j], K.mul(ai, bj))
        red = self.reduction_rows()
        out = conv[:m]
        for t in range(m - 1):
            hi = conv[m + t]
            if hi:
                row = red[t]
                for s in range(m):
                    if row[s]:
                        out[s] = K.add(out[s], K.mul(hi, row[s]))
        return self.encode(out)

    def pow_(self, x, k: int):
        if k < 0:
            x = self.inv(x)
            k = -k
        out = 1
        while k:
            if k & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            k >>= 1
        return out

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow_(x, self.q - 2)

    def of_int(self, k: int):
        return k % self.p

    def elements(self):
        return range(self.q)

    def reduction_rows(self):
        """reduction_rows()[t] = coefficients of y^(dim+t) modulo the modulus."""
        if self._red_rows is None:
            rows = []
            for t in range(self.dim - 1):
                xk = (0,) * (self.dim + t) + (1,)
                r = polys.mod_(xk, self.modulus, self.base)
                rows.append(list(r) + [0] * (self.dim - len(r)))
            self._red_rows = rows
        return self._red_rows

    # -- traces ---------------------------------------------------------------

    def trace_vector(self):
        """Traces of the power basis, Tr(y^j) for j < dim, via Newton's identity."""
        if self._trace_vec is None:
            K = self.base
            m = self.dim
            # elementary symmetric functions of the modulus roots
            e = [0] * (m + 1)
            for i in range(1, m + 1):
                c = self.modulus[m - i]
                e[i] = c if i % 2 == 0 else K.neg(c)
            s = [K.of_int(m)] + [0] * (m - 1)
            for j in range(1, m):
                acc = 0
                for i in range(1, j):
                    term = K.mul(e[i], s[j - i])
                    acc = K.add(acc, term) if i % 2 == 1 else K.sub(acc, term)
                tail = K.mul(K.of_int(j), e[j])
                tail = tail if j % 2 == 1 else K.neg(tail)
                s[j] = K.add(acc, tail)
            self._trace_vec = s
        return self._trace_vec

    def trace_to_base(self, x):
        K = self.base
        tr = self.trace_vector()
        acc = 0
        for c, t in zip(self.decode(x), tr):
            acc = K.add(acc, K.mul(c, t))
        return acc

    def trace_to_prime(self, x):
        t = self.trace_to_base(x)
        return self.base.trace_to_prime(t)

    # -- dense code tables (used when this field is a coefficient field) ------

    def code_tables(self):
        if self._tables is None:
            if self.q > _TABLE_CAP:
                raise ValueError(f"field of size {self.q} too large for code tables")
            add = np.empty((self.q, self.q), dtype=np.int64)
            mult = np.empty((self.q, self.q), dtype=np.int64)
            for a in range(self.q):
                for b in range(self.q):
                    add[a, b] = self.add(a, b)
                    mult[a, b] = self.mul(a, b)
            self._tables = (add, mult)
        return self._tables

    def trace_to_prime_table(self):
        if self._trp is None:
            self._trp = np.array(
                [self.trace_to_prime(c) for c in range(self.q)], dtype=np.int64
            )
        return self._trp

    # -- vectorized element arrays (this field as the top of a tower) ---------

    def arr_elements(self, cap=None):
        """(q, dim) digit matrix of every element, row index == code."""
        if self._elem_digits is None:
            check_cap(self.q, cap, what=f"element enumeration of size {self.q}")
            b = self.base.q
            codes = np.arange(self.q, dtype=np.int64)
            digits = np.empty((self.q, self.dim), dtype=np.int64)
            for i in range(self.dim):
                digits[:, i] = (codes // b**i) % b
            self._elem_digits = digits
        return self._elem_digits

    def arr_mul(self, A, B):
        """Pointwise product of two element arrays in digit-matrix form."""
        m = self.dim
        base = self.base
        n_rows = A.shape[0]
        if base.is_prime_field:
            p = base.p
            conv = np.zeros((n_rows, 2 * m - 1), dtype=np.int64)
            for i in range(m):
                conv[:, i : i + m] += A[:, i : i + 1] * B
            conv %= p
            red = np.array(self.reduction_rows(), dtype=np.int64)
            out = conv[:, :m]
            for t in range(m - 1):
                out += conv[:, m + t : m + t + 1] * red[t]
            return out % p
        addt, mult = base.code_tables()
        conv = np.zeros((n_rows, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                conv[:, i + j] = addt[conv[:, i + j], mult[A[:, i], B[:, j]]]
        red = self.reduction_rows()
        out = conv[:, :m]
        for t in range(m - 1):
            hi = conv[:, m + t]
            for s in range(m):
                if red[t][s]:
                    out[:, s] = addt[out[:, s], mult[hi, red[t][s]]]
        return out

    def arr_full_const(self, c, n_rows):
        out = np.zeros((n_rows, self.dim), dtype=np.int64)
        out[:, 0] = c
        return out

    def arr_add_const(self, A, c):
        if c == 0:
            return A
        base = self.base
        out = A.copy()
        if base.is_prime_field:
            out[:, 0] = (out[:, 0] + c) % base.p
        else:
            addt, _ = base.code_tables()
            out[:, 0] = addt[out[:, 0], c]
        return out

    def arr_trace_to_base(self, A):
        base = self.base
        tr = np.array(self.trace_vector(), dtype=np.int64)
        if base.is_prime_field:
            return (A @ tr) % base.p
        addt, mult = base.code_tables()
        acc = np.zeros(A.shape[0], dtype=np.int64)
        for j in range(self.dim):
            if tr[j]:
                acc = addt[acc, mult[A[:, j], tr[j]]]
        return acc

    def __repr__(self):
        return f"F({self.base.q}^{self.dim})"

    def __reduce__(self):
        if self._reduce_key is None:
            raise TypeError("cannot pickle an unregistered extension field")
        return (_restore_field, (self._reduce_key,))


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def middle_field(p: int, n: int):
    """F_q = F_{p^n}, a degree-n extension of F_p (or F_p itself for n=1)."""
    if n < 1:
        raise ValueError("extension degree must be positive")
    base = prime_field(p)
    if n == 1:
        return base
    K = ExtensionField(base, polys.first_irreducible(base, n))
    K._reduce_key = ("middle", p, n)
    return K


@lru_cache(maxsize=None)
def _top_field(p: int, n: int, r: int):
    fq = middle_field(p, n)
    if r == 1:
        return fq
    K = ExtensionField(fq, polys.first_irreducible(fq, r))
    K._reduce_key = ("top", p, n, r)
    return K


def _restore_field(key):
    if key[0] == "middle":
        return middle_field(key[1], key[2])
    return _top_field(key[1], key[2], key[3])


class FieldTower:
    """The chain F_p < F_q = F_{p^n} < F_{q^r}, with q^r enumerable."""

    __slots__ = ("p", "n", "r", "fq", "top", "_generator")

    def __init__(self, p: int, n: int, r: int, cap=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1 or r < 1:
            raise ValueError("extension degrees must be positive")
        check_cap(p ** (n * r), cap, what=f"field tower of size {p}^{n * r}")
        self.p = p
        self.n = n
        self.r = r
        self.fq = middle_field(p, n)
        self.top = _top_field(p, n, r)
        self._generator = None

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def size(self) -> int:
        return self.q**self.r

    def elements(self):
        return range(self.size)

    def trace_top_to_fq(self, x):
        if self.r == 1:
            return x
        return self.top.trace_to_base(x)

    def trace_to_prime(self, x):
        t = self.trace_top_to_fq(x)
        if self.n == 1:
            return t % self.p
        return self.fq.trace_to_base(t)

    def generator(self):
        """A multiplicative generator of the top field (order q^r - 1)."""
        if self._generator is None:
            order = self.size - 1
            prime_parts = _prime_factors(order)
            top = self.top
            pow_ = top.pow_ if self.r > 1 else (lambda x, k: _field_pow(self.fq, x, k))
            for cand in range(2, self.size):
                if all(pow_(cand, order // ell) != 1 for ell in prime_parts):
                    self._generator = cand
                    break
        return self._generator

    def enum_context(self, cap=None) -> "EnumContext":
        return EnumContext(self, cap)

    def __repr__(self):
        return f"FieldTower(p={self.p}, n={self.n}, r={self.r})"

    def __reduce__(self):
        return (build_tower, (self.p, self.n, self.r))


@lru_cache(maxsize=None)
def _cached_tower(p: int, n: int, r: int) -> FieldTower:
    return FieldTower(p, n, r)


def build_tower(p: int, n: int, r: int, cap=None) -> FieldTower:
    """The tower F_p < F_{p^n} < F_{p^{nr}}, cached per (p, n, r)."""
    check_cap(p ** (n * r), cap, what=f"field tower of size {p}^{n * r}")
    return _cached_tower(p, n, r)


def _field_pow(K, x, k):
    out = 1
    while k:
        if k & 1:
            out = K.mul(out, x)
        x = K.mul(x, x)
        k >>= 1
    return out


def _prime_factors(m: int) -> tuple:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return tuple(out)


class EnumContext:
    """Vectorized view of every element of a tower's top field.

    For r >= 2 elements travel as (N, r) digit matrices over F_q; for r == 1
    as (N,) code vectors.  The operations are exactly the scalar field
    operations applied pointwise, so anything computed here agrees bit for
    bit with the scalar path.
    """

    def __init__(self, tower: FieldTower, cap=None):
        check_cap(tower.size, cap, what=f"enumeration of {tower.size} elements")
        self.tower = tower
        self.size = tower.size
        self._flat = tower.r == 1
        if self._flat:
            self.elements = np.arange(tower.size, dtype=np.int64)
        else:
            self.elements = tower.top.arr_elements(cap)

    def full_const(self, c):
        if self._flat:
            return np.full(self.size, c, dtype=np.int64)
        return self.tower.top.arr_full_const(c, self.size)

    def mul(self, A, B):
        if self._flat:
            fq = self.tower.fq
            if fq.is_prime_field:
                return (A * B) % fq.p
            _, mult = fq.code_tables()
            return mult[A, B]
        return self.tower.top.arr_mul(A, B)

    def add_const(self, A, c):
        if self._flat:
            if c == 0:
                return A
            fq = self.tower.fq
            if fq.is_prime_field:
                return (A + c) % fq.p
            addt, _ = fq.code_tables()
            return addt[A, c]
        return self.tower.top.arr_add_const(A, c)

    def trace_to_fq(self, A):
        if self._flat:
            return A
        return self.tower.top.arr_trace_to_base(A)

    def trace_to_prime(self, A):
        t = self.trace_to_fq(A)
        fq = self.tower.fq
        if fq.is_prime_field:
            return t % fq.p
        return fq.trace_to_prime_table()[t]


# -- operations on tower elements ---------------------------------------------


def trace_to_prime(x, tower: FieldTower) -> int:
    """Tr_{q^r/p}(x) for x a code of the tower's top field."""
    if not 0 <= x < tower.size:
        raise ValueError(f"code {x} is not an element of {tower!r}")
    return tower.trace_to_prime(x)


def additive_character(a: int, x: int, p: int) -> CycloElem:
    """psi_a(x) = zeta^(a*x), for a nontrivial character index 1 <= a <= p-1."""
    if a % p == 0:
        raise ValueError("the trivial character is excluded")
    return CycloElem.root_power(p, (a * x) % p)


def poly_eval(f, alpha, tower: FieldTower) -> int:
    """f(alpha) for f over F_q and alpha in the top field, by Horner's rule.

    Coefficient codes embed into the top field unchanged (the power basis
    makes the base-field embedding the identity on codes).
    """
    if not 0 <= alpha < tower.size:
        raise ValueError(f"code {alpha} is not an element of {tower!r}")
    K = tower.top if tower.r > 1 else tower.fq
    return polys.eval_at(f, alpha, K)


def minimal_poly(alpha, tower: FieldTower) -> tuple:
    """Monic minimal polynomial of a top-field element over F_q."""
    top = tower.top if tower.r > 1 else tower.fq
    q = tower.q
    conjugates = []
    x = alpha
    while True:
        conjugates.append(x)
        x = _field_pow(top, x, q) if tower.r > 1 else tower.fq.pow_(x, q)
        if x == alpha:
            break
    poly = (1,)
    for c in conjugates:
        poly = polys.mul(poly, (top.neg(c) if tower.r > 1 else tower.fq.neg(c), 1), top)
    if tower.r > 1:
        # coefficients lie in F_q: digits above the constant one must vanish
        out = []
        for code in poly:
            digits = tower.top.decode(code)
            if any(digits[1:]):
                raise ArithmeticError("minimal polynomial coefficient not in F_q")
            out.append(digits[0])
        poly = tuple(out)
    if tower.r % len(conjugates) != 0:
        raise ArithmeticError("conjugate orbit length does not divide r")
    return poly
