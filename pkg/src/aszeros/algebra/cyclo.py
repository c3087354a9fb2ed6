"""Exact arithmetic in the cyclotomic field Q(zeta_p).

Elements are stored in the canonical basis 1, zeta, ..., zeta^(p-2), with the
relation zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)) eliminated eagerly, so
equal field elements always have equal coordinates.  Coordinates are rationals
kept as an integer vector over one positive denominator with
gcd(den, *num) == 1.  Character sums and L-polynomial coefficients are
algebraic integers, so den == 1 almost everywhere; a denominator only appears
transiently while dividing by k in the exp/log coefficient recursion, and the
integrality assertion restores it.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd, pi


class CycloElem:
    """An element of Q(zeta_p), zeta a primitive complex p-th root of unity."""

    __slots__ = ("p", "num", "den")

    def __init__(self, p: int, num, den: int = 1):
        if p < 2:
            raise ValueError("p must be at least 2")
        num = tuple(num)
        if len(num) != p - 1:
            raise ValueError(f"expected {p - 1} coordinates, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.p = p
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "CycloElem":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def one(cls, p: int) -> "CycloElem":
        return cls.from_int(p, 1)

    @classmethod
    def from_int(cls, p: int, k: int) -> "CycloElem":
        return cls(p, (k,) + (0,) * (p - 2))

    @classmethod
    def from_rational(cls, p: int, value: Fraction) -> "CycloElem":
        value = Fraction(value)
        return cls(p, (value.numerator,) + (0,) * (p - 2), value.denominator)

    @classmethod
    def root_power(cls, p: int, k: int) -> "CycloElem":
        """zeta^k, canonically reduced."""
        vec = [0] * p
        vec[k % p] = 1
        return cls(p, _reduce_exponents(p, vec))

    @classmethod
    def from_counts(cls, p: int, counts, a: int = 1) -> "CycloElem":
        """sum_v counts[v] * zeta^(a*v) for v = 0..p-1."""
        if len(counts) != p:
            raise ValueError("need one count per residue class")
        vec = [0] * p
        for v, c in enumerate(counts):
            vec[(a * v) % p] += int(c)
        return cls(p, _reduce_exponents(p, vec))

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "CycloElem") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed cyclotomic orders {self.p} and {other.p}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycloElem.from_int(self.p, other)
        elif not isinstance(other, CycloElem):
            return NotImplemented
        self._check(other)
        da, db = self.den, other.den
        return CycloElem(
            self.p,
            tuple(a * db + b * da for a, b in zip(self.num, other.num)),
            da * db,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.p, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycloElem.from_int(self.p, other)
        elif not isinstance(other, CycloElem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloElem(self.p, tuple(c * other for c in self.num), self.den)
        if isinstance(other, Fraction):
            return CycloElem(
                self.p,
                tuple(c * other.numerator for c in self.num),
                self.den * other.denominator,
            )
        if not isinstance(other, CycloElem):
            return NotImplemented
        self._check(other)
        p = self.p
        # Convolve in exponent space mod p, then eliminate zeta^(p-1).
        vec = [0] * p
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        vec[(i + j) % p] += a * b
        return CycloElem(p, _reduce_exponents(p, vec), self.den * other.den)

    __rmul__ = __mul__

    def div_int(self, k: int) -> "CycloElem":
        """Exact division by a nonzero integer (may leave a denominator)."""
        if k == 0:
            raise ZeroDivisionError("division by zero")
        return CycloElem(self.p, self.num, self.den * k)

    def conj(self) -> "CycloElem":
        """Complex conjugation, zeta -> zeta^(p-1)."""
        p = self.p
        vec = [0] * p
        for j, c in enumerate(self.num):
            vec[(p - j) % p] += c
        return CycloElem(p, _reduce_exponents(p, vec), self.den)

    # -- views -------------------------------------------------------------

    def embed(self) -> complex:
        """Image under zeta -> exp(2*pi*i/p), to machine precision."""
        p = self.p
        total = 0j
        for j, c in enumerate(self.num):
            if c:
                total += c * cmath.exp(2j * pi * j / p)
        return total / self.den

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return self == self.conj()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.num[1:])

    def rational(self) -> Fraction:
        """The value as a rational number; raises if irrational."""
        if not self.is_rational():
            raise ValueError(f"not a rational value: {self!r}")
        return Fraction(self.num[0], self.den)

    def integer_coords(self) -> tuple:
        """Coordinates as integers; raises if the element is not in Z[zeta]."""
        if self.den != 1:
            raise ValueError(f"non-integral coordinates: {self!r}")
        return self.num

    def coords(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- dunder plumbing -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational() and self.rational() == other
        if not isinstance(other, CycloElem):
            return NotImplemented
        return (self.p, self.num, self.den) == (other.p, other.num, other.den)

    def __hash__(self):
        return hash((self.p, self.num, self.den))

    def __repr__(self):
        body = ",".join(str(c) for c in self.num)
        if self.den == 1:
            return f"Cyclo({self.p};[{body}])"
        return f"Cyclo({self.p};[{body}]/{self.den})"


def _reduce_exponents(p: int, vec) -> tuple:
    """Map a length-p exponent vector to canonical coordinates of length p-1."""
    top = vec[p - 1]
    if top:
        return tuple(vec[j] - top for j in range(p - 1))
    return tuple(vec[: p - 1])
