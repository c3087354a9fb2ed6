"""Shared exception types."""

import os

DEFAULT_CAP = 2**24


class SizeCapError(ValueError):
    """An enumeration would exceed the configured element cap."""


class NonIntegralCoefficient(ArithmeticError):
    """An exact computation produced a non-integral value where an algebraic
    integer is guaranteed; this always indicates an internal arithmetic bug."""


def element_cap(cap=None):
    """Effective element cap: explicit argument, then ASZ_CAP, then the default."""
    if cap is not None:
        return int(cap)
    return int(os.environ.get("ASZ_CAP", DEFAULT_CAP))


def check_cap(size, cap=None, what="enumeration"):
    limit = element_cap(cap)
    if size > limit:
        raise SizeCapError(f"{what} of size {size} exceeds cap {limit}")
    return size
