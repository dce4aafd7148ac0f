"""Exact rational scalars.

``Q`` is gmpy2's ``mpq`` when gmpy2 is importable and
:class:`fractions.Fraction` otherwise. Both keep values in lowest terms with a
positive denominator, so nothing here re-normalizes.
"""
from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def as_q(value):
    """Coerce an int, Fraction, mpq or ``"a/b"`` string to ``Q``."""
    if isinstance(value, str):
        return Q(Fraction(value.strip()))
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Q(value)


def fmt_q(value):
    value = Q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
