"""Conversions between exact rationals, mpmath floats and decimal strings."""

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
import math
import numbers

from mpmath import mp
from mpmath.libmp import from_rational

from .errors import InvalidParameterError


def to_fraction(value, name="value"):
    """Exact rational value of an int, float, Fraction, Decimal, str or mpf."""
    if isinstance(value, bool):
        raise InvalidParameterError(f"{name} must be a real number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, mp.mpf):
        if not mp.isfinite(value):
            raise InvalidParameterError(f"{name} must be finite, got {value}")
        man, exp = value.man_exp
        man = int(man)
        return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)
    if isinstance(value, str):
        try:
            value = Decimal(value)
        except ArithmeticError:
            raise InvalidParameterError(f"{name}: cannot parse {value!r}") from None
    if isinstance(value, (float, Decimal)):
        if not value.is_finite() if isinstance(value, Decimal) else not math.isfinite(value):
            raise InvalidParameterError(f"{name} must be finite, got {value}")
        return Fraction(value)
    if isinstance(value, numbers.Real):
        return to_fraction(float(value), name)
    raise InvalidParameterError(f"{name} must be a real number, got {value!r}")


def fraction_to_mpf(q):
    """Correctly rounded mpf of a rational at the current working precision."""
    return mp.make_mpf(from_rational(q.numerator, q.denominator, mp.prec, "n"))


def mpf_to_decimal(x, decimals):
    """Round ``x`` to a fixed number of decimal places, half-even."""
    q = to_fraction(x)
    quantum = Decimal(1).scaleb(-decimals)
    digits = len(str(abs(q.numerator) // q.denominator)) + decimals + 10
    with localcontext() as ctx:
        ctx.prec = digits
        return (Decimal(q.numerator) / Decimal(q.denominator)).quantize(
            quantum, rounding=ROUND_HALF_EVEN
        )


def format_decimal(x, decimals):
    return format(mpf_to_decimal(x, decimals), "f")
