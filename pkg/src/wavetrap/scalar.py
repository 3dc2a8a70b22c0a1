"""Dual-mode arithmetic: exact rationals or plain binary floats.

Exact values are gmpy2.mpq when available and fractions.Fraction otherwise.
Nothing else in the package branches on the backend; both types share the
arithmetic, ordering and hashing protocols we rely on.  Mixing exact values
with floats in one computation is never done implicitly: conversions go
through to_float / exact_from_float so the caller decides the mode.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import ParameterError

try:
    from gmpy2 import mpq as _mpq

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - mirror image of the gmpy2 branch
    _mpq = Fraction
    HAVE_GMPY2 = False

_MPQ_TYPE = type(_mpq(1, 2))

RATIONAL_TYPES = (int, Fraction, _MPQ_TYPE)

Scalar = Union[int, float, Fraction, _MPQ_TYPE]

# Exact rationals above this many bits trip BitSizeExceeded; see guard_bits.
DEFAULT_BIT_LIMIT = 10**6


def exact(num, den=1):
    """Exact rational from ints, strings like '3/4' or '2.35', or rationals."""
    if isinstance(num, str):
        try:
            return _mpq(Fraction(num))
        except (ValueError, ZeroDivisionError) as err:
            raise ParameterError(f"not a rational literal: {num!r}") from err
    if isinstance(num, float) or isinstance(den, float):
        raise TypeError("floats carry no intended exact value; use exact_from_float")
    if den == 0:
        raise ParameterError("zero denominator")
    return _mpq(num, den)


def exact_from_float(x: float):
    """The exact binary rational a float denotes (always exact, never rounded)."""
    return _mpq(Fraction(x))


def is_exact(x) -> bool:
    return isinstance(x, RATIONAL_TYPES)


def to_float(x) -> float:
    return float(x)


def parse_scalar(text: str, exact_decimal: bool = False):
    """Parse a CLI number.

    'p/q' and bare integers are exact.  Decimal or exponent notation becomes a
    float unless exact_decimal is set, in which case the base-10 expansion is
    taken exactly.
    """
    t = text.strip()
    if "/" in t:
        return exact(t)
    try:
        return exact(int(t))
    except ValueError:
        pass
    try:
        if exact_decimal:
            return _mpq(Fraction(t))
        return float(t)
    except (ValueError, ZeroDivisionError) as err:
        raise ParameterError(f"not a number: {text!r}") from err


def scalar_str(x) -> str:
    """Stable textual form: 'p/q' or integer for exact values, repr for floats."""
    if is_exact(x):
        return str(x)
    return repr(float(x))


def floor_int(x) -> int:
    return int(math.floor(x))


def bit_size(x) -> int:
    if isinstance(x, float):
        return 64
    if isinstance(x, int):
        return x.bit_length()
    return int(x.numerator).bit_length() + int(x.denominator).bit_length()


def guard_bits(x, limit: int = DEFAULT_BIT_LIMIT):
    from .errors import BitSizeExceeded

    if bit_size(x) > limit:
        raise BitSizeExceeded(f"rational grew to {bit_size(x)} bits (limit {limit})")
    return x
