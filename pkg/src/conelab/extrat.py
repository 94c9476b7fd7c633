"""Exact nonnegative rationals extended with infinity.

Finite values are plain :class:`fractions.Fraction` objects; infinity is the
singleton :data:`INF`.  ``Fraction`` defers to ``INF`` for every mixed
operation, so ordinary ``+``, ``*``, ``sum``, ``min`` and ``max`` work on a
mix of the two.  Multiplication follows the measure-theory convention
``0 * INF == 0``.  Subtraction involving ``INF`` is undefined and raises.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union


class Infinity:
    """The top element of the extended nonnegative reals."""

    __slots__ = ()
    _instance: Infinity | None = None

    def __new__(cls) -> Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (Infinity, ())

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __hash__(self) -> int:
        return hash("conelab.INF")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __ne__(self, other: object) -> bool:
        return other is not self

    def __lt__(self, other: object) -> bool:
        _check_operand(other)
        return False

    def __le__(self, other: object) -> bool:
        _check_operand(other)
        return other is self

    def __gt__(self, other: object) -> bool:
        _check_operand(other)
        return other is not self

    def __ge__(self, other: object) -> bool:
        _check_operand(other)
        return True

    def __add__(self, other: object) -> Infinity:
        _check_operand(other)
        return self

    __radd__ = __add__

    def __mul__(self, other: object) -> ExtRat:
        _check_operand(other)
        if other is self:
            return self
        return Fraction(0) if other == 0 else self

    __rmul__ = __mul__

    def __sub__(self, other: object):
        raise ArithmeticError("subtraction involving inf is undefined")

    __rsub__ = __sub__

    def __bool__(self) -> bool:
        return True


INF = Infinity()

ExtRat = Union[Fraction, Infinity]


def _check_operand(other: object) -> None:
    if not isinstance(other, (int, Fraction, Infinity)) or isinstance(other, bool):
        raise TypeError(f"unsupported operand for extended rationals: {other!r}")


def is_finite(value: ExtRat) -> bool:
    return value is not INF


def ext(value: object) -> ExtRat:
    """Coerce ``value`` to an extended rational.

    Accepts ints, Fractions, ``INF``, and strings such as ``"3"``, ``"3/2"``
    or ``"inf"``.  Floats are rejected so that no rounding can sneak in.
    Negative values raise ``ValueError``.
    """
    if value is INF:
        return INF
    if isinstance(value, bool):
        raise TypeError("booleans are not extended rationals")
    if isinstance(value, int):
        result = Fraction(value)
    elif isinstance(value, Fraction):
        result = value
    elif isinstance(value, str):
        text = value.strip()
        if text.lower() in ("inf", "infinity", "∞"):
            return INF
        if any(c in text for c in ".eE"):
            raise ValueError(f"expected an exact rational 'p/q', got {value!r}")
        result = Fraction(text)
    else:
        raise TypeError(f"cannot interpret {value!r} as an extended rational")
    if result < 0:
        raise ValueError(f"extended rationals are nonnegative, got {value!r}")
    return result


def scalar(value: object) -> Fraction:
    """Coerce to a finite nonnegative scalar of the cone action."""
    result = ext(value)
    if result is INF:
        raise ValueError("infinity is a value, not a scalar")
    return result


def fmt(value: ExtRat) -> str:
    """Render as ``"inf"``, an integer string, or ``"p/q"``."""
    if value is INF:
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
