"""Two-dimensional uncertain linguistic variables and their algebra.

A value ``([s_a, s_b], [s_c, s_d])`` is stored by its real-valued subscripts.
The first interval is the evaluation drawn from the I-class term set
``s_0 .. s_{l-1}``; the second is the evaluator's self-assessed reliability
drawn from the II-class set ``s_0 .. s_{z-1}``.

Arithmetic results are never clamped to the scale. Sums of several
evaluations legitimately exceed ``l - 1`` on the way to an average, so only
values that end up inside a decision matrix are bounds-checked.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, ScaleMismatchError, ValidationError

__all__ = [
    "ScaleConfig",
    "TwoDimULV",
    "add",
    "multiply",
    "divide",
    "scale",
    "power",
    "zero",
    "expectation",
    "hamming_distance",
    "compare",
]

BOUNDS_TOL = 1e-9


@dataclass(frozen=True)
class ScaleConfig:
    """Granularities of the I-class (``l``) and II-class (``z``) term sets."""

    l: int
    z: int

    def __post_init__(self):
        for name in ("l", "z"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValidationError(f"scale.{name} must be an integer, got {value!r}")
            if value < 2:
                raise ValidationError(f"scale.{name} must be >= 2, got {value}")

    @property
    def first_max(self) -> int:
        return self.l - 1

    @property
    def second_max(self) -> int:
        return self.z - 1


@dataclass(frozen=True)
class TwoDimULV:
    """One evaluation cell ``([a, b], [c, d])``.

    ``scale`` is optional. When both operands of a binary operation carry a
    scale they must agree; the result inherits whichever one is present.
    """

    a: float
    b: float
    c: float
    d: float
    scale: Optional[ScaleConfig] = None

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f"subscript {name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ValidationError(f"subscript {name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.a > self.b:
            raise ValidationError(f"first dimension lower bound {self.a:g} exceeds upper bound {self.b:g}")
        if self.c > self.d:
            raise ValidationError(f"second dimension lower bound {self.c:g} exceeds upper bound {self.d:g}")

    @classmethod
    def from_tuple(cls, values, scale: Optional[ScaleConfig] = None) -> "TwoDimULV":
        a, b, c, d = values
        return cls(a, b, c, d, scale)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def with_scale(self, scale: Optional[ScaleConfig]) -> "TwoDimULV":
        return TwoDimULV(self.a, self.b, self.c, self.d, scale)

    def check_bounds(self, scale: Optional[ScaleConfig] = None, tol: float = BOUNDS_TOL) -> None:
        """Raise :class:`ValidationError` if any subscript leaves the scale."""
        scale = _resolve_scale(self, scale)
        if scale is None:
            raise ValidationError("no scale available for bounds check")
        lo = -tol
        if not (lo <= self.a and self.b <= scale.first_max + tol):
            raise ValidationError(
                f"first dimension [{self.a:g}, {self.b:g}] outside [0, {scale.first_max}]"
            )
        if not (lo <= self.c and self.d <= scale.second_max + tol):
            raise ValidationError(
                f"second dimension [{self.c:g}, {self.d:g}] outside [0, {scale.second_max}]"
            )

    def __add__(self, other):
        if not isinstance(other, TwoDimULV):
            return NotImplemented
        return add(self, other)

    def __mul__(self, other):
        if isinstance(other, TwoDimULV):
            return multiply(self, other)
        if isinstance(other, (int, float)) and not isinstance(other, bool):
            return scale(other, self)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TwoDimULV):
            return NotImplemented
        return divide(self, other)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __repr__(self):
        return f"TwoDimULV([{self.a:g}, {self.b:g}], [{self.c:g}, {self.d:g}])"


def _common_scale(x: TwoDimULV, y: TwoDimULV) -> Optional[ScaleConfig]:
    if x.scale is not None and y.scale is not None and x.scale != y.scale:
        raise ScaleMismatchError(f"operands use different scales: {x.scale} vs {y.scale}")
    return x.scale if x.scale is not None else y.scale


def _resolve_scale(x: TwoDimULV, scale: Optional[ScaleConfig]) -> Optional[ScaleConfig]:
    if scale is None:
        return x.scale
    if x.scale is not None and x.scale != scale:
        raise ScaleMismatchError(f"value carries {x.scale} but {scale} was requested")
    return scale


def _pair_scale(x: TwoDimULV, y: TwoDimULV, scale: Optional[ScaleConfig]) -> Optional[ScaleConfig]:
    sc = _common_scale(x, y)
    if scale is None:
        return sc
    if sc is not None and sc != scale:
        raise ScaleMismatchError(f"values carry {sc} but {scale} was requested")
    return scale


def _raw(a, b, c, d, sc):
    # bypasses the a <= b check for intermediate results that may be unordered
    obj = object.__new__(TwoDimULV)
    for name, value in zip("abcd", (a, b, c, d)):
        object.__setattr__(obj, name, float(value))
    object.__setattr__(obj, "scale", sc)
    return obj


def zero(scale: ScaleConfig) -> TwoDimULV:
    """Additive identity: zero evaluation with maximal reliability."""
    top = scale.second_max
    return TwoDimULV(0.0, 0.0, top, top, scale)


def add(x: TwoDimULV, y: TwoDimULV) -> TwoDimULV:
    sc = _common_scale(x, y)
    return TwoDimULV(x.a + y.a, x.b + y.b, min(x.c, y.c), min(x.d, y.d), sc)


def multiply(x: TwoDimULV, y: TwoDimULV) -> TwoDimULV:
    sc = _common_scale(x, y)
    return TwoDimULV(x.a * y.a, x.b * y.b, min(x.c, y.c), min(x.d, y.d), sc)


def divide(x: TwoDimULV, y: TwoDimULV) -> TwoDimULV:
    """Interval quotient ``[a1/b2, b1/a2]``; divisor endpoints must be positive."""
    sc = _common_scale(x, y)
    if not (y.a > 0 and y.b > 0):
        raise DomainError(f"divisor endpoints must be positive, got [{y.a:g}, {y.b:g}]")
    return _raw(x.a / y.b, x.b / y.a, min(x.c, y.c), min(x.d, y.d), sc)


def scale(factor: float, x: TwoDimULV) -> TwoDimULV:
    """Scalar multiple; the reliability interval is left untouched."""
    if factor < 0:
        raise DomainError(f"scalar multiplier must be >= 0, got {factor}")
    return TwoDimULV(factor * x.a, factor * x.b, x.c, x.d, x.scale)


def power(x: TwoDimULV, exponent: float) -> TwoDimULV:
    if exponent < 0:
        raise DomainError(f"exponent must be >= 0, got {exponent}")
    if float(exponent) != int(exponent) and x.a < 0:
        raise DomainError(f"non-integer exponent {exponent} on negative endpoint {x.a:g}")
    return _raw(x.a ** exponent, x.b ** exponent, x.c, x.d, x.scale)


def expectation(x: TwoDimULV, scale: Optional[ScaleConfig] = None) -> float:
    """Product of the normalized midpoints of both dimensions, in ``[0, 1]``."""
    sc = _resolve_scale(x, scale)
    if sc is None:
        raise ValidationError("expectation needs a scale")
    x.check_bounds(sc)
    return (x.a + x.b) / (2 * (sc.l - 1)) * (x.c + x.d) / (2 * (sc.z - 1))


def hamming_distance(x: TwoDimULV, y: TwoDimULV, scale: Optional[ScaleConfig] = None) -> float:
    """L1 distance between the reliability-weighted endpoint products."""
    sc = _pair_scale(x, y, scale)
    if sc is None:
        raise ValidationError("hamming_distance needs a scale")
    zn = sc.z - 1
    total = (
        abs(x.a * x.c / zn - y.a * y.c / zn)
        + abs(x.a * x.d / zn - y.a * y.d / zn)
        + abs(x.b * x.c / zn - y.b * y.c / zn)
        + abs(x.b * x.d / zn - y.b * y.d / zn)
    )
    return total / (4 * (sc.l - 1))


def compare(x: TwoDimULV, y: TwoDimULV, scale: Optional[ScaleConfig] = None, tol: float = 1e-12) -> int:
    """Three-way comparison: ``1`` if ``x > y``, ``-1`` if ``x < y``, else ``0``.

    Orders by expectation; expectations within ``tol`` fall back to the
    first-dimension midpoint, and only then are declared equal.
    """
    sc = _pair_scale(x, y, scale)
    ex, ey = expectation(x, sc), expectation(y, sc)
    if abs(ex - ey) > tol:
        return 1 if ex > ey else -1
    mx, my = (x.a + x.b) / 2, (y.a + y.b) / 2
    if abs(mx - my) > tol:
        return 1 if mx > my else -1
    return 0
