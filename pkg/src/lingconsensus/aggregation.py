"""Generalized weighted aggregation of two-dimensional linguistic values.

The first dimension is aggregated by a weighted power mean of order ``alpha``
on each endpoint; the second dimension takes the componentwise minimum, so
the aggregate is never reported as more reliable than its least reliable
input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, ScaleMismatchError, ValidationError
from .linguistic import TwoDimULV

__all__ = ["WeightVector", "dulgwa", "dulwa", "power_mean"]

_NORMALIZED_TOL = 1e-12


@dataclass(frozen=True, init=False)
class WeightVector:
    """Nonnegative weights summing to one.

    Inputs are normalized by their sum unless they already sum to one within
    ``1e-12``, which keeps already-normalized vectors bit-identical.
    """

    w: tuple

    def __init__(self, weights):
        values = tuple(float(v) for v in weights)
        if not values:
            raise ValidationError("weight vector is empty")
        for k, v in enumerate(values):
            if not math.isfinite(v) or v < 0:
                raise ValidationError(f"weight {k} must be a finite nonnegative number, got {v!r}")
        total = math.fsum(values)
        if total <= 0:
            raise ValidationError("weights sum to zero")
        if abs(total - 1.0) > _NORMALIZED_TOL:
            values = tuple(v / total for v in values)
        object.__setattr__(self, "w", values)

    @classmethod
    def uniform(cls, p: int) -> "WeightVector":
        return cls([1.0] * p)

    def __len__(self):
        return len(self.w)

    def __iter__(self):
        return iter(self.w)

    def __getitem__(self, k):
        return self.w[k]


def _as_weights(weights) -> WeightVector:
    return weights if isinstance(weights, WeightVector) else WeightVector(weights)


def power_mean(xs: Sequence[float], weights: Sequence[float], alpha: float) -> float:
    """Weighted power mean ``(sum w_k x_k**alpha) ** (1/alpha)``.

    The result is clamped into ``[min xs, max xs]``, where the exact value
    always lies, so identical inputs come back unchanged bit for bit.
    """
    lo, hi = min(xs), max(xs)
    if lo == hi:
        return lo
    if alpha == 1:
        raw = math.fsum(w * x for w, x in zip(weights, xs))
    else:
        # dividing by the extreme keeps every power in [0, 1] so tiny or
        # huge endpoints cannot overflow
        ref = max(abs(lo), abs(hi)) if alpha > 0 else lo
        s = math.fsum(w * (x / ref) ** alpha for w, x in zip(weights, xs))
        # odd integer orders over negative endpoints take the real root
        raw = ref * math.copysign(abs(s) ** (1.0 / alpha), s)
    return min(max(raw, lo), hi)


def dulgwa(values: Sequence[TwoDimULV], weights, alpha: float = 1.0) -> TwoDimULV:
    """Aggregate ``values`` with a weighted power mean of order ``alpha``.

    Raises :class:`ValidationError` for empty or misaligned input,
    :class:`DomainError` for ``alpha == 0`` or endpoints the power mean is
    undefined on, and :class:`ScaleMismatchError` for mixed scales.
    """
    values = list(values)
    if not values:
        raise ValidationError("cannot aggregate an empty collection")
    w = _as_weights(weights)
    if len(w) != len(values):
        raise ValidationError(f"{len(values)} values but {len(w)} weights")
    if alpha == 0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be finite and nonzero, got {alpha}")

    scales = {v.scale for v in values if v.scale is not None}
    if len(scales) > 1:
        raise ScaleMismatchError(f"values use {len(scales)} different scales")
    sc = scales.pop() if scales else None

    lows = [v.a for v in values]
    highs = [v.b for v in values]
    if alpha < 0 and min(lows) <= 0:
        raise DomainError(f"negative alpha {alpha} needs strictly positive endpoints")
    if float(alpha) != int(alpha) and min(lows) < 0:
        raise DomainError(f"fractional alpha {alpha} needs nonnegative endpoints")

    return TwoDimULV(
        power_mean(lows, w, alpha),
        power_mean(highs, w, alpha),
        min(v.c for v in values),
        min(v.d for v in values),
        sc,
    )


def dulwa(values: Sequence[TwoDimULV], weights) -> TwoDimULV:
    """Weighted arithmetic aggregation (``dulgwa`` with ``alpha = 1``)."""
    return dulgwa(values, weights, 1.0)
