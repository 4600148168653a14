"""Interval-valued truth space.

Truth values are closed sub-intervals ``[lo, hi]`` of ``[0, 1]``.  The midpoint
of an interval is its degree of truth, its width its degree of uncertainty.
A single out-of-range value ``[xi, xi]`` marks a contradiction; every
connective propagates it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EPS = 1e-9
XI = 1.0e6

CORRECTED = "corrected"
PAPER_LITERAL = "paper-literal"
DISTANCE_VARIANTS = (CORRECTED, PAPER_LITERAL)


class SentinelError(ValueError):
    """Raised when an ordering or metric is asked about the contradiction value."""


def format_number(x: float) -> str:
    """Shortest text for ``x`` at 12 significant digits (hides float noise)."""
    return f"{float(x):.12g}"


@dataclass(frozen=True)
class TruthInterval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval bounds must be numbers")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def is_regular(self) -> bool:
        return -EPS <= self.lo <= self.hi + EPS and self.hi <= 1 + EPS

    @property
    def is_contradiction(self) -> bool:
        return not self.is_regular

    def close_to(self, other: "TruthInterval", eps: float = EPS) -> bool:
        return abs(self.lo - other.lo) <= eps and abs(self.hi - other.hi) <= eps

    def to_json(self) -> list[float]:
        return [self.lo, self.hi]

    def __str__(self) -> str:
        return f"[{format_number(self.lo)},{format_number(self.hi)}]"


TRUE = TruthInterval(1.0, 1.0)
FALSE = TruthInterval(0.0, 0.0)
UNKNOWN = TruthInterval(0.0, 1.0)
CONTRADICTION = TruthInterval(XI, XI)


def contradiction(xi: float = XI) -> TruthInterval:
    return TruthInterval(xi, xi)


def interval(lo: float, hi: float) -> TruthInterval:
    """Build a regular interval, rejecting bad bounds."""
    lo, hi = float(lo), float(hi)
    if lo > hi:
        raise ValueError(f"lower bound {lo} exceeds upper bound {hi}")
    if lo < 0 or hi > 1:
        raise ValueError(f"interval [{lo},{hi}] is not inside [0,1]")
    return TruthInterval(lo, hi)


def _require_regular(*xs: TruthInterval) -> None:
    for x in xs:
        if not x.is_regular:
            raise SentinelError("sentinel not ordered")


def _first_irregular(*xs: TruthInterval) -> TruthInterval | None:
    for x in xs:
        if not x.is_regular:
            return x
    return None


def truth_le(x: TruthInterval, y: TruthInterval, eps: float = EPS) -> bool:
    _require_regular(x, y)
    return x.midpoint <= y.midpoint + eps


def knowledge_le(x: TruthInterval, y: TruthInterval, eps: float = EPS) -> bool:
    """``x`` carries no more knowledge than ``y``: ``y`` is at most as wide."""
    _require_regular(x, y)
    return y.width <= x.width + eps


def tnorm(x: TruthInterval, y: TruthInterval) -> TruthInterval:
    bad = _first_irregular(x, y)
    if bad is not None:
        return bad
    return TruthInterval(x.lo * y.lo, x.hi * y.hi)


def tconorm(x: TruthInterval, y: TruthInterval) -> TruthInterval:
    bad = _first_irregular(x, y)
    if bad is not None:
        return bad
    return TruthInterval(x.lo + y.lo - x.lo * y.lo, x.hi + y.hi - x.hi * y.hi)


def cneg(x: TruthInterval) -> TruthInterval:
    if not x.is_regular:
        return x
    return TruthInterval(1 - x.hi, 1 - x.lo)


def naf(x: TruthInterval) -> TruthInterval:
    if not x.is_regular:
        return x
    return TruthInterval(1 - x.lo, 1 - x.lo)


def k_aggregate(x: TruthInterval, y: TruthInterval, xi: float = XI,
                eps: float = EPS) -> TruthInterval:
    """Keep the strictly narrower operand; equal widths must agree or contradict."""
    bad = _first_irregular(x, y)
    if bad is not None:
        return bad
    if x.width < y.width - eps:
        return x
    if y.width < x.width - eps:
        return y
    if x.close_to(y, eps):
        return x
    return contradiction(xi)


def interval_distance(x: TruthInterval, y: TruthInterval,
                      variant: str = CORRECTED) -> float:
    _require_regular(x, y)
    if variant == CORRECTED:
        return (abs(x.lo - y.lo) + abs(x.hi - y.hi)) / 2
    if variant == PAPER_LITERAL:
        # Printed form: depends on the two widths only.
        return (abs(x.lo - x.hi) + abs(y.lo - y.hi)) / 2
    raise ValueError(f"unknown distance variant {variant!r}")


def tnorm_all(values) -> TruthInterval:
    out = TRUE
    for v in values:
        out = tnorm(out, v)
    return out


def tconorm_all(values) -> TruthInterval:
    out = FALSE
    for v in values:
        out = tconorm(out, v)
    return out
