from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with ``hi`` possibly ``+inf``."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def scale(self, c: float) -> "Interval":
        if c >= 0:
            return Interval(self.lo * c, self.hi * c)
        return Interval(self.hi * c, self.lo * c)

    def outward(self, ulps: int = 1) -> "Interval":
        """Widen by a few ulps so float rounding cannot shrink the enclosure."""
        lo, hi = self.lo, self.hi
        for _ in range(ulps):
            lo = math.nextafter(lo, -math.inf)
            hi = math.nextafter(hi, math.inf)
        return Interval(lo, hi)

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}

    def __iter__(self):
        yield self.lo
        yield self.hi


# Operator-norm enclosures use the same shape.
NormInterval = Interval
