"""Finite unions of closed subintervals of [0, 1] with exact endpoints."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Tuple

from .core import ONE, ZERO, Number, as_rational

Interval = Tuple[Fraction, Fraction]


def _normalize(intervals: Iterable[Interval]) -> Tuple[Interval, ...]:
    out = []
    for lo, hi in sorted(intervals):
        if lo > hi:
            continue
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, disjoint, non-touching closed intervals.

    Degenerate intervals ``[a, a]`` are allowed; they arise when two forbidden
    open balls share a boundary point.
    """

    intervals: Tuple[Interval, ...]

    def __init__(self, intervals: Iterable[Tuple[Number, Number]] = ()):
        pairs = ((as_rational(lo), as_rational(hi)) for lo, hi in intervals)
        object.__setattr__(self, "intervals", _normalize(pairs))

    @classmethod
    def unit(cls) -> "IntervalSet":
        return cls([(ZERO, ONE)])

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls()

    def is_empty(self) -> bool:
        return not self.intervals

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __contains__(self, y) -> bool:
        y = as_rational(y)
        return any(lo <= y <= hi for lo, hi in self.intervals)

    def length(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def endpoints(self) -> Tuple[Fraction, ...]:
        pts = []
        for lo, hi in self.intervals:
            pts.append(lo)
            if hi != lo:
                pts.append(hi)
        return tuple(pts)

    def leftmost(self) -> Optional[Fraction]:
        return self.intervals[0][0] if self.intervals else None

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def clip(self, lo: Number, hi: Number) -> "IntervalSet":
        return self.intersect(IntervalSet([(lo, hi)]))

    def remove_open(self, holes: Iterable[Tuple[Number, Number]]) -> "IntervalSet":
        """Subtract a union of open intervals ``(a, b)``.

        Boundary points of the holes survive, which is what makes a distance
        of exactly the fair-share bound feasible.
        """
        merged = []
        for a, b in sorted((as_rational(a), as_rational(b)) for a, b in holes):
            if a >= b:
                continue
            # open intervals that merely touch leave their shared point uncovered
            if merged and a < merged[-1][1]:
                if b > merged[-1][1]:
                    merged[-1] = (merged[-1][0], b)
            else:
                merged.append((a, b))
        out = []
        for lo, hi in self.intervals:
            cur = lo
            for a, b in merged:
                if a >= hi:
                    break
                if b <= cur:
                    continue
                if a >= cur:
                    out.append((cur, a))
                cur = max(cur, b)
                if cur > hi:
                    break
            if cur <= hi:
                out.append((cur, hi))
        return IntervalSet(out)

    def complement_length(self) -> Fraction:
        return ONE - self.length()

    def __repr__(self) -> str:
        body = ", ".join(f"[{lo}, {hi}]" for lo, hi in self.intervals)
        return f"IntervalSet({{{body}}})"


def feasible_complement(holes: Iterable[Tuple[Number, Number]]) -> IntervalSet:
    """Points of [0, 1] outside every open interval in ``holes``."""
    return IntervalSet.unit().remove_open(holes)
