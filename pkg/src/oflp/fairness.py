"""Proportional fairness axioms: checkers and exact feasible regions.

A facility location satisfies an axiom when it lies outside a family of open
"forbidden balls" around the agents, so each region is the closed complement
of a finite union of open intervals.

* IFS: every agent is at distance >= 1 / (alpha n).
* UFS: every group of k co-located agents is at distance >= k / (alpha n).
* PF:  every set S with location range r is at distance >= |S| / (alpha n) - r.

Only windows of consecutive groups need to be examined for PF: for an agent
set S, the window spanning ``[min S, max S]`` has the same range and at least
as many members.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Tuple

from .core import (
    ZERO,
    Lottery,
    Number,
    Profile,
    as_rational,
    expected_utility,
    group,
    loc,
)
from .intervals import IntervalSet, feasible_complement


class UnsupportedAxiomError(ValueError):
    pass


class AxiomKind(enum.Enum):
    IFS = "ifs"
    UFS = "ufs"
    PF = "pf"


@dataclass(frozen=True)
class Axiom:
    kind: AxiomKind
    alpha: Fraction = field(default=Fraction(2))

    def __post_init__(self):
        alpha = as_rational(self.alpha)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def ifs(cls, alpha: Number = 2) -> "Axiom":
        return cls(AxiomKind.IFS, alpha)

    @classmethod
    def ufs(cls, alpha: Number = 2) -> "Axiom":
        return cls(AxiomKind.UFS, alpha)

    @classmethod
    def pf(cls, alpha: Number = 2) -> "Axiom":
        return cls(AxiomKind.PF, alpha)

    def __str__(self) -> str:
        return f"{self.alpha}-{self.kind.name}"


IFS2 = Axiom.ifs()
UFS2 = Axiom.ufs()
PF2 = Axiom.pf()


class HybridAxiom(enum.Enum):
    HIFS = "hifs"
    HUFS = "hufs"


@dataclass(frozen=True)
class HybridProfile:
    """Classic agents want the facility near, obnoxious agents want it far."""

    classic: Tuple[Fraction, ...]
    obnoxious: Tuple[Fraction, ...]

    def __init__(self, classic: Iterable[Number] = (), obnoxious: Iterable[Number] = ()):
        c = tuple(sorted(loc(x) for x in classic))
        o = tuple(sorted(loc(x) for x in obnoxious))
        if not c and not o:
            raise ValueError("a hybrid profile needs at least one agent")
        object.__setattr__(self, "classic", c)
        object.__setattr__(self, "obnoxious", o)

    @property
    def n(self) -> int:
        return len(self.classic) + len(self.obnoxious)


class Constraint(NamedTuple):
    """One distance requirement, as reported by :func:`margins`."""

    label: str
    agent: Fraction
    distance: Fraction
    bound: Fraction

    @property
    def margin(self) -> Fraction:
        return self.distance - self.bound

    @property
    def ok(self) -> bool:
        return self.distance >= self.bound


def _windows(p: Profile, alpha: Fraction):
    """Yield ``(first, last, radius)`` over consecutive group windows with a positive radius."""
    g = group(p)
    centers, sizes = g.centers, g.sizes
    scale = alpha * p.n
    for a in range(len(centers)):
        size = 0
        for b in range(a, len(centers)):
            size += sizes[b]
            radius = size / scale - (centers[b] - centers[a])
            if radius > 0:
                yield a, b, radius


def _balls(p: Profile, a: Axiom) -> List[Tuple[Fraction, Fraction]]:
    """Open forbidden intervals whose closed complement is the feasible region."""
    n = p.n
    if a.kind is AxiomKind.IFS:
        r = 1 / (a.alpha * n)
        return [(x - r, x + r) for x in sorted(set(p.locations))]
    g = group(p)
    if a.kind is AxiomKind.UFS:
        return [(c - k / (a.alpha * n), c + k / (a.alpha * n)) for c, k in g.groups]
    centers = g.centers
    holes = []
    for first, last, radius in _windows(p, a.alpha):
        holes.extend((c - radius, c + radius) for c in centers[first : last + 1])
    return holes


def check(p: Profile, y: Number, a: Axiom) -> bool:
    """Whether facility ``y`` satisfies axiom ``a`` on profile ``p`` (exact, ``>=``)."""
    y = as_rational(y)
    n = p.n
    if a.kind is AxiomKind.IFS:
        bound = 1 / (a.alpha * n)
        return all(abs(y - x) >= bound for x in p.locations)
    g = group(p)
    if a.kind is AxiomKind.UFS:
        return all(abs(y - c) * a.alpha * n >= k for c, k in g.groups)
    centers, sizes = g.centers, g.sizes
    dists = [abs(y - c) for c in centers]
    scale = a.alpha * n
    for first in range(len(centers)):
        size = 0
        nearest = dists[first]
        for last in range(first, len(centers)):
            size += sizes[last]
            if dists[last] < nearest:
                nearest = dists[last]
            if nearest < size / scale - (centers[last] - centers[first]):
                return False
    return True


def margins(p: Profile, y: Number, a: Axiom) -> List[Constraint]:
    """Every constraint of ``a`` at ``y`` with its exact slack."""
    y = as_rational(y)
    n = p.n
    out = []
    if a.kind is AxiomKind.IFS:
        bound = 1 / (a.alpha * n)
        for x in p.locations:
            out.append(Constraint(f"agent@{x}", x, abs(y - x), bound))
        return out
    g = group(p)
    if a.kind is AxiomKind.UFS:
        for c, k in g.groups:
            out.append(Constraint(f"group@{c}", c, abs(y - c), k / (a.alpha * n)))
        return out
    centers, sizes = g.centers, g.sizes
    for first in range(len(centers)):
        for last in range(first, len(centers)):
            size = sum(sizes[first : last + 1])
            bound = size / (a.alpha * n) - (centers[last] - centers[first])
            lo, hi = centers[first], centers[last]
            label = f"group@{lo}" if first == last else f"window[{lo},{hi}]"
            for c in centers[first : last + 1]:
                out.append(Constraint(label, c, abs(y - c), bound))
    return out


def feasible_region(p: Profile, a: Axiom) -> IntervalSet:
    """All ``y`` in [0, 1] with ``check(p, y, a)``; empty is a valid answer."""
    return feasible_complement(_balls(p, a))


def forbidden_balls(p: Profile, a: Axiom) -> List[Tuple[Fraction, Fraction]]:
    return _balls(p, a)


def check_expectation(p: Profile, lottery: Lottery, a: Axiom) -> bool:
    """Fair share in expectation; only IFS and UFS are defined."""
    n = p.n
    if a.kind is AxiomKind.IFS:
        bound = 1 / (a.alpha * n)
        return all(expected_utility(lottery, c) >= bound for c in set(p.locations))
    if a.kind is AxiomKind.UFS:
        return all(
            expected_utility(lottery, c) * a.alpha * n >= k for c, k in group(p).groups
        )
    raise UnsupportedAxiomError("PF in expectation is not defined")


def _hybrid_groups(locations: Tuple[Fraction, ...], individual: bool):
    if individual:
        return [(x, 1) for x in locations]
    return list(group(Profile(locations)).groups) if locations else []


def hybrid_feasible_region(h: HybridProfile, a: HybridAxiom) -> IntervalSet:
    """Closed balls around classic agents, minus open balls around obnoxious ones.

    Classic groups of size k must be within ``1 - k/n``; obnoxious groups of
    size k must be at least ``k/(2n)`` away.  Under H-IFS every agent counts
    as its own group.
    """
    n = h.n
    individual = a is HybridAxiom.HIFS
    region = IntervalSet.unit()
    for c, k in _hybrid_groups(h.classic, individual):
        reach = 1 - Fraction(k, n)
        region = region.clip(c - reach, c + reach)
    holes = [
        (c - Fraction(k, 2 * n), c + Fraction(k, 2 * n))
        for c, k in _hybrid_groups(h.obnoxious, individual)
    ]
    return region.remove_open(holes)


def check_hybrid(h: HybridProfile, y: Number, a: HybridAxiom) -> bool:
    y = as_rational(y)
    if not ZERO <= y <= 1:
        return False
    n = h.n
    individual = a is HybridAxiom.HIFS
    near = all(abs(y - c) <= 1 - Fraction(k, n) for c, k in _hybrid_groups(h.classic, individual))
    far = all(abs(y - c) >= Fraction(k, 2 * n) for c, k in _hybrid_groups(h.obnoxious, individual))
    return near and far
