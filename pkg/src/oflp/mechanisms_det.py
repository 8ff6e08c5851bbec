"""Deterministic facility placement: welfare optima with and without fairness.

Ties are always broken towards the leftmost location.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Tuple

from .core import (
    HALF,
    ONE,
    ZERO,
    Objective,
    Profile,
    egalitarian_welfare,
    group,
    utilitarian_welfare,
    welfare,
)
from .fairness import (
    PF2,
    Axiom,
    HybridAxiom,
    HybridProfile,
    feasible_region,
    hybrid_feasible_region,
)
from .intervals import IntervalSet, feasible_complement


class InfeasibleError(ValueError):
    """The fairness constraint admits no facility location."""


def _leftmost_argmax(candidates: Iterable[Fraction], value) -> Fraction:
    best_y, best_v = None, None
    for y in sorted(set(candidates)):
        v = value(y)
        if best_v is None or v > best_v:
            best_y, best_v = y, v
    return best_y


def opt_uw(p: Profile) -> Fraction:
    """0 if it is at least as good as 1, else 1 (UW is convex, so one of them is optimal)."""
    return ZERO if 2 * p.total() >= p.n else ONE


def ew_candidates(p: Profile) -> List[Fraction]:
    """Possible peaks of the min-distance function: 0, 1 and midpoints of neighbours."""
    distinct = sorted(set(p.locations))
    mids = [(a + b) / 2 for a, b in zip(distinct, distinct[1:])]
    return [ZERO, ONE] + mids


def opt_ew(p: Profile) -> Fraction:
    return _leftmost_argmax(ew_candidates(p), lambda y: egalitarian_welfare(p, y))


def _region_or_raise(p: Profile, a: Axiom) -> IntervalSet:
    region = feasible_region(p, a)
    if region.is_empty():
        raise InfeasibleError(f"no location satisfies {a} for {p}")
    return region


def opt_uw_fair(p: Profile, a: Axiom) -> Fraction:
    """Best UW location within the feasible region of ``a``.

    UW is convex, so on each component of the region the maximum sits at an
    endpoint and it is enough to scan endpoints.
    """
    region = _region_or_raise(p, a)
    return _leftmost_argmax(region.endpoints(), lambda y: utilitarian_welfare(p, y))


def opt_ew_fair(p: Profile, a: Axiom) -> Fraction:
    region = _region_or_raise(p, a)
    inside = [y for y in ew_candidates(p) if y in region]
    return _leftmost_argmax(
        list(region.endpoints()) + inside, lambda y: egalitarian_welfare(p, y)
    )


def opt_fair(p: Profile, a: Axiom, objective: Objective) -> Fraction:
    if objective is Objective.UW:
        return opt_uw_fair(p, a)
    return opt_ew_fair(p, a)


def opt(p: Profile, objective: Objective) -> Fraction:
    return opt_uw(p) if objective is Objective.UW else opt_ew(p)


# -- 2-PF by ball merging -----------------------------------------------------

Ball = Tuple[Fraction, Fraction]  # (center, radius)


def _overlap(b1: Ball, b2: Ball) -> bool:
    # open balls: touching boundaries do not overlap
    return abs(b1[0] - b2[0]) < b1[1] + b2[1]


def _merge(b1: Ball, b2: Ball) -> Ball:
    (c1, r1), (c2, r2) = b1, b2
    radius = r1 + r2
    if abs(c1 - c2) + r2 <= r1:
        return c1, radius
    if abs(c1 - c2) + r1 <= r2:
        return c2, radius
    left = min(c1 - r1, c2 - r2)
    right = max(c1 + r1, c2 + r2)
    return (left + right) / 2, radius


def merge_balls(p: Profile) -> List[Ball]:
    """Run the merge procedure to a set of pairwise disjoint balls.

    Starts from one ball of radius ``|S|/(2n)`` per group.  While two balls
    overlap, the leftmost overlapping pair is replaced by a single ball whose
    radius is the sum of theirs: nested pairs keep the outer center, other
    pairs are re-centred at the midpoint of their union.
    """
    n = p.n
    balls = [(c, Fraction(k, 2 * n)) for c, k in group(p).groups]
    while True:
        balls.sort()
        pair = next(
            (
                (i, j)
                for i in range(len(balls))
                for j in range(i + 1, len(balls))
                if _overlap(balls[i], balls[j])
            ),
            None,
        )
        if pair is None:
            return balls
        i, j = pair
        merged = _merge(balls[i], balls[j])
        balls = [b for k, b in enumerate(balls) if k not in pair] + [merged]


def solve_2pf(p: Profile) -> Fraction:
    """A 2-PF facility location: the leftmost point outside every merged ball."""
    balls = merge_balls(p)
    region = feasible_complement((c - r, c + r) for c, r in balls)
    if region.is_empty():
        # cannot happen: the merged balls are disjoint with total length 1
        raise InfeasibleError(f"merged balls cover [0, 1] for {p}")
    return region.leftmost()


def pf_region(p: Profile) -> IntervalSet:
    return feasible_region(p, PF2)


def solve_hybrid(h: HybridProfile, a: HybridAxiom = HybridAxiom.HUFS) -> Fraction:
    region = hybrid_feasible_region(h, a)
    if region.is_empty():
        raise InfeasibleError(f"no location satisfies {a.name}")
    return region.leftmost()


__all__ = [
    "InfeasibleError",
    "HALF",
    "merge_balls",
    "opt",
    "opt_ew",
    "opt_ew_fair",
    "opt_fair",
    "opt_uw",
    "opt_uw_fair",
    "pf_region",
    "solve_2pf",
    "solve_hybrid",
    "welfare",
]
