"""Best responses, pure epsilon-Nash verification and price of anarchy for f*_2IFS / f*_2UFS.

Best responses are searched over a finite candidate set, since the supremum
of an agent's utility is often not attained.  The set mixes structural points
(other reports shifted by multiples of 1/(2n), nudged by +-delta) with a
uniform grid, so a verification is sound only up to that set.

Candidate evaluation runs on an integer lattice: every report, the grid step,
delta and 1/(2n) share a common denominator D, so facility locations and
welfare values are exact int64 arrays.  For a fixed agent i the other reports
carve out a region R0; moving i's report to t removes one more open ball
around t, and the new facility is the leftmost UW maximizer among the
endpoints of R0 outside that ball and the ball's own edges.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .core import Number, Profile, ZERO, as_rational, group, loc, utilitarian_welfare
from .fairness import IFS2, UFS2, Axiom
from .intervals import feasible_complement
from .mechanisms_det import opt_uw_fair

DEFAULT_GRID = 2001
DEFAULT_DELTA = Fraction(1, 10**6)
# beyond this the lattice welfare sums could overflow int64
_MAX_DENOMINATOR = 2**50


class MechId(enum.Enum):
    OptUwIfs2 = "2ifs"
    OptUwUfs2 = "2ufs"

    @property
    def axiom(self) -> Axiom:
        return IFS2 if self is MechId.OptUwIfs2 else UFS2


def facility(m: MechId, reports: Sequence[Number]) -> Fraction:
    return opt_uw_fair(Profile(reports), m.axiom)


@dataclass(frozen=True)
class EquilibriumReport:
    reports: Tuple[Fraction, ...]
    per_agent_gain: Tuple[Fraction, ...]
    epsilon: Fraction
    is_equilibrium: bool
    candidate_count: int
    deviations: Tuple[Fraction, ...] = ()

    @property
    def max_gain(self) -> Fraction:
        return max(self.per_agent_gain)


def _scaled(q: Fraction, D: int) -> int:
    return q.numerator * (D // q.denominator)


def _candidates(reports, i, n, D, grid, delta) -> np.ndarray:
    anchors = [_scaled(r, D) for j, r in enumerate(reports) if j != i] + [0, D]
    half, d = D // (2 * n), _scaled(delta, D)
    offsets = [k * half + s * d for k in range(-2, 3) for s in (-1, 0, 1)]
    pts = (np.array(anchors, dtype=np.int64)[:, None] + np.array(offsets, dtype=np.int64)).ravel()
    parts = [pts, np.array([0, D], dtype=np.int64)]
    if grid > 1:
        parts.append(np.arange(grid, dtype=np.int64) * (D // (grid - 1)))
    return np.unique(np.clip(np.concatenate(parts), 0, D))


def _lattice_facilities(m, reports, i, n, D, T) -> np.ndarray:
    """Facility location (scaled by D) for each candidate report in ``T``."""
    others = [r for j, r in enumerate(reports) if j != i]
    if m is MechId.OptUwIfs2:
        radius = Fraction(1, 2 * n)
        balls = [(x - radius, x + radius) for x in others]
    else:
        balls = [
            (c - Fraction(k, 2 * n), c + Fraction(k, 2 * n))
            for c, k in group(Profile(others)).groups
        ] if others else []
    region = feasible_complement(balls)
    lo_hi = np.array([[_scaled(a, D), _scaled(b, D)] for a, b in region], dtype=np.int64).reshape(-1, 2)
    E0 = np.array([_scaled(e, D) for e in region.endpoints()], dtype=np.int64)
    X = np.array([_scaled(x, D) for x in others], dtype=np.int64)

    def others_uw(y):
        if X.size == 0:
            return np.zeros(y.shape, dtype=np.int64)
        return np.abs(y[..., None] - X).sum(axis=-1)

    def in_region(y):
        if lo_hi.size == 0:
            return np.zeros(y.shape, dtype=bool)
        k = np.searchsorted(lo_hi[:, 0], y, side="right") - 1
        ok = k >= 0
        return ok & (y <= lo_hi[np.maximum(k, 0), 1])

    r = D // (2 * n)
    edges = np.stack([T - r, T + r], axis=1)
    P = np.concatenate([np.broadcast_to(E0, (T.size, E0.size)), edges], axis=1)
    valid = np.concatenate(
        [~((E0[None, :] > edges[:, :1]) & (E0[None, :] < edges[:, 1:])), in_region(edges)],
        axis=1,
    )
    S0 = np.concatenate([np.broadcast_to(others_uw(E0), (T.size, E0.size)), others_uw(edges)], axis=1)
    W = np.where(valid, S0 + np.abs(P - T[:, None]), -1)
    best = W.max(axis=1)
    if (best < 0).any():
        raise RuntimeError("empty fair region during best-response search")
    winners = valid & (W == best[:, None])
    return np.where(winners, P, np.iinfo(np.int64).max).min(axis=1)


def _search(m, truth_i, reports, i, grid, delta):
    """(best report, best utility, candidate count) for agent i."""
    n = len(reports)
    D = math.lcm(
        2 * n,
        truth_i.denominator,
        delta.denominator,
        max(grid - 1, 1),
        *(r.denominator for r in reports),
    )
    if D > _MAX_DENOMINATOR:
        return _search_exact(m, truth_i, reports, i, grid, delta)
    T = _candidates(reports, i, n, D, grid, delta)
    Y = np.empty_like(T)
    coincide = np.zeros(T.shape, dtype=bool)
    if m is MechId.OptUwUfs2:
        # joining another report's group changes that group's ball
        coincide = np.isin(T, [_scaled(r, D) for j, r in enumerate(reports) if j != i])
    Y[~coincide] = _lattice_facilities(m, reports, i, n, D, T[~coincide])
    for k in np.flatnonzero(coincide):
        trial = list(reports)
        trial[i] = Fraction(int(T[k]), D)
        Y[k] = _scaled(facility(m, trial), D)
    U = np.abs(Y - _scaled(truth_i, D))
    k = int(U.argmax())
    return Fraction(int(T[k]), D), Fraction(int(U[k]), D), int(T.size)


def _search_exact(m, truth_i, reports, i, grid, delta):
    n = len(reports)
    pts = {ZERO, Fraction(1), truth_i}
    anchors = [r for j, r in enumerate(reports) if j != i] + [ZERO, Fraction(1)]
    for a in anchors:
        for k in range(-2, 3):
            for s in (-1, 0, 1):
                pts.add(min(Fraction(1), max(ZERO, a + Fraction(k, 2 * n) + s * delta)))
    if grid > 1:
        pts.update(Fraction(g, grid - 1) for g in range(grid))
    best_t, best_u = None, None
    for t in sorted(pts):
        trial = list(reports)
        trial[i] = t
        u = abs(facility(m, trial) - truth_i)
        if best_u is None or u > best_u:
            best_t, best_u = t, u
    return best_t, best_u, len(pts)


def best_response(
    m: MechId,
    truth: Number,
    reports: Sequence[Number],
    i: int,
    grid: int = DEFAULT_GRID,
    delta: Number = DEFAULT_DELTA,
) -> Tuple[Fraction, Fraction]:
    """Best report found for agent ``i`` and its utility gain (never negative).

    ``truth`` is agent i's true location.  With no improvement the current
    report is returned with gain 0.
    """
    reports = [loc(r) for r in reports]
    if not 0 <= i < len(reports):
        raise IndexError(f"agent index {i} out of range for {len(reports)} agents")
    truth_i = loc(truth)
    t, u, _ = _search(m, truth_i, reports, i, grid, as_rational(delta))
    current = abs(facility(m, reports) - truth_i)
    if u <= current:
        return reports[i], ZERO
    return t, u - current


def verify_equilibrium(
    m: MechId,
    truth: Sequence[Number],
    reports: Sequence[Number],
    eps: Number,
    grid: int = DEFAULT_GRID,
    delta: Number = DEFAULT_DELTA,
) -> EquilibriumReport:
    truth = [loc(x) for x in truth]
    reports = [loc(r) for r in reports]
    if len(truth) != len(reports):
        raise ValueError(f"{len(truth)} true locations but {len(reports)} reports")
    eps, delta = as_rational(eps), as_rational(delta)
    y = facility(m, reports)
    gains, moves, count = [], [], 0
    for i, x in enumerate(truth):
        t, u, c = _search(m, x, reports, i, grid, delta)
        current = abs(y - x)
        gains.append(max(ZERO, u - current))
        moves.append(t if u > current else reports[i])
        count += c
    return EquilibriumReport(
        reports=tuple(reports),
        per_agent_gain=tuple(gains),
        epsilon=eps,
        is_equilibrium=max(gains) <= eps,
        candidate_count=count,
        deviations=tuple(moves),
    )


# -- constructive equilibria --------------------------------------------------


def _first_low(x: Sequence[Fraction], n: int, upto: int):
    """Smallest 1-based i <= upto with x_i >= (2i - 1)/(2n), or None."""
    for i in range(1, upto + 1):
        if x[i - 1] >= Fraction(2 * i - 1, 2 * n):
            return i
    return None


def _left_staircase(n: int, count: int, e: Fraction) -> List[Fraction]:
    return [Fraction(2 * i - 1, 2 * n) - i * e for i in range(1, count + 1)]


def _right_staircase(n: int, start: int, e: Fraction) -> List[Fraction]:
    return [Fraction(2 * i - 1, 2 * n) + (n + 1 - i) * e for i in range(start, n + 1)]


def _from_low(j: int, n: int, e: Fraction) -> List[Fraction]:
    left = _left_staircase(n, j - 1, e)
    return left + [Fraction(1)] * (n - len(left))


def _sorted_construction(x: List[Fraction], e: Fraction) -> List[Fraction]:
    n = len(x)
    h = n // 2
    mirrored = [1 - v for v in reversed(x)]
    if n % 2 == 0:
        j = _first_low(x, n, h)
        if j is not None:
            return _from_low(j, n, e)
        j = _first_low(mirrored, n, h - 1)
        if j is None and mirrored[h - 1] >= Fraction(3 * n - 3, 4 * n):
            j = h
        if j is not None:
            return [1 - v for v in reversed(_from_low(j, n, e))]
        pivot = x[h]
        left = _left_staircase(n, h, e)
        threshold = Fraction(n + 1, 2 * n)
        if pivot < threshold:
            return left + [ZERO] + _right_staircase(n, h + 2, e)
        # With the right half all at 1 the two ends of the feasible interval tie,
        # and agent n/2+1 can report 0 to get the right end.  That only helps it
        # if it sits left of the interval's midpoint.
        lo, hi = Fraction(1, 2) - h * e, 1 - Fraction(1, 2 * n)
        if pivot > threshold and 2 * pivot >= lo + hi:
            return left + [Fraction(1)] * h
        return left + [threshold + h * e] + _right_staircase(n, h + 2, e)
    j = _first_low(x, n, h)
    if j is not None:
        return _from_low(j, n, e)
    j = _first_low(mirrored, n, h)
    if j is not None:
        return [1 - v for v in reversed(_from_low(j, n, e))]
    middle = Fraction(1) if x[h] >= Fraction(1, 2) else ZERO
    return _left_staircase(n, h, e) + [middle] + _right_staircase(n, h + 2, e)


def construct_equilibrium(m: MechId, truth: Sequence[Number], eps: Number) -> List[Fraction]:
    """A reported profile that is a pure eps-Nash equilibrium under ``m``.

    The same profile serves both mechanisms.  Reports are returned in the
    order of ``truth``.

    >>> construct_equilibrium(MechId.OptUwIfs2, ["0.3", "0.6"], "0.01")
    [Fraction(1, 1), Fraction(1, 1)]
    """
    truth = [loc(x) for x in truth]
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = len(truth)
    # agent i on the left staircase can still gain up to (2i - 1) e
    e = min(eps, Fraction(1, 2 * n * n)) / (2 * n)
    order = sorted(range(n), key=truth.__getitem__)
    sorted_reports = _sorted_construction([truth[k] for k in order], e)
    out = [ZERO] * n
    for rank, agent in enumerate(order):
        out[agent] = sorted_reports[rank]
    return out


# -- price of anarchy ---------------------------------------------------------


def poa_ratio(m: MechId, truth: Sequence[Number], reports: Sequence[Number]):
    """Truthful-optimum welfare over equilibrium welfare; ``math.inf`` if the latter is 0."""
    p = Profile(truth)
    top = utilitarian_welfare(p, facility(m, truth))
    bottom = utilitarian_welfare(p, facility(m, reports))
    if bottom == 0:
        return math.inf
    return top / bottom


def poa_family(n: int, eps: Number) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...], Fraction]:
    """Truth, equilibrium reports and ratio (2n - 1 + n eps) / (1 - n eps).

    >>> poa_family(2, "0.1")[2]
    Fraction(4, 1)
    """
    eps = as_rational(eps)
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0 < eps < Fraction(1, n):
        raise ValueError("need 0 < eps < 1/n; the ratio is unbounded otherwise")
    x = Fraction(1, 2 * n) - eps / 2
    ratio = (2 * n - 1 + n * eps) / (1 - n * eps)
    return (x,) * n, (Fraction(1),) * n, ratio
