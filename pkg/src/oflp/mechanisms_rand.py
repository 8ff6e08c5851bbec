"""Randomized mechanisms; every output is an exact lottery supported on {0, 1}."""

from __future__ import annotations

from fractions import Fraction

from .core import HALF, ONE, ZERO, Lottery, Profile, group


def mechanism2(p: Profile) -> Lottery:
    """Facility at 0 with probability (2 n1 n2 + n2^2) / (n1^2 + n2^2 + 4 n1 n2).

    n1 counts agents in [0, 1/2] and n2 agents in (1/2, 1].

    >>> mechanism2(Profile([0.2, 0.8]))
    Lottery({0: 1/2, 1: 1/2})
    """
    n1 = sum(1 for x in p.locations if x <= HALF)
    n2 = p.n - n1
    alpha = Fraction(2 * n1 * n2 + n2 * n2, n1 * n1 + n2 * n2 + 4 * n1 * n2)
    return Lottery({0: alpha, 1: 1 - alpha})


def randomized_ew(p: Profile) -> Lottery:
    if all(x <= HALF for x in p.locations):
        return Lottery.point(1)
    if all(x > HALF for x in p.locations):
        return Lottery.point(0)
    return Lottery.endpoints(HALF)


def _binding_prob(size: int, n: int, x: Fraction) -> Fraction:
    # probability on 1 that gives a group of ``size`` agents at x exactly size/(2n)
    return (size - 2 * n * x) / (2 * n * (1 - 2 * x))


def randomized_2ifs(p: Profile) -> Lottery:
    """Best UW lottery on {0, 1} that gives each agent 1/(2n) in expectation."""
    n = p.n
    twice = 2 * p.total()
    if twice == n:
        return Lottery.endpoints(HALF)
    if twice > n:
        x1 = p.locations[0]
        if x1 >= Fraction(1, 2 * n):
            return Lottery.point(0)
        return Lottery.endpoints(_binding_prob(1, n, x1))
    xn = p.locations[-1]
    if xn <= 1 - Fraction(1, 2 * n):
        return Lottery.point(1)
    return Lottery.endpoints(_binding_prob(1, n, xn))


def randomized_2ufs(p: Profile) -> Lottery:
    """Group version of :func:`randomized_2ifs`.

    When the agents lean right, the facility leans to 0 and only groups left
    of 1/2 can bind; the smallest weight on 1 that satisfies all of them is
    the largest binding value (negative values mean the group is already
    satisfied by 0).  The left-leaning case is the mirror image, where each
    group right of 1/2 caps the weight on 1.
    """
    n = p.n
    twice = 2 * p.total()
    groups = group(p).groups
    if twice == n:
        return Lottery.endpoints(HALF)
    if twice > n:
        alpha = max(
            (max(ZERO, _binding_prob(k, n, c)) for c, k in groups if c < HALF),
            default=ZERO,
        )
    else:
        alpha = min(
            (min(ONE, max(ZERO, _binding_prob(k, n, c))) for c, k in groups if c > HALF),
            default=ONE,
        )
    return Lottery.endpoints(alpha)


def collapse_support(lottery: Lottery) -> Lottery:
    """Move each interior atom (c, q) to mass c*q at 1 and (1 - c)*q at 0.

    No agent is worse off, since |c - x| <= c (1 - x) + (1 - c) x.

    >>> collapse_support(Lottery({"0.5": 1}))
    Lottery({0: 1/2, 1: 1/2})
    """
    out = {ZERO: ZERO, ONE: ZERO}
    for c, q in lottery.atoms:
        out[ONE] += c * q
        out[ZERO] += (1 - c) * q
    return Lottery(out)


RANDOMIZED = {
    "mechanism2": mechanism2,
    "rand-ew": randomized_ew,
    "rand-2ifs": randomized_2ifs,
    "rand-2ufs": randomized_2ufs,
}
