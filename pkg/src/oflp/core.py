"""Exact-arithmetic domain types for obnoxious facility location on [0, 1].

Every quantity is a :class:`fractions.Fraction`.  Decimal strings and floats
are converted through their decimal representation, so ``"0.1"`` and ``0.1``
both become ``1/10``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import cached_property
from itertools import groupby
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Tuple, Union

Number = Union[int, float, str, Decimal, Rational]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def as_rational(value: Number) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    >>> as_rational("0.1")
    Fraction(1, 10)
    >>> as_rational(0.1)
    Fraction(1, 10)
    >>> as_rational("5/6")
    Fraction(5, 6)
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not locations")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # repr gives the shortest decimal that round-trips
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def loc(value: Number) -> Fraction:
    """Parse a location and check that it lies in [0, 1]."""
    q = as_rational(value)
    if not ZERO <= q <= ONE:
        raise ValueError(f"location {q} outside [0, 1]")
    return q


class Objective(enum.Enum):
    UW = "utilitarian"
    EW = "egalitarian"


@dataclass(frozen=True)
class Profile:
    """Sorted agent locations; n >= 1."""

    locations: Tuple[Fraction, ...]

    def __init__(self, locations: Iterable[Number]):
        locs = tuple(sorted(as_rational(x) for x in locations))
        if not locs:
            raise ValueError("a profile needs at least one agent")
        for q in (locs[0], locs[-1]):
            loc(q)
        object.__setattr__(self, "locations", locs)

    @property
    def n(self) -> int:
        return len(self.locations)

    def __len__(self) -> int:
        return len(self.locations)

    def __iter__(self):
        return iter(self.locations)

    def __getitem__(self, i):
        return self.locations[i]

    def total(self) -> Fraction:
        return self._total

    @cached_property
    def _total(self) -> Fraction:
        return sum(self.locations, ZERO)

    def __repr__(self) -> str:
        return "Profile(" + ", ".join(str(x) for x in self.locations) + ")"


@dataclass(frozen=True)
class GroupedProfile:
    """Run-length encoding of a profile: ``(center, size)`` pairs."""

    groups: Tuple[Tuple[Fraction, int], ...]
    n: int

    @property
    def centers(self) -> Tuple[Fraction, ...]:
        return tuple(c for c, _ in self.groups)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(k for _, k in self.groups)

    def ungroup(self) -> Profile:
        return Profile(c for c, k in self.groups for _ in range(k))

    def __len__(self) -> int:
        return len(self.groups)


def group(p: Profile) -> GroupedProfile:
    """Collapse identical locations into groups.

    >>> group(Profile(["0.1", "0.1", "0.8"])).groups
    ((Fraction(1, 10), 2), (Fraction(4, 5), 1))
    """
    groups = tuple((c, sum(1 for _ in run)) for c, run in groupby(p.locations))
    return GroupedProfile(groups, p.n)


@dataclass(frozen=True)
class Lottery:
    """Finitely supported distribution over facility locations.

    Atoms are kept sorted by location; zero-probability atoms are dropped and
    repeated locations are merged, so two lotteries describing the same
    distribution compare equal.
    """

    atoms: Tuple[Tuple[Fraction, Fraction], ...]

    def __init__(self, atoms: Union[Mapping[Number, Number], Iterable[Tuple[Number, Number]]]):
        items = atoms.items() if isinstance(atoms, Mapping) else atoms
        merged = {}
        for where, prob in items:
            where, prob = loc(where), as_rational(prob)
            if prob < 0:
                raise ValueError(f"negative probability {prob} at {where}")
            merged[where] = merged.get(where, ZERO) + prob
        if sum(merged.values(), ZERO) != 1:
            raise ValueError("probabilities must sum to exactly 1")
        object.__setattr__(
            self, "atoms", tuple(sorted((w, q) for w, q in merged.items() if q))
        )

    @classmethod
    def point(cls, where: Number) -> "Lottery":
        return cls({where: 1})

    @classmethod
    def endpoints(cls, prob_one: Number) -> "Lottery":
        """Facility at 1 with probability ``prob_one``, otherwise at 0."""
        q = as_rational(prob_one)
        return cls({0: 1 - q, 1: q})

    def as_dict(self) -> dict:
        return dict(self.atoms)

    def prob(self, where: Number) -> Fraction:
        return self.as_dict().get(loc(where), ZERO)

    @property
    def support(self) -> Tuple[Fraction, ...]:
        return tuple(w for w, _ in self.atoms)

    def __repr__(self) -> str:
        return "Lottery({" + ", ".join(f"{w}: {q}" for w, q in self.atoms) + "})"


def utility(y: Number, x: Number) -> Fraction:
    """Distance between facility ``y`` and agent ``x``."""
    return abs(as_rational(y) - as_rational(x))


def utilitarian_welfare(p: Profile, y: Number) -> Fraction:
    y = as_rational(y)
    if y == ZERO:
        return p.total()
    if y == ONE:
        return p.n - p.total()
    return sum((abs(y - x) for x in p.locations), ZERO)


def egalitarian_welfare(p: Profile, y: Number) -> Fraction:
    y = as_rational(y)
    return min(abs(y - x) for x in p.locations)


def welfare(p: Profile, y: Number, objective: Objective) -> Fraction:
    if objective is Objective.UW:
        return utilitarian_welfare(p, y)
    return egalitarian_welfare(p, y)


def expected_utility(lottery: Lottery, x: Number) -> Fraction:
    x = as_rational(x)
    return sum((q * abs(w - x) for w, q in lottery.atoms), ZERO)


def expected_utilitarian_welfare(lottery: Lottery, p: Profile) -> Fraction:
    return sum((q * utilitarian_welfare(p, w) for w, q in lottery.atoms), ZERO)


def expected_egalitarian_welfare(lottery: Lottery, p: Profile) -> Fraction:
    return min(expected_utility(lottery, c) for c in set(p.locations))


def mirror(p: Profile) -> Profile:
    """Reflect a profile through 1/2."""
    return Profile(1 - x for x in p.locations)


def as_profile(p: Union[Profile, Sequence[Number]]) -> Profile:
    return p if isinstance(p, Profile) else Profile(p)
