"""Prices of fairness, approximation ratios and the sweeps that probe their bounds."""

from __future__ import annotations

import enum
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .core import (
    HALF,
    ONE,
    ZERO,
    Lottery,
    Number,
    Objective,
    Profile,
    as_rational,
    egalitarian_welfare,
    expected_egalitarian_welfare,
    expected_utilitarian_welfare,
    utilitarian_welfare,
)
from .fairness import IFS2, UFS2, Axiom
from .mechanisms_det import opt, opt_fair
from .mechanisms_rand import mechanism2, randomized_2ifs, randomized_2ufs, randomized_ew


class DegenerateInstanceError(ZeroDivisionError):
    """The constrained (or mechanism) welfare is zero, so the ratio is undefined."""


class RandMech(enum.Enum):
    Mechanism2 = "mechanism2"
    Rand2IFS = "rand-2ifs"
    Rand2UFS = "rand-2ufs"
    RandEW = "rand-ew"

    @property
    def run(self) -> Callable[[Profile], Lottery]:
        return _RAND_FUNCS[self]

    @property
    def objective(self) -> Objective:
        return Objective.EW if self is RandMech.RandEW else Objective.UW


_RAND_FUNCS = {
    RandMech.Mechanism2: mechanism2,
    RandMech.Rand2IFS: randomized_2ifs,
    RandMech.Rand2UFS: randomized_2ufs,
    RandMech.RandEW: randomized_ew,
}


@dataclass(frozen=True)
class RatioRecord:
    instance: Profile
    tag: str
    objective: Objective
    optimal: Fraction
    constrained: Fraction
    ratio: Optional[Fraction]
    family: str = "random"
    eps: Optional[Fraction] = None
    degenerate: bool = False

    @property
    def n(self) -> int:
        return self.instance.n


def _record(p, tag, obj, top, bottom, family="random", eps=None, strict=True):
    if bottom == 0:
        if strict:
            raise DegenerateInstanceError(f"zero {obj.name} for {tag} on {p}")
        return RatioRecord(p, tag, obj, top, bottom, None, family, eps, degenerate=True)
    return RatioRecord(p, tag, obj, top, bottom, top / bottom, family, eps)


def pof(p: Profile, a: Axiom, obj: Objective) -> RatioRecord:
    """Unconstrained over constrained optimal welfare on one instance."""
    top = _value(p, opt(p, obj), obj)
    bottom = _value(p, opt_fair(p, a, obj), obj)
    return _record(p, str(a), obj, top, bottom)


def _value(p, y, obj):
    return utilitarian_welfare(p, y) if obj is Objective.UW else egalitarian_welfare(p, y)


def best_lottery_ew(p: Profile) -> Fraction:
    """Largest min expected utility over all lotteries.

    Endpoint lotteries suffice, and agent expectations x + q(1 - 2x) are
    lines in q that all cross at q = 1/2, so q in {0, 1/2, 1} covers the
    maximum of their lower envelope.
    """
    return max(expected_egalitarian_welfare(Lottery.endpoints(q), p) for q in (ZERO, HALF, ONE))


def approx_ratio(p: Profile, mech: RandMech) -> RatioRecord:
    lottery = mech.run(p)
    if mech.objective is Objective.UW:
        top = max(utilitarian_welfare(p, ZERO), utilitarian_welfare(p, ONE))
        bottom = expected_utilitarian_welfare(lottery, p)
    else:
        top = best_lottery_ew(p)
        bottom = expected_egalitarian_welfare(lottery, p)
    return _record(p, mech.value, mech.objective, top, bottom)


# -- adversarial families -----------------------------------------------------


def _staircase_family(n: int, eps: Fraction) -> List[Fraction]:
    if n < 2 or n % 2:
        raise ValueError("the staircase family needs an even n >= 2")
    h = n // 2
    left = [Fraction(2 * i - 1, 2 * n) - i * eps for i in range(1, h + 1)]
    right = [Fraction(2 * i - 1, 2 * n) + (n + 1 - i) * eps for i in range(h + 1, n + 1)]
    return left + right


def _two_groups(n: int, eps: Fraction) -> List[Fraction]:
    if n < 2 or n % 2:
        raise ValueError("the two-group family needs an even n >= 2")
    return [Fraction(1, 4) - eps] * (n // 2) + [Fraction(3, 4) + eps] * (n // 2)


def _ew_family(n: int, eps: Fraction) -> List[Fraction]:
    if n < 3:
        raise ValueError("the egalitarian family needs n >= 3")
    return [Fraction(1, 2 * n) - eps] + [Fraction(n + 1, 2 * n) + eps] * (n - 1)


def _ratio_2ifs(n: int, eps: Fraction) -> List[Fraction]:
    if n < 2:
        raise ValueError("need n >= 2")
    return [ZERO] + [ONE] * (n - 1)


TIGHT_2UFS_FRACTION = 1 - 1 / math.sqrt(2)


def _ratio_2ufs(n: int, eps: Fraction, fraction: Number = TIGHT_2UFS_FRACTION) -> List[Fraction]:
    k = math.ceil(as_rational(fraction) * n)
    if not 0 < k < n:
        raise ValueError(f"group size {k} must be strictly between 0 and n={n}")
    return [ZERO] * k + [ONE] * (n - k)


def _poa_lower(n: int, eps: Fraction) -> List[Fraction]:
    return [Fraction(1, 2 * n) - eps / 2] * n


FAMILIES: Dict[str, Callable[..., List[Fraction]]] = {
    "pof_uw_ifs": _staircase_family,
    "pof_uw_ufs": _two_groups,
    "pof_ew_ufs": _ew_family,
    "ratio_2ifs": _ratio_2ifs,
    "ratio_2ufs": _ratio_2ufs,
    "poa_lower": _poa_lower,
}


def adversarial_instance(family: str, n: int, eps: Number = ZERO, **kwargs) -> Profile:
    """Profile from one of the named worst-case families.

    >>> adversarial_instance("ratio_2ifs", 3)
    Profile(0, 1, 1)
    >>> adversarial_instance("poa_lower", 2, "0.1")
    Profile(1/5, 1/5)
    """
    try:
        build = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return Profile(build(n, as_rational(eps), **kwargs))


# -- random instances and bounds ----------------------------------------------


def random_profile(
    rng: random.Random, n: int, denominator: int = 10**4, dup_prob: float = 0.2
) -> Profile:
    """i.i.d. locations k/denominator; with ``dup_prob`` an agent copies an earlier one."""
    xs: List[Fraction] = []
    for _ in range(n):
        if xs and rng.random() < dup_prob:
            xs.append(rng.choice(xs))
        else:
            xs.append(Fraction(rng.randint(0, denominator), denominator))
    return Profile(xs)


def rand2ufs_bound_enclosure(digits: int = 50) -> Tuple[Fraction, Fraction]:
    """Rationals lo < (2/7)(1 + 2 sqrt 2) < hi, about ``digits`` digits apart."""
    scale = 10**digits
    s = math.isqrt(2 * scale * scale)
    lo = Fraction(2, 7) * (1 + 2 * Fraction(s, scale))
    hi = Fraction(2, 7) * (1 + 2 * Fraction(s + 1, scale))
    return lo, hi


MODES = (
    "pof_uw_ifs2",
    "pof_uw_ufs2",
    "pof_ew_ifs2",
    "pof_ew_ufs2",
    "ratio_2ifs",
    "ratio_2ufs",
    "ratio_mech2",
    "ratio_randew",
)


def theorem_bound(mode: str, n: int = 2) -> Fraction:
    """The bound each mode's ratios must respect; for ratio_2ufs, the enclosure's upper end."""
    return {
        "pof_uw_ifs2": Fraction(2),
        "pof_uw_ufs2": Fraction(2),
        "pof_ew_ifs2": ONE,
        "pof_ew_ufs2": Fraction(n - 1),
        "ratio_2ifs": Fraction(12, 11),
        "ratio_2ufs": rand2ufs_bound_enclosure()[1],
        "ratio_mech2": Fraction(3, 2),
        "ratio_randew": ONE,
    }[mode]


@dataclass(frozen=True)
class SweepConfig:
    mode: str
    n_min: int = 2
    n_max: int = 10
    samples: int = 1000
    seed: int = 0
    eps: Tuple[Fraction, ...] = (Fraction(1, 10**2), Fraction(1, 10**3), Fraction(1, 10**4))
    grid: int = 1001
    families: bool = True
    jobs: int = 0
    denominator: int = 10**4
    dup_prob: float = 0.2

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {MODES}")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        object.__setattr__(self, "eps", tuple(as_rational(e) for e in self.eps))


_EVALUATORS = {
    "pof_uw_ifs2": lambda p: pof_lenient(p, IFS2, Objective.UW),
    "pof_uw_ufs2": lambda p: pof_lenient(p, UFS2, Objective.UW),
    "pof_ew_ifs2": lambda p: pof_lenient(p, IFS2, Objective.EW),
    "pof_ew_ufs2": lambda p: pof_lenient(p, UFS2, Objective.EW),
    "ratio_2ifs": lambda p: approx_lenient(p, RandMech.Rand2IFS),
    "ratio_2ufs": lambda p: approx_lenient(p, RandMech.Rand2UFS),
    "ratio_mech2": lambda p: approx_lenient(p, RandMech.Mechanism2),
    "ratio_randew": lambda p: approx_lenient(p, RandMech.RandEW),
}


def pof_lenient(p, a, obj) -> RatioRecord:
    top = _value(p, opt(p, obj), obj)
    bottom = _value(p, opt_fair(p, a, obj), obj)
    return _record(p, str(a), obj, top, bottom, strict=False)


def approx_lenient(p, mech) -> RatioRecord:
    try:
        return approx_ratio(p, mech)
    except DegenerateInstanceError:
        return RatioRecord(p, mech.value, mech.objective, ZERO, ZERO, None, degenerate=True)


def _family_tasks(cfg: SweepConfig) -> List[Tuple[str, Optional[Fraction], Profile]]:
    out = []
    ns = range(cfg.n_min, cfg.n_max + 1)
    if cfg.mode in ("pof_uw_ifs2", "pof_uw_ufs2"):
        names = ["pof_uw_ifs"] + (["pof_uw_ufs"] if cfg.mode == "pof_uw_ufs2" else [])
        for name in names:
            for n in ns:
                if n % 2 == 0:
                    out += [(name, e, adversarial_instance(name, n, e)) for e in cfg.eps]
    elif cfg.mode == "pof_ew_ufs2":
        out += [("pof_ew_ufs", e, adversarial_instance("pof_ew_ufs", n, e)) for n in ns if n >= 3 for e in cfg.eps]
    elif cfg.mode == "ratio_2ifs":
        # x_1 on a grid, everyone else at 1
        for n in ns:
            if n >= 2:
                for g in range(cfg.grid):
                    x1 = Fraction(g, cfg.grid - 1)
                    out.append(("ratio_2ifs", None, Profile([x1] + [ONE] * (n - 1))))
    elif cfg.mode == "ratio_2ufs":
        # one group at 0 of size ceil(r n) for r on a grid, the rest at 1
        for n in ns:
            sizes = {math.ceil(Fraction(g, cfg.grid - 1) * n) for g in range(cfg.grid)}
            for k in sorted(s for s in sizes if 0 < s < n):
                out.append(("ratio_2ufs", None, Profile([ZERO] * k + [ONE] * (n - k))))
    return out


def _evaluate(task):
    mode, family, eps, locations = task
    rec = _EVALUATORS[mode](Profile(locations))
    if family != "random":
        rec = RatioRecord(**{**rec.__dict__, "family": family, "eps": eps})
    return rec


def _sort_key(rec: RatioRecord):
    # degenerate records last, then ratio descending, then instance
    return (rec.ratio is None, -(rec.ratio or 0), rec.instance.n, rec.instance.locations, rec.family)


def resolve_jobs(jobs: int = 0) -> int:
    """Explicit ``jobs`` wins; otherwise OFLP_JOBS; otherwise 1."""
    if jobs and jobs > 0:
        return jobs
    env = os.environ.get("OFLP_JOBS", "").strip()
    return max(1, int(env)) if env else 1


def sweep(config: SweepConfig) -> List[RatioRecord]:
    """Evaluate random profiles (plus the mode's adversarial families).

    Deterministic for a given config: instances are drawn from
    ``random.Random(seed)`` before any work is farmed out, and results are
    sorted by ratio descending.
    """
    rng = random.Random(config.seed)
    tasks = []
    for _ in range(config.samples):
        n = rng.randint(config.n_min, config.n_max)
        p = random_profile(rng, n, config.denominator, config.dup_prob)
        tasks.append((config.mode, "random", None, p.locations))
    if config.families:
        tasks += [(config.mode, fam, e, p.locations) for fam, e, p in _family_tasks(config)]
    jobs = resolve_jobs(config.jobs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        records = [_evaluate(t) for t in tasks]
    return sorted(records, key=_sort_key)


def max_ratio(records: Sequence[RatioRecord]) -> Optional[RatioRecord]:
    valid = [r for r in records if r.ratio is not None]
    return max(valid, key=lambda r: r.ratio) if valid else None
