"""Lotteries over the two endpoints.

Randomizing lets every agent expect a fair distance while giving up far
less welfare than any single fair location.

    python demos/randomized.py
"""
from oflp import (
    IFS2,
    UFS2,
    Profile,
    check_expectation,
    opt_uw,
    utilitarian_welfare,
)
from oflp.core import expected_utilitarian_welfare
from oflp.analysis import RandMech, approx_ratio
from oflp.mechanisms_rand import RANDOMIZED

profiles = {
    "tight 2-IFS": Profile([0, 1, 1]),
    "tight 2-UFS": Profile([0, 1, 1, 1]),
    "two groups": Profile(["0.1"] * 2 + ["0.8"] * 5),
}

for name, p in profiles.items():
    best = utilitarian_welfare(p, opt_uw(p))
    print(f"{name}: {p}  best UW {best}")
    for key, mech in RANDOMIZED.items():
        lot = mech(p)
        fair = [str(a) for a in (IFS2, UFS2) if check_expectation(p, lot, a)]
        ratio = approx_ratio(p, RandMech(key)).ratio
        print(f"  {key:<11} {lot}  E[UW] {expected_utilitarian_welfare(lot, p)}  "
              f"ratio {ratio}  fair in expectation: {', '.join(fair) or '-'}")
