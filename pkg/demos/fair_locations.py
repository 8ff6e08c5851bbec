"""Where a fair obnoxious facility may go, and what fairness costs.

Two agents live at 0.1 and five at 0.8.  Unconstrained welfare pushes the
facility onto the small group; the fairness axioms keep it away.

    python demos/fair_locations.py
"""
from fractions import Fraction

from oflp import (
    IFS2,
    PF2,
    UFS2,
    Objective,
    Profile,
    egalitarian_welfare,
    feasible_region,
    opt_ew,
    opt_uw,
    opt_uw_fair,
    solve_2pf,
    utilitarian_welfare,
)
from oflp.analysis import pof

p = Profile(["0.1"] * 2 + ["0.8"] * 5)

y = opt_uw(p)
print(f"utilitarian optimum  y = {y}, UW = {utilitarian_welfare(p, y)}")
y = opt_ew(p)
print(f"egalitarian optimum  y = {y}, EW = {egalitarian_welfare(p, y)}")

for a in (IFS2, UFS2):
    region = feasible_region(p, a)
    y = opt_uw_fair(p, a)
    print(f"{a}: region {region}, best y = {y}, UW = {utilitarian_welfare(p, y)}")
    print(f"    price of fairness {pof(p, a, Objective.UW).ratio}")

# Group fairness can hold while a window of agents is still crowded.
q = Profile(["0.35"] * 7 + ["0.55"] * 3)
y = solve_2pf(q)
print(f"\nseven at 0.35, three at 0.55: 2-PF location {y}")
print(f"  distance from 0.55 is {y - Fraction(11, 20)}")
print(f"  PF region {feasible_region(q, PF2)}")
