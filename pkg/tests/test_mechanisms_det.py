from fractions import Fraction as F

import pytest
from hypothesis import given

from oflp.core import Objective, Profile, egalitarian_welfare, utilitarian_welfare
from oflp.fairness import IFS2, PF2, UFS2, Axiom, HybridAxiom, HybridProfile, check, check_hybrid, feasible_region
from oflp.mechanisms_det import (
    InfeasibleError,
    merge_balls,
    opt_ew,
    opt_ew_fair,
    opt_uw,
    opt_uw_fair,
    solve_2pf,
    solve_hybrid,
)

from conftest import profiles
from oracles import grid_best

EW_FAMILY = Profile([F(1, 6) - F(1, 100)] + [F(2, 3) + F(1, 100)] * 2)
UFS_NOT_PF = Profile(["0.35"] * 7 + ["0.55"] * 3)


@pytest.mark.parametrize("locs, expected", [(["0.1"] * 2 + ["0.8"] * 5, 0), (["0.25", "0.75"], 0), (["0.1", "0.1"], 1)])
def test_opt_uw(locs, expected):
    assert opt_uw(Profile(locs)) == expected


def test_opt_ew(fig1):
    assert opt_ew(fig1) == F(9, 20)
    assert opt_ew(Profile(["0.5"])) == 0
    assert opt_ew(EW_FAMILY) == 1
    assert egalitarian_welfare(EW_FAMILY, 1) == F(1, 3) - F(1, 100)


def test_opt_uw_fair(fig1):
    assert opt_uw_fair(fig1, UFS2) == F(17, 70)
    assert utilitarian_welfare(fig1, F(17, 70)) == F(43, 14)
    assert opt_uw_fair(Profile(["0.2", "0.2"]), IFS2) == 1
    assert opt_uw_fair(Profile(["0.5"]), UFS2) == 0


def test_opt_ew_fair():
    y = opt_ew_fair(EW_FAMILY, UFS2)
    assert y == F(1, 3) + F(1, 100)
    assert egalitarian_welfare(EW_FAMILY, y) == F(1, 6) + F(2, 100)
    assert opt_ew_fair(Profile(["0.1", "0.8"]), IFS2) == F(9, 20)
    assert opt_ew_fair(Profile(["0.5"]), IFS2) == 0


def test_infeasible_region_raises():
    with pytest.raises(InfeasibleError):
        opt_uw_fair(Profile(["0.25", "0.75"]), Axiom.ifs("1.9"))


def test_solve_2pf_examples():
    assert solve_2pf(UFS_NOT_PF) == F(17, 20)
    assert merge_balls(UFS_NOT_PF) == [(F(7, 20), F(1, 2))]
    assert solve_2pf(Profile(["0.5"] * 4)) == 0
    # 0 sits on the edge of the open ball (0, 1/2), so leftmost beats the gap point
    assert solve_2pf(Profile(["0.25", "0.75"])) == 0
    assert check(Profile(["0.25", "0.75"]), F(1, 2), PF2)


def test_solve_hybrid_examples():
    assert solve_hybrid(HybridProfile([0, 0], [0, 0])) == F(1, 4)
    assert solve_hybrid(HybridProfile(["0.5"], ["0.5"])) == 0
    assert solve_hybrid(HybridProfile([], ["0.3", "0.6"])) == 0


@given(profiles(max_n=12))
def test_opt_uw_rule(p):
    y = opt_uw(p)
    assert y in (0, 1)
    assert (y == 0) == (2 * sum(p.locations) >= p.n)


@given(profiles(max_n=12))
def test_fair_outputs_pass_checker(p):
    for a in (IFS2, UFS2):
        assert check(p, opt_uw_fair(p, a), a)
        assert check(p, opt_ew_fair(p, a), a)
    assert check(p, solve_2pf(p), PF2)


@given(profiles(max_n=12))
def test_leftmost_tie_break(p):
    region = feasible_region(p, UFS2)
    y = opt_uw_fair(p, UFS2)
    best = utilitarian_welfare(p, y)
    assert all(utilitarian_welfare(p, e) < best for e in region.endpoints() if e < y)


@given(profiles(max_n=12))
def test_pof_caps(p):
    uw = utilitarian_welfare(p, opt_uw(p))
    for a in (IFS2, UFS2):
        assert uw <= 2 * utilitarian_welfare(p, opt_uw_fair(p, a))
    assert check(p, opt_ew(p), IFS2)
    if p.n > 1:
        assert egalitarian_welfare(p, opt_ew(p)) <= (p.n - 1) * egalitarian_welfare(p, opt_ew_fair(p, UFS2))


@given(profiles(max_n=8, denominator=100))
def test_matches_grid_oracle(p):
    for kind, a in (("ifs", IFS2), ("ufs", UFS2)):
        assert utilitarian_welfare(p, opt_uw_fair(p, a)) >= grid_best(p, kind, Objective.UW)
        assert egalitarian_welfare(p, opt_ew_fair(p, a)) >= grid_best(p, kind, Objective.EW)


hybrids = profiles(max_n=6, denominator=20)


@given(hybrids, hybrids)
def test_solve_hybrid_is_feasible(c, o):
    h = HybridProfile(c.locations, o.locations)
    assert check_hybrid(h, solve_hybrid(h), HybridAxiom.HUFS)
