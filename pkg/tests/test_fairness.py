from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from oflp.core import Lottery, Profile
from oflp.fairness import (
    IFS2,
    PF2,
    UFS2,
    Axiom,
    HybridAxiom,
    HybridProfile,
    UnsupportedAxiomError,
    check,
    check_expectation,
    check_hybrid,
    feasible_region,
    forbidden_balls,
    hybrid_feasible_region,
    margins,
)

from conftest import lattice_points, profiles

UFS_NOT_PF = Profile(["0.35"] * 7 + ["0.55"] * 3)


def test_check_examples(fig1):
    assert check(fig1, "0.3", UFS2)
    assert check(UFS_NOT_PF, "0.71", UFS2)
    assert not check(UFS_NOT_PF, "0.71", PF2)
    assert check(Profile(["0.25", "0.75"]), "0.5", IFS2)


def test_ufs_not_pf_failing_window():
    bad = [c for c in margins(UFS_NOT_PF, "0.71", PF2) if not c.ok]
    assert {c.label for c in bad} == {"window[7/20,11/20]"}
    assert {(c.distance, c.bound) for c in bad} == {(F(4, 25), F(3, 10))}


def test_feasible_region_examples(fig1):
    assert feasible_region(fig1, UFS2).intervals == ((F(17, 70), F(31, 70)),)
    assert feasible_region(Profile(["0.25", "0.75"]), Axiom.ifs("1.9")).is_empty()
    assert feasible_region(Profile(["0.5"]), UFS2).intervals == ((0, 0), (1, 1))


def test_alpha_must_be_positive():
    with pytest.raises(ValueError):
        Axiom.ifs(0)


def test_check_expectation_examples():
    half = Lottery.endpoints(F(1, 2))
    assert check_expectation(Profile(["0.3", "0.7"]), half, UFS2)
    assert check_expectation(Profile([0, 1, 1]), Lottery({0: F(5, 6), 1: F(1, 6)}), IFS2)
    assert not check_expectation(Profile([0, 0]), Lottery.point(0), IFS2)
    with pytest.raises(UnsupportedAxiomError):
        check_expectation(Profile([0]), half, PF2)


def test_hybrid_region_examples():
    assert hybrid_feasible_region(HybridProfile([0, 0], [0, 0]), HybridAxiom.HUFS).intervals == ((F(1, 4), F(1, 2)),)
    assert hybrid_feasible_region(HybridProfile(["0.5"], ["0.5"]), HybridAxiom.HUFS).intervals == (
        (0, F(1, 4)),
        (F(3, 4), 1),
    )
    assert hybrid_feasible_region(HybridProfile([], ["0.5"]), HybridAxiom.HUFS).intervals == ((0, 0), (1, 1))


def test_check_hybrid_examples():
    h = HybridProfile(["0.5"], ["0.5"])
    assert check_hybrid(h, 0, HybridAxiom.HUFS)
    assert not check_hybrid(h, "0.4", HybridAxiom.HUFS)
    lone = HybridProfile(["0.2"], [])
    assert check_hybrid(lone, "0.2", HybridAxiom.HUFS)
    assert not check_hybrid(lone, "0.3", HybridAxiom.HUFS)


def test_hybrid_profile_needs_an_agent():
    with pytest.raises(ValueError):
        HybridProfile([], [])


axioms = st.sampled_from([IFS2, UFS2, PF2, Axiom.ifs("1.5"), Axiom.ufs(3), Axiom.pf("2.5")])


@given(profiles(max_n=8), lattice_points(), axioms)
def test_region_checker_duality(p, y, a):
    assert (y in feasible_region(p, a)) == check(p, y, a)


@given(profiles(max_n=8), axioms)
def test_region_endpoints_pass_the_checker(p, a):
    for e in feasible_region(p, a).endpoints():
        assert check(p, e, a)


@given(profiles(max_n=20))
def test_existence_at_alpha_two(p):
    for a in (IFS2, UFS2, PF2):
        assert feasible_region(p, a)


@given(profiles(max_n=10), lattice_points())
def test_implication_chain(p, y):
    if check(p, y, PF2):
        assert check(p, y, UFS2)
    if check(p, y, UFS2):
        assert check(p, y, IFS2)


@given(profiles(max_n=10))
def test_interior_endpoints_sit_on_ball_boundaries(p):
    region = feasible_region(p, UFS2)
    edges = {b for hole in forbidden_balls(p, UFS2) for b in hole}
    assert region.complement_length() <= 1
    for e in region.endpoints():
        assert e in (0, 1) or e in edges


hybrids = st.tuples(
    st.lists(st.integers(0, 20), max_size=6), st.lists(st.integers(0, 20), max_size=6)
).filter(lambda t: t[0] or t[1]).map(
    lambda t: HybridProfile([F(k, 20) for k in t[0]], [F(k, 20) for k in t[1]])
)


@given(hybrids)
def test_hybrid_ufs_always_feasible(h):
    assert hybrid_feasible_region(h, HybridAxiom.HUFS)


@given(hybrids, lattice_points(100), st.sampled_from(list(HybridAxiom)))
def test_hybrid_checker_duality(h, y, a):
    assert (y in hybrid_feasible_region(h, a)) == check_hybrid(h, y, a)
