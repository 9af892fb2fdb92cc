import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclobmw.admissibility import (
    ADMISSIBILITY,
    RECURRENCE,
    U_ADMISSIBILITY,
    WEAK_ODD,
    ParameterSet,
    assess,
    check_admissible,
    check_u_admissible,
    check_weak,
    evaluate_identity,
    solve_universal,
    verify_equivalence,
)
from cyclobmw.errors import RangeError
from cyclobmw.ring import MultiPoly
from cyclobmw.symfun import eta


def test_weak_r1_symbolic():
    u, = MultiPoly.variables(1)
    p = ParameterSet.symbolic(1, [2 * u + 1, 2 * u**2 + u])
    check = evaluate_identity(p, WEAK_ODD, 1)
    assert check.lhs == 2 * (2 * u**2 + u)
    assert check.rhs == (2 * u + 1) ** 2 - (2 * u + 1)
    assert check_weak(p).holds


def test_weak_numeric_23():
    assert check_weak(ParameterSet.numeric((2, 3), (10, 45, 165))).holds


def test_weak_numeric_perturbed():
    v = check_weak(ParameterSet.numeric((2, 3), (11, 45, 165)))
    assert not v.holds
    assert (v.witness.family, v.witness.index) == (WEAK_ODD, 1)
    assert (v.witness.lhs, v.witness.rhs) == (90, 110)


def test_admissible_r1():
    u, = MultiPoly.variables(1)
    check = evaluate_identity(ParameterSet.symbolic(1, [2 * u + 1]), ADMISSIBILITY, 0)
    assert check.holds
    # omega_0 + 2 a_0 - 1 = 0 with a_0 = -u
    p = ParameterSet.symbolic(1, [2 * u])
    assert not check_admissible(p).holds


def test_admissible_r2_symbolic_j1():
    u1, u2 = MultiPoly.variables(2)
    p = ParameterSet.symbolic(2)
    check = evaluate_identity(p, ADMISSIBILITY, 1)
    assert check.lhs == p.omega_at(0)
    assert check.rhs == 2 * (u1 + u2)
    assert check_admissible(p).holds


def test_admissible_r2_numeric_fails_j0():
    v = check_admissible(ParameterSet.numeric((2, 3), (10, 44)))
    assert not v.holds
    assert (v.witness.family, v.witness.index) == (ADMISSIBILITY, 0)


def test_u_admissible_examples():
    p = ParameterSet.numeric((2, 3), (10, 45, 165))
    assert check_u_admissible(p, 2).holds
    assert evaluate_identity(p, U_ADMISSIBILITY, 2).rhs == 165
    u, = MultiPoly.variables(1)
    v = check_u_admissible(ParameterSet.symbolic(1, [2 * u]), 0)
    assert not v.holds and v.witness.index == 0


def test_solve_universal_small():
    u, = MultiPoly.variables(1)
    assert solve_universal(1, 0) == [2 * u + 1]
    u1, u2 = MultiPoly.variables(2)
    h = solve_universal(2, 1)
    assert h[0] == 2 * (u1 + u2)
    assert h[1] == 2 * (u1 + u2) ** 2 - (u1 + u2)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_solve_universal_is_eta(r):
    limit = 2 * r
    assert solve_universal(r, limit) == list(eta(r, limit).eta)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_solution_substitutes_back(r):
    p = ParameterSet.symbolic(r, solve_universal(r))
    for j in range(r):
        check = evaluate_identity(p, ADMISSIBILITY, j)
        assert (check.lhs - check.rhs).is_zero()


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_solution_symmetric(r):
    for h in solve_universal(r, r):
        for i in range(r):
            for j in range(i + 1, r):
                assert h.swap(i, j) == h


def test_numeric_solve_matches_eta_at_point():
    assert solve_universal(2, 2, (2, 3)) == [10, 45, 165]


@pytest.mark.parametrize("r", [1, 2, 3])
def test_verify_equivalence(r):
    rep = verify_equivalence(r)
    assert rep.all_true
    assert rep.solver_matches_eta


def test_offset_rejected_by_both():
    p = ParameterSet.symbolic(2)
    bad = p.with_omega(0, p.omega_at(0) + 1)
    rep = assess(bad)
    assert not rep.admissible.holds and not rep.u_admissible.holds
    assert rep.admissible.witness.family == ADMISSIBILITY
    assert rep.u_admissible.witness.index == 0


def test_range_error_on_short_prefix():
    p = ParameterSet.numeric((2, 3), (10,))
    with pytest.raises(RangeError):
        check_weak(p)


def test_recurrence_extension():
    p = ParameterSet.numeric((2, 3), (10, 45))
    assert p.omegas(4) == [10, 45, 165, 555]
    assert all(evaluate_identity(p, RECURRENCE, k).holds for k in range(5))
    assert "generated by the recurrence" in check_weak(p).note


def test_supplied_prefix_is_checked_not_regenerated():
    p = ParameterSet.numeric((2, 3), (10, 45, 166))
    v = check_admissible(p, 0)
    assert not v.holds and v.witness.family == RECURRENCE and v.witness.index == 0


points = st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=3), min_size=1, max_size=3)


@given(points)
@settings(max_examples=30, deadline=None)
def test_u_admissible_point_passes_everything(u):
    p = ParameterSet.u_admissible(u)
    rep = assess(p)
    assert rep.u_admissible.holds and rep.admissible.holds and rep.weak.holds


@given(points, st.integers(0, 2), st.fractions(min_value=-3, max_value=3, max_denominator=2))
@settings(max_examples=40, deadline=None)
def test_implications_and_witness_soundness(u, index, delta):
    p = ParameterSet.u_admissible(u, len(u) + 3)
    index = min(index, len(u) + 2)
    p = p.with_omega(index, p.omega_at(index) + delta)
    rep = assess(p, 2 * len(u) + 2)
    if rep.u_admissible.holds:
        assert rep.admissible.holds
    if rep.admissible.holds:
        assert rep.weak.holds
    assert rep.admissible.holds == rep.u_admissible.holds
    for verdict in (rep.weak, rep.admissible, rep.u_admissible):
        if not verdict.holds:
            w = verdict.witness
            again = evaluate_identity(p, w.family, w.index)
            assert not again.holds
            assert (again.lhs, again.rhs) == (w.lhs, w.rhs)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_weak_odd_identities_for_eta(r):
    p = ParameterSet.symbolic(r, eta(r, 6).eta)
    for a in (1, 3, 5):
        assert evaluate_identity(p, WEAK_ODD, a).holds


def test_even_index_weak_rejected():
    with pytest.raises(ValueError):
        evaluate_identity(ParameterSet.symbolic(1), WEAK_ODD, 2)


def test_degenerate_u_still_checkable():
    # repeated roots and u_i + u_j = 0 are fine for the polynomial conditions
    for u in [(2, 2), (1, -1), (0, 0)]:
        p = ParameterSet.u_admissible(u)
        assert assess(p).admissible.holds
