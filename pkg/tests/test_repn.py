from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclobmw.admissibility import ParameterSet
from cyclobmw.errors import SingularityError
from cyclobmw.linalg import bareiss_solve, mat_mul, mat_sub
from cyclobmw.repn import (
    build_module,
    eigen_split,
    module_rank_of_e,
    solve_kappa,
    verify_module_relations,
)
from cyclobmw.ring import MultiPoly
from cyclobmw.symfun import gamma


def test_r1_matrices():
    u, = MultiPoly.variables(1)
    w0 = MultiPoly.variable(2, 1)
    p = ParameterSet(1, (MultiPoly.variable(2, 0),), (w0,))
    m = build_module(p)
    assert m.X1 == [[p.u[0]]]
    assert m.E == [[w0]]
    assert m.S == [[1]]
    assert m.X2 == [[-p.u[0]]]


def test_r1_skein_forces_omega0():
    m = build_module(ParameterSet.symbolic(1))
    u, = MultiPoly.variables(1)
    lhs = mat_sub(mat_mul(m.X1, m.S), mat_mul(m.S, m.X2))
    assert lhs == [[2 * u]]
    assert m.E[0][0] - 1 == 2 * u


def test_r2_e_first_row():
    m = build_module(ParameterSet.numeric((2, 3), (10, 45)))
    assert m.E == [[10, 45], [0, 0]]


@pytest.mark.parametrize("r", [1, 2, 3])
def test_symbolic_module_relations(r):
    rep = verify_module_relations(build_module(ParameterSet.symbolic(r)))
    assert rep.all_pass, rep.failures()


def test_numeric_module_relations():
    assert verify_module_relations(build_module(ParameterSet.numeric((2, 3), (10, 45, 165)))).all_pass


def test_perturbed_module_fails_with_name():
    rep = verify_module_relations(build_module(ParameterSet.numeric((2, 3), (10, 44))))
    assert not rep.all_pass
    assert any("S" in c.relation or "E X1" in c.relation for c in rep.failures())
    assert all(c.witness is not None for c in rep.failures())


@pytest.mark.parametrize("r", [1, 2, 3])
def test_single_perturbation_breaks_module(r):
    base = ParameterSet.symbolic(r)
    for k in range(r):
        bad = base.with_omega(k, base.omega_at(k) + 1)
        assert not verify_module_relations(build_module(bad)).all_pass, k


def test_rank_of_e():
    assert module_rank_of_e(build_module(ParameterSet.u_admissible((2, 3, 5)))) == 1


def test_eigen_r1():
    p = ParameterSet.u_admissible((Fraction(3),))
    data = eigen_split(build_module(p))
    assert data.projectors[0] == [[1]]
    assert data.vectors[0] == [1]
    assert data.kappa == (p.omega_at(0),)


def test_eigen_r2_numeric():
    data = eigen_split(build_module(ParameterSet.u_admissible((2, 3))))
    assert data.kappa == (-15, 25)
    assert data.all_pass


@pytest.mark.parametrize("r", [1, 2, 3])
def test_eigen_symbolic(r):
    data = eigen_split(build_module(ParameterSet.symbolic(r)))
    assert data.all_pass, [c for c in data.checks if not c.holds]
    total = [sum((m[k] for m in data.vectors), 0) for k in range(r)]
    assert total[0] == 1 and all(x == 0 for x in total[1:])
    assert tuple(data.kappa) == tuple(gamma(r).gamma)


def test_eigen_c_formula_numeric():
    u = (Fraction(2), Fraction(3), Fraction(7))
    data = eigen_split(build_module(ParameterSet.u_admissible(u)))
    for i in range(3):
        for j in range(3):
            assert data.c[i][j] * (u[i] + u[j]) == data.kappa[j] - (1 if i == j else 0)


@pytest.mark.parametrize("u", [(2, 2), (1, -1), (0, 3)])
def test_eigen_singular(u):
    with pytest.raises(SingularityError):
        eigen_split(build_module(ParameterSet.u_admissible(u)))


def test_solve_kappa_small():
    u, = (Fraction(5),)
    assert solve_kappa([u]) == [2 * u + 1]
    assert solve_kappa([2, 3]) == [-15, 25]


def test_solve_kappa_rejects_zero_and_collisions():
    for bad in ([0, 2], [2, 2], [1, -1]):
        with pytest.raises(SingularityError):
            solve_kappa(bad)


nonzero = st.fractions(min_value=-9, max_value=9, max_denominator=4).filter(lambda x: x != 0)


@given(st.lists(nonzero, min_size=1, max_size=4, unique=True))
@settings(max_examples=60, deadline=None)
def test_solve_kappa_is_gamma(u):
    if any(a + b == 0 for a in u for b in u):
        with pytest.raises(SingularityError):
            solve_kappa(u)
        return
    assert tuple(solve_kappa(u)) == gamma(len(u), u).gamma


@given(
    st.lists(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=3, max_size=3),
             min_size=3, max_size=3),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=3, max_size=3),
)
@settings(max_examples=60, deadline=None)
def test_bareiss_matches_sympy(a, b):
    m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a])
    if m.det() == 0:
        with pytest.raises(SingularityError):
            bareiss_solve(a, b)
        return
    rhs = sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in b])
    expected = m.LUsolve(rhs)
    got = bareiss_solve(a, b)
    assert [sympy.Rational(x.numerator, x.denominator) for x in got] == list(expected)
