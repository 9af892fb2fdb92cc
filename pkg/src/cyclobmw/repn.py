"""The r-dimensional module M = span{v0, x1 v0, ..., x1^(r-1) v0}.

Matrices act on coordinates in that basis:

* X1 is the companion matrix of prod (x - u_i);
* X2 = -X1, since x2 x1^j v0 = -x1^(j+1) v0;
* E has image F v0 with E x1^j v0 = omega_j v0;
* S x1^a v0 = (-1)^a x1^a v0 + sum_{b=1}^a (-1)^(b-1) omega_{a-b} x1^(b-1) v0
  - [a odd] x1^(a-1) v0.

``eigen_split`` diagonalises X1 with Lagrange projectors and reads off the
coefficients kappa_j (E m_j = kappa_j v0) and c_ij (S m_j = sum_i c_ij m_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .admissibility import ParameterSet
from .errors import SingularityError
from .linalg import (
    Matrix,
    bareiss_solve,
    first_difference,
    identity,
    mat_add,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    rank,
    zeros,
)
from .ring import MultiPoly, RatFunc, is_zero
from .symfun import gamma


@dataclass(frozen=True)
class ModuleM:
    r: int
    params: ParameterSet
    X1: Matrix
    X2: Matrix
    S: Matrix
    E: Matrix


def build_module(params: ParameterSet) -> ModuleM:
    r = params.r
    one = params.one()
    a = params.a
    w = params.omegas(r)
    x1 = zeros(r)
    for j in range(r - 1):
        x1[j + 1][j] = one
    for j in range(r):
        x1[j][r - 1] = -a[j]
    x2 = mat_scale(-1, x1)
    e = zeros(r)
    for j in range(r):
        e[0][j] = w[j]
    s = zeros(r)
    for col in range(r):
        s[col][col] = s[col][col] + (-1) ** col * one
        for b in range(1, col + 1):
            s[b - 1][col] = s[b - 1][col] + (-1) ** (b - 1) * w[col - b]
        if col % 2 == 1:
            s[col - 1][col] = s[col - 1][col] - one
    return ModuleM(r, params, x1, x2, s, e)


@dataclass(frozen=True)
class MatrixCheck:
    relation: str
    holds: bool
    witness: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "status": "pass" if self.holds else "fail",
            "witness": None if self.witness is None else {"row": self.witness[0], "col": self.witness[1]},
        }


@dataclass(frozen=True)
class ModuleReport:
    checks: tuple[MatrixCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[MatrixCheck]:
        return [c for c in self.checks if not c.holds]


def _check(name: str, lhs: Matrix, rhs: Matrix) -> MatrixCheck:
    diff = first_difference(lhs, rhs)
    return MatrixCheck(name, diff is None, diff)


def verify_module_relations(m: ModuleM, unwrap_max: int | None = None) -> ModuleReport:
    p = m.params
    one = p.one()
    eye = identity(m.r, one)
    zero = zeros(m.r)
    X1, X2, S, E = m.X1, m.X2, m.S, m.E
    if unwrap_max is None:
        unwrap_max = 2 * m.r - 1
    checks = [
        _check("S^2 = I", mat_mul(S, S), eye),
        _check("E^2 = w0 E", mat_mul(E, E), mat_scale(p.omega_at(0), E)),
        _check("(X1 + X2) E = 0", mat_mul(mat_add(X1, X2), E), zero),
        _check("E (X1 + X2) = 0", mat_mul(E, mat_add(X1, X2)), zero),
        _check("X1 S - S X2 = E - I", mat_sub(mat_mul(X1, S), mat_mul(S, X2)), mat_sub(E, eye)),
        _check("S X1 - X2 S = E - I", mat_sub(mat_mul(S, X1), mat_mul(X2, S)), mat_sub(E, eye)),
        _check("S E = E", mat_mul(S, E), E),
        _check("E S = E", mat_mul(E, S), E),
        _check("X1 X2 = X2 X1", mat_mul(X1, X2), mat_mul(X2, X1)),
    ]
    power = eye
    for a in range(unwrap_max + 1):
        checks.append(_check(f"E X1^{a} E = w{a} E", mat_mul(E, mat_mul(power, E)), mat_scale(p.omega_at(a), E)))
        power = mat_mul(power, X1)
    cyclo = eye
    for u in p.u:
        cyclo = mat_mul(cyclo, mat_sub(X1, mat_scale(u, eye)))
    checks.append(_check("prod (X1 - u_i I) = 0", cyclo, zero))
    return ModuleReport(tuple(checks))


def module_rank_of_e(m: ModuleM) -> int | None:
    """Matrix rank of E; None for symbolic entries (rank is then generic)."""
    if m.params.is_symbolic:
        return 1 if any(not is_zero(x) for x in m.E[0]) else 0
    return rank(m.E)


@dataclass(frozen=True)
class EigenData:
    projectors: tuple
    vectors: tuple
    kappa: tuple
    c: tuple
    checks: tuple[MatrixCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(ch.holds for ch in self.checks)


def _field(params: ParameterSet):
    """Division into the fraction field of the ground ring."""
    if params.is_symbolic:
        n = params.nvars

        def lift(x):
            return RatFunc.lift(x, n)
    else:

        def lift(x):
            return Fraction(x)

    return lift


def _require_regular(u: Sequence, need_sums: bool) -> None:
    r = len(u)
    for i in range(r):
        for j in range(r):
            if i < j and is_zero(u[i] - u[j]):
                raise SingularityError(f"u_{i + 1} = u_{j + 1}: eigenvalues are not distinct")
            if need_sums and i <= j and is_zero(u[i] + u[j]):
                raise SingularityError(f"u_{i + 1} + u_{j + 1} = 0")


def eigen_split(m: ModuleM, params: ParameterSet | None = None) -> EigenData:
    params = params or m.params
    r = m.r
    u = params.u
    _require_regular(u, need_sums=True)
    F = _field(params)
    one = F(params.one())
    eye = identity(r, params.one())
    X1 = [[F(x) for x in row] for row in m.X1]
    S = [[F(x) for x in row] for row in m.S]
    E = [[F(x) for x in row] for row in m.E]

    projectors = []
    for i in range(r):
        num = eye
        den = params.one()
        for j in range(r):
            if j != i:
                num = mat_mul(num, mat_sub(m.X1, mat_scale(u[j], eye)))
                den = den * (u[i] - u[j])
        inv = one / F(den)
        projectors.append([[F(x) * inv for x in row] for row in num])
    vectors = [[row[0] for row in p_i] for p_i in projectors]
    kappa = [mat_vec(E, m_j)[0] for m_j in vectors]
    s_m = [mat_vec(S, m_j) for m_j in vectors]
    c = [
        [mat_vec(projectors[i], s_m[j])[r - 1] / vectors[i][r - 1] for j in range(r)]
        for i in range(r)
    ]

    checks = []
    for i, p_i in enumerate(projectors):
        checks.append(_check(f"p_{i + 1}^2 = p_{i + 1}", mat_mul(p_i, p_i), p_i))
    total = zeros(r)
    for p_i in projectors:
        total = mat_add(total, p_i)
    checks.append(_check("sum p_i = I", total, [[F(x) for x in row] for row in eye]))
    for i, m_i in enumerate(vectors):
        checks.append(_check(f"X1 m_{i + 1} = u_{i + 1} m_{i + 1}", [mat_vec(X1, m_i)], [[F(u[i]) * x for x in m_i]]))
    v0 = [one] + [F(0)] * (r - 1)
    summed = [sum((m_i[k] for m_i in vectors), F(0)) for k in range(r)]
    checks.append(_check("sum m_i = v0", [summed], [v0]))
    for j, m_j in enumerate(vectors):
        checks.append(_check(f"E m_{j + 1} = kappa_{j + 1} v0", [mat_vec(E, m_j)], [[kappa[j] * x for x in v0]]))
        rebuilt = [sum((c[i][j] * vectors[i][k] for i in range(r)), F(0)) for k in range(r)]
        checks.append(_check(f"S m_{j + 1} = sum_i c_i{j + 1} m_i", [s_m[j]], [rebuilt]))
    lhs = [[c[i][j] * F(u[i] + u[j]) for j in range(r)] for i in range(r)]
    rhs = [[kappa[j] - (one if i == j else F(0)) for j in range(r)] for i in range(r)]
    checks.append(_check("c_ij (u_i + u_j) = kappa_j - delta_ij", lhs, rhs))
    if params.is_symbolic and params.nvars == r and all(
        x == MultiPoly.variable(r, k) for k, x in enumerate(u)
    ):
        closed = gamma(r).gamma
    elif not params.is_symbolic:
        closed = gamma(r, u).gamma
    else:
        closed = None
    if closed is not None:
        checks.append(_check("kappa = gamma", [list(kappa)], [[F(g) for g in closed]]))
    return EigenData(tuple(projectors), tuple(vectors), tuple(kappa), tuple(map(tuple, c)), tuple(checks))


def solve_kappa(u: Sequence) -> list[Fraction]:
    """Solve sum_k kappa_k/(u_j + u_k) = 1 + 1/(2 u_j), j = 1..r, exactly."""
    u = [Fraction(x) for x in u]
    r = len(u)
    for i in range(r):
        if u[i] == 0:
            raise SingularityError(f"u_{i + 1} = 0: right-hand side 1 + 1/(2u) is undefined")
    _require_regular(u, need_sums=True)
    matrix = [[1 / (u[j] + u[k]) for k in range(r)] for j in range(r)]
    rhs = [1 + 1 / (2 * u[j]) for j in range(r)]
    return bareiss_solve(matrix, rhs)
