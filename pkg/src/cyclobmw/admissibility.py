"""Weak admissibility, admissibility and u-admissibility of (omega, u) parameters.

A ``ParameterSet`` holds r, the cyclotomic roots u_1..u_r and a finite prefix
omega_0..omega_m.  Indices beyond the prefix are generated on demand from the
cyclotomic recurrence ``sum_j a_j omega_{j+a} = 0`` (a_r = 1), so every checker
can look arbitrarily far ahead; recurrence identities at generated indices
hold by construction and reports say so.

Each identity is a named ``family`` with an integer ``index``; checkers
evaluate every identity in a fixed order and name the first failure.
:func:`evaluate_identity` re-evaluates any single identity, which is how
witnesses are meant to be audited.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .errors import RangeError
from .ring import MultiPoly, is_zero
from .symfun import default_limit, eta, monic_product_coeffs, signed_elementary

WEAK_ODD = "weak-odd"
RECURRENCE = "recurrence"
ADMISSIBILITY = "admissibility"
U_ADMISSIBILITY = "u-admissibility"


@dataclass(frozen=True)
class ParameterSet:
    r: int
    u: tuple
    omega: tuple
    names: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be at least 1")
        if len(self.u) != self.r:
            raise ValueError(f"expected {self.r} values of u, got {len(self.u)}")

    # constructors

    @classmethod
    def numeric(cls, u: Sequence, omega: Sequence) -> ParameterSet:
        return cls(len(u), tuple(Fraction(x) for x in u), tuple(Fraction(w) for w in omega))

    @classmethod
    def u_admissible(cls, u: Sequence, length: int | None = None) -> ParameterSet:
        """Numeric parameters with omega_a = eta_a(u)."""
        u = tuple(Fraction(x) for x in u)
        r = len(u)
        etas = eta(r, length - 1 if length else r - 1)
        return cls(r, u, tuple(e.evaluate(u) for e in etas.eta))

    @classmethod
    def symbolic(cls, r: int, omega: Sequence | None = None) -> ParameterSet:
        """u_i are the indeterminates; omega defaults to eta."""
        if omega is None:
            omega = eta(r, r - 1).eta
        return cls(r, tuple(MultiPoly.variables(r)), tuple(omega), tuple(f"u{k + 1}" for k in range(r)))

    @classmethod
    def generic(cls, r: int) -> ParameterSet:
        """u_1..u_r and omega_0..omega_{r-1} all independent indeterminates."""
        gens = MultiPoly.variables(2 * r)
        names = tuple(f"u{k + 1}" for k in range(r)) + tuple(f"w{k}" for k in range(r))
        return cls(r, tuple(gens[:r]), tuple(gens[r:]), names)

    def with_omega(self, index: int, value) -> ParameterSet:
        omega = list(self.omega)
        while len(omega) <= index:
            omega.append(self.omega_at(len(omega)))
        omega[index] = value
        return replace(self, omega=tuple(omega), _cache={})

    # ground ring

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.u[0], MultiPoly)

    @property
    def nvars(self) -> int | None:
        return self.u[0].nvars if self.is_symbolic else None

    def one(self):
        return MultiPoly.one(self.nvars) if self.is_symbolic else Fraction(1)

    def zero(self):
        return MultiPoly.zero(self.nvars) if self.is_symbolic else Fraction(0)

    @property
    def a(self) -> list:
        """Signed elementary symmetric functions a_0..a_r evaluated at u."""
        if "a" not in self._cache:
            self._cache["a"] = monic_product_coeffs(self.u, self.one())
        return self._cache["a"]

    @property
    def stored(self) -> int:
        return len(self.omega)

    def omega_at(self, index: int):
        if index < 0:
            raise RangeError(f"omega index {index} is negative")
        if index < len(self.omega):
            return self.omega[index]
        if len(self.omega) < self.r:
            raise RangeError(
                f"omega_{index} requested but only {len(self.omega)} values supplied; "
                f"at least r = {self.r} are needed to extend by the recurrence"
            )
        ext = self._cache.setdefault("omega", list(self.omega))
        a = self.a
        while len(ext) <= index:
            m = len(ext) - self.r
            value = self.zero()
            for mu in range(self.r):
                value = value - a[mu] * ext[mu + m]
            ext.append(value)
        return ext[index]

    def omegas(self, count: int) -> list:
        return [self.omega_at(k) for k in range(count)]


@dataclass(frozen=True)
class IdentityCheck:
    family: str
    index: int
    lhs: object
    rhs: object

    @property
    def holds(self) -> bool:
        return is_zero(self.lhs - self.rhs)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: IdentityCheck | None
    checks: tuple[IdentityCheck, ...]
    checked_up_to: int
    note: str = ""


@dataclass(frozen=True)
class AdmissibilityReport:
    weak: Verdict
    admissible: Verdict
    u_admissible: Verdict
    checked_up_to: int
    solver_matches_eta: bool | None = None

    @property
    def all_true(self) -> bool:
        ok = self.weak.holds and self.admissible.holds and self.u_admissible.holds
        return ok and self.solver_matches_eta is not False


def _eta_at(p: ParameterSet, count: int) -> list:
    polys = eta(p.r, max(count - 1, 0)).eta
    return [e.evaluate(p.u) for e in polys[:count]]


def evaluate_identity(p: ParameterSet, family: str, index: int, _eta_values=None) -> IdentityCheck:
    """Evaluate one named identity; ``lhs == rhs`` iff it holds."""
    r, a, w = p.r, p.a, p.omega_at
    if family == WEAK_ODD:
        if index % 2 != 1:
            raise ValueError("the weak-admissibility recursion is only imposed for odd a")
        lhs = 2 * w(index)
        rhs = -w(index - 1)
        for b in range(1, index + 1):
            rhs = rhs + (-1) ** (b - 1) * w(b - 1) * w(index - b)
    elif family == RECURRENCE:
        lhs = p.zero()
        for j in range(r + 1):
            lhs = lhs + a[j] * w(j + index)
        rhs = p.zero()
    elif family == ADMISSIBILITY:
        if not 0 <= index <= r - 1:
            raise ValueError(f"admissibility relations are indexed by 0 <= j <= {r - 1}")
        j = index
        lhs = p.zero()
        for mu in range(r - j):
            lhs = lhs + w(mu) * a[mu + j + 1]
        rhs = p.zero()
        if (r - j) % 2 == 1:
            rhs = rhs - 2 * a[j]
        if j % 2 == 0:
            rhs = rhs + a[j + 1]
    elif family == U_ADMISSIBILITY:
        lhs = w(index)
        values = _eta_values if _eta_values is not None else _eta_at(p, index + 1)
        rhs = values[index]
    else:
        raise ValueError(f"unknown identity family {family!r}")
    return IdentityCheck(family, index, lhs, rhs)


def _generated_note(p: ParameterSet, highest: int) -> str:
    if highest < p.stored:
        return f"all omega indices used are supplied (m = {p.stored - 1})"
    return (
        f"omega_a for a > {p.stored - 1} generated by the recurrence; "
        f"recurrence identities with a + r > {p.stored - 1} hold by construction"
    )


def _verdict(checks: list[IdentityCheck], a_max: int, note: str) -> Verdict:
    witness = next((c for c in checks if not c.holds), None)
    return Verdict(witness is None, witness, tuple(checks), a_max, note)


def check_weak(p: ParameterSet, a_max: int | None = None) -> Verdict:
    """Odd-a recursion for omega, then the cyclotomic recurrence, for a <= a_max."""
    if a_max is None:
        a_max = default_limit(p.r)
    checks = [evaluate_identity(p, WEAK_ODD, a) for a in range(1, a_max + 1, 2)]
    checks += [evaluate_identity(p, RECURRENCE, a) for a in range(a_max + 1)]
    return _verdict(checks, a_max, _generated_note(p, a_max + p.r))


def check_admissible(p: ParameterSet, a_max: int | None = None) -> Verdict:
    """The r relations (j = 0..r-1) followed by the recurrence for a <= a_max."""
    if a_max is None:
        a_max = default_limit(p.r)
    checks = [evaluate_identity(p, ADMISSIBILITY, j) for j in range(p.r)]
    checks += [evaluate_identity(p, RECURRENCE, a) for a in range(a_max + 1)]
    return _verdict(checks, a_max, _generated_note(p, a_max + p.r))


def check_u_admissible(p: ParameterSet, a_max: int | None = None) -> Verdict:
    """omega_a == eta_a(u) for a <= a_max."""
    if a_max is None:
        a_max = default_limit(p.r)
    values = _eta_at(p, a_max + 1)
    checks = [evaluate_identity(p, U_ADMISSIBILITY, a, values) for a in range(a_max + 1)]
    return _verdict(checks, a_max, _generated_note(p, a_max))


def solve_universal(r: int, a_max: int | None = None, u: Sequence | None = None) -> list:
    """Solve the admissibility relations for omega_0..omega_{a_max}.

    Listing the relations from j = r-1 down to 0 gives a unitriangular system
    whose k-th row determines omega_k; omega_a for a >= r then follows from the
    recurrence.  Symbolic (MultiPoly) unless ``u`` is supplied.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if a_max is None:
        a_max = default_limit(r)
    if u is None:
        a = list(signed_elementary(r).a)
        zero = MultiPoly.zero(r)
    else:
        a = monic_product_coeffs([Fraction(x) for x in u], Fraction(1))
        zero = Fraction(0)
    omega: list = []
    for k in range(r):
        j = r - 1 - k
        rhs = zero
        if (r - j) % 2 == 1:
            rhs = rhs - 2 * a[j]
        if j % 2 == 0:
            rhs = rhs + a[j + 1]
        # row k: sum_{mu<=k} omega_mu a_{mu+j+1}, with a_{k+j+1} = a_r = 1
        for mu in range(k):
            rhs = rhs - omega[mu] * a[mu + j + 1]
        omega.append(rhs)
    while len(omega) <= a_max:
        m = len(omega) - r
        value = zero
        for mu in range(r):
            value = value - a[mu] * omega[mu + m]
        omega.append(value)
    return omega[: a_max + 1]


def assess(p: ParameterSet, a_max: int | None = None) -> AdmissibilityReport:
    if a_max is None:
        a_max = default_limit(p.r)
    return AdmissibilityReport(
        weak=check_weak(p, a_max),
        admissible=check_admissible(p, a_max),
        u_admissible=check_u_admissible(p, a_max),
        checked_up_to=a_max,
    )


def verify_equivalence(r: int, a_max: int | None = None) -> AdmissibilityReport:
    """Symbolic certificate that the solver output is admissible, u-admissible
    and equal to eta, and that omega = eta is weakly admissible."""
    if a_max is None:
        a_max = default_limit(r)
    universal = solve_universal(r, a_max)
    etas = eta(r, a_max).eta
    solved = ParameterSet.symbolic(r, universal)
    at_eta = ParameterSet.symbolic(r, etas)
    return AdmissibilityReport(
        weak=check_weak(at_eta, a_max),
        admissible=check_admissible(solved, a_max),
        u_admissible=check_u_admissible(solved, a_max),
        checked_up_to=a_max,
        solver_matches_eta=all(h == e for h, e in zip(universal, etas)),
    )


__all__ = [
    "ADMISSIBILITY",
    "AdmissibilityReport",
    "IdentityCheck",
    "ParameterSet",
    "RECURRENCE",
    "U_ADMISSIBILITY",
    "Verdict",
    "WEAK_ODD",
    "assess",
    "check_admissible",
    "check_u_admissible",
    "check_weak",
    "evaluate_identity",
    "solve_universal",
    "verify_equivalence",
]
