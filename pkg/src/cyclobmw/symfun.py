"""Symmetric functions in u_1..u_r used by the admissibility theory.

* signed elementary symmetric functions ``a_j``: prod_i (x - u_i) = sum_j a_j x^j
* Schur q-functions ``q_a``: coefficients of prod_i (1 + u_i t) / (1 - u_i t)
* ``eta_a = q_{a+1} + (1/2)(-1)^(r-1) q_a + (1/2) delta_{a,0}``
* ``gamma_i = (2 u_i - (-1)^r) prod_{j != i} (u_i + u_j) / (u_i - u_j)``

Everything is exact.  Variables are ``MultiPoly.variables(r)``; a numeric
point can be substituted afterwards, or passed directly to :func:`gamma`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SingularityError
from .ring import MultiPoly, RatFunc

HALF = Fraction(1, 2)


def default_limit(r: int) -> int:
    return 2 * r + 2


@dataclass(frozen=True)
class SignedElemSeq:
    r: int
    a: tuple[MultiPoly, ...]

    def __getitem__(self, j: int) -> MultiPoly:
        return self.a[j]


@dataclass(frozen=True)
class SchurQSeq:
    r: int
    limit: int
    q: tuple[MultiPoly, ...]

    def __getitem__(self, a: int) -> MultiPoly:
        return self.q[a]


@dataclass(frozen=True)
class EtaSeq:
    r: int
    limit: int
    eta: tuple[MultiPoly, ...]

    def __getitem__(self, a: int) -> MultiPoly:
        return self.eta[a]


@dataclass(frozen=True)
class GammaSeq:
    """gamma_1..gamma_r, either symbolic (RatFunc) or at a numeric point (Fraction)."""

    r: int
    gamma: tuple
    point: tuple[Fraction, ...] | None = None

    def __getitem__(self, i: int):
        return self.gamma[i]


def _check_r(r: int) -> None:
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")


def monic_product_coeffs(roots: Sequence, one=1) -> list:
    """Coefficients c_0..c_n of prod (x - root), lowest degree first."""
    coeffs = [one]
    for root in roots:
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - root * c
        coeffs = nxt
    return coeffs


def signed_elementary(r: int) -> SignedElemSeq:
    _check_r(r)
    us = MultiPoly.variables(r)
    coeffs = monic_product_coeffs(us, MultiPoly.one(r))
    return SignedElemSeq(r, tuple(c if isinstance(c, MultiPoly) else MultiPoly.constant(r, c) for c in coeffs))


def _series_mul(lhs: list[MultiPoly], rhs: list[MultiPoly], limit: int) -> list[MultiPoly]:
    out = []
    for n in range(limit + 1):
        acc = lhs[0] * rhs[n]
        for k in range(1, n + 1):
            acc = acc + lhs[k] * rhs[n - k]
        out.append(acc)
    return out


def schur_q(r: int, limit: int | None = None) -> SchurQSeq:
    """Truncated expansion of prod_i (1 + u_i t)/(1 - u_i t) up to t^limit."""
    _check_r(r)
    if limit is None:
        limit = default_limit(r)
    if limit < 0:
        raise ValueError("limit must be non-negative")
    series = [MultiPoly.one(r)] + [MultiPoly.zero(r)] * limit
    for u in MultiPoly.variables(r):
        # (1 + u t)/(1 - u t) = 1 + 2 sum_{a>=1} u^a t^a
        factor = [MultiPoly.one(r)] + [2 * u**a for a in range(1, limit + 1)]
        series = _series_mul(series, factor, limit)
    return SchurQSeq(r, limit, tuple(series))


def eta(r: int, limit: int | None = None, q: SchurQSeq | None = None) -> EtaSeq:
    _check_r(r)
    if limit is None:
        limit = default_limit(r)
    if q is None or q.limit < limit + 1:
        q = schur_q(r, limit + 1)
    sign = HALF if (r - 1) % 2 == 0 else -HALF
    out = []
    for a in range(limit + 1):
        value = q[a + 1] + sign * q[a]
        if a == 0:
            value = value + HALF
        out.append(value)
    return EtaSeq(r, limit, tuple(out))


def eta_alt(r: int, limit: int | None = None) -> EtaSeq:
    """Same polynomials written as q_{a+1} - (1/2)(-1)^r q_a + (1/2) delta_{a,0}."""
    _check_r(r)
    if limit is None:
        limit = default_limit(r)
    q = schur_q(r, limit + 1)
    out = []
    for a in range(limit + 1):
        value = q[a + 1] - HALF * (-1) ** r * q[a] + (HALF if a == 0 else 0)
        out.append(value)
    return EtaSeq(r, limit, tuple(out))


def gamma(r: int, point: Sequence | None = None) -> GammaSeq:
    """Closed-form gamma_i, symbolic or at ``point``.

    Raises SingularityError at a point with a repeated coordinate.
    """
    _check_r(r)
    if point is not None:
        pt = tuple(Fraction(p) for p in point)
        if len(pt) != r:
            raise ValueError(f"point has length {len(pt)}, expected {r}")
        values = []
        for i in range(r):
            value = 2 * pt[i] - (-1) ** r
            for j in range(r):
                if j == i:
                    continue
                if pt[i] == pt[j]:
                    raise SingularityError(f"u_{i + 1} = u_{j + 1} = {pt[i]}: gamma is undefined")
                value *= (pt[i] + pt[j]) / (pt[i] - pt[j])
            values.append(value)
        return GammaSeq(r, tuple(values), pt)
    us = MultiPoly.variables(r)
    values = []
    for i in range(r):
        num = 2 * us[i] - (-1) ** r
        den = MultiPoly.one(r)
        for j in range(r):
            if j != i:
                num = num * (us[i] + us[j])
                den = den * (us[i] - us[j])
        values.append(RatFunc(num, den))
    return GammaSeq(r, tuple(values))


def vandermonde(r: int) -> MultiPoly:
    """prod_{k<l} (u_k - u_l)."""
    us = MultiPoly.variables(r)
    out = MultiPoly.one(r)
    for k in range(r):
        for l in range(k + 1, r):
            out = out * (us[k] - us[l])
    return out


def weighted_power_sum(g: GammaSeq, a: int):
    """sum_i gamma_i u_i^a.

    Symbolic sums are formed over the common Vandermonde denominator so the
    result stays small enough to compare by cross-multiplication.
    """
    if a < 0:
        raise ValueError("a must be non-negative")
    if g.point is not None:
        return sum((gi * ui**a for gi, ui in zip(g.gamma, g.point)), Fraction(0))
    r = g.r
    us = MultiPoly.variables(r)
    v = vandermonde(r)
    num = MultiPoly.zero(r)
    for i, gi in enumerate(g.gamma):
        cofactor = v.divexact(gi.den)
        num = num + gi.num * cofactor * us[i] ** a
    return RatFunc(num, v)


def is_symmetric(p: MultiPoly) -> bool:
    """Invariant under every transposition of variables."""
    n = p.nvars
    return all(p.swap(i, j) == p for i in range(n) for j in range(i + 1, n))


# matched-coefficient identities between a_j, q_a and eta_a

Q_ELEMENTARY = "q-elementary"
Q_SHIFTED = "q-shifted"
ETA_RECURRENCE = "eta-recurrence"
SYMFUN_IDENTITIES = (Q_ELEMENTARY, Q_SHIFTED, ETA_RECURRENCE)


@dataclass(frozen=True)
class SymIdentity:
    family: str
    r: int
    index: int
    lhs: MultiPoly
    rhs: MultiPoly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def symfun_identity(r: int, family: str, index: int) -> SymIdentity:
    """Both sides of one identity, expanded canonically.

    ``q-elementary`` (0 <= j < r):
        sum_{mu=0}^{r-j-1} q_mu a_{mu+j+1} = (-1)^(r-j-1) a_{j+1}
    ``q-shifted`` (0 <= j < r):
        sum_{mu=0}^{r-j-1} q_{mu+1} a_{mu+j+1} = -2 [r-j odd] a_j
    ``eta-recurrence`` (a >= 0):
        sum_{mu=0}^{r} a_mu eta_{mu+a} = 0
    """
    _check_r(r)
    a = signed_elementary(r).a
    zero = MultiPoly.zero(r)
    if family in (Q_ELEMENTARY, Q_SHIFTED):
        if not 0 <= index < r:
            raise ValueError(f"j must lie in 0..{r - 1}, got {index}")
        j = index
        q = schur_q(r, r - j).q
        shift = 1 if family == Q_SHIFTED else 0
        lhs = sum((q[mu + shift] * a[mu + j + 1] for mu in range(r - j)), zero)
        if family == Q_ELEMENTARY:
            rhs = a[j + 1] if (r - j - 1) % 2 == 0 else -a[j + 1]
        else:
            rhs = -2 * a[j] if (r - j) % 2 == 1 else zero
        return SymIdentity(family, r, j, lhs, rhs)
    if family == ETA_RECURRENCE:
        if index < 0:
            raise ValueError("a must be non-negative")
        e = eta(r, index + r).eta
        lhs = sum((a[mu] * e[mu + index] for mu in range(r + 1)), zero)
        return SymIdentity(family, r, index, lhs, zero)
    raise ValueError(f"unknown identity family {family!r}")


def symfun_identities(r: int, a_max: int | None = None) -> list[SymIdentity]:
    """Every identity for this r: all j for the q families, a = 0..a_max for eta."""
    a_max = r + 2 if a_max is None else a_max
    out = [symfun_identity(r, fam, j) for fam in (Q_ELEMENTARY, Q_SHIFTED) for j in range(r)]
    out += [symfun_identity(r, ETA_RECURRENCE, a) for a in range(a_max + 1)]
    return out
