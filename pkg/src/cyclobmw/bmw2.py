"""The two-strand degenerate cyclotomic BMW algebra W_{2,r} as a based algebra.

Elements are linear combinations of the 3r^2 spanning words

    EXE(a, b) = x1^a e x1^b,   XXS(a, b) = x1^a x2^b s,   XX(a, b) = x1^a x2^b

with 0 <= a, b < r.  Writing x = x1, y = x2, every generator acts on the left
of a spanning word by a closed-form rule derived from the defining relations:

* x: raise the x-degree, reducing x^r = -sum_{j<r} a_j x^j;
* y: raise the y-degree; y^r is expanded once from y = s x s + s - e;
  y e = -x e;
* e: e y = -e x, e x^a e = omega_a e, and e x^c s is the mirror image of
  s x^c e = (-1)^c x^c e + sum_b (-1)^(b-1) omega_{c-b} x^(b-1) e - [c odd] x^(c-1) e;
* s: s x^a = y^a s + sum_b y^(b-1)(e-1)x^(a-b), its twin
  s y^b = x^b s - sum_d x^(d-1)(e-1)y^(b-d), and the s x^a e rule above.

Only omega_0..omega_{r-1} and the a_j enter the table, and only ring
operations are used, so coefficients may be rationals or polynomials.
Whether the rules are mutually consistent is not assumed:
:func:`check_relations` and :func:`check_associativity` certify it.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

import numpy as np

from .admissibility import ParameterSet
from .errors import InputError
from .ring import is_zero, to_text

GENERATORS = ("e", "s", "x1", "x2")
FAMILIES = ("EXE", "XXS", "XX")


class BasisWord(NamedTuple):
    family: str
    a: int
    b: int

    def letters(self) -> list[str]:
        if self.family == "EXE":
            return ["x1"] * self.a + ["e"] + ["x1"] * self.b
        if self.family == "XXS":
            return ["x1"] * self.a + ["x2"] * self.b + ["s"]
        return ["x1"] * self.a + ["x2"] * self.b

    def text(self) -> str:
        def power(g, n):
            return "" if n == 0 else (g if n == 1 else f"{g}^{n}")

        if self.family == "EXE":
            parts = [power("x1", self.a), "e", power("x1", self.b)]
        elif self.family == "XXS":
            parts = [power("x1", self.a), power("x2", self.b), "s"]
        else:
            parts = [power("x1", self.a), power("x2", self.b)]
        return " ".join(p for p in parts if p) or "1"

    def to_json(self) -> dict:
        return {"family": self.family, "a": self.a, "b": self.b, "text": self.text()}


IDENTITY = BasisWord("XX", 0, 0)


def basis_words(r: int) -> list[BasisWord]:
    return [BasisWord(f, a, b) for f in FAMILIES for a in range(r) for b in range(r)]


def _add(out: dict, word: BasisWord, coeff) -> None:
    if is_zero(coeff):
        return
    value = out.get(word)
    value = coeff if value is None else value + coeff
    if is_zero(value):
        del out[word]
    else:
        out[word] = value


def _axpy(out: dict, coeff, terms: dict) -> None:
    """out += coeff * terms"""
    for w, c in terms.items():
        _add(out, w, coeff * c)


class AlgebraElement:
    """Finitely supported map from basis words to ground-ring coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if not is_zero(c)}

    @classmethod
    def basis(cls, word: BasisWord, coeff=1) -> AlgebraElement:
        return cls({word: coeff})

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        out = dict(self.terms)
        _axpy(out, 1, other.terms)
        return AlgebraElement(out)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        out = dict(self.terms)
        _axpy(out, -1, other.terms)
        return AlgebraElement(out)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement({w: -c for w, c in self.terms.items()})

    def __rmul__(self, scalar) -> AlgebraElement:
        return AlgebraElement({w: scalar * c for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return not (self - other).terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, word: BasisWord):
        return self.terms.get(word, 0)

    def support(self) -> list[BasisWord]:
        order = {f: k for k, f in enumerate(FAMILIES)}
        return sorted(self.terms, key=lambda w: (order[w.family], w.a, w.b))

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.support():
            c = self.terms[w]
            parts.append(f"({to_text(c, names)})*[{w.text()}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgebraElement({self.to_text()})"


def parse_word(text: str | Sequence[str]) -> list[str]:
    tokens = text.split() if isinstance(text, str) else list(text)
    for k, tok in enumerate(tokens):
        if tok not in GENERATORS:
            raise InputError(f"token {k} ({tok!r}) is not one of {', '.join(GENERATORS)}")
    return tokens


class StructureTable:
    """Left action of the generators on the spanning words of W_{2,r}."""

    def __init__(self, params: ParameterSet):
        self.params = params
        self.r = r = params.r
        self.a = params.a
        self.omega = params.omegas(r)
        self.words = basis_words(r)
        self._one = params.one()
        self._xmod: list[list] = [[self._one if k == 0 else 0 for k in range(r)]]
        self._exs_cache: dict[int, dict[int, object]] = {}
        self._ypow: list[dict] = [{BasisWord("XX", 0, k): self._one} for k in range(r)]
        self._y_r = self._expand_y_r()
        self._y_r_s = self._right_s(self._y_r)
        self.left_mult: dict[str, dict[BasisWord, dict]] = {g: {} for g in GENERATORS}
        for g in GENERATORS:
            for w in self.words:
                self.left_mult[g][w] = self._left(g, w)
        self._products: dict[tuple[BasisWord, BasisWord], dict] = {}

    # polynomial arithmetic in x modulo the cyclotomic polynomial

    def xmod(self, c: int) -> list:
        """Coefficients of x^c reduced modulo prod (x - u_i)."""
        r = self.r
        while len(self._xmod) <= c:
            prev = self._xmod[-1]
            top = prev[r - 1]
            nxt = [0] + prev[: r - 1]
            if not is_zero(top):
                nxt = [n - top * self.a[j] for j, n in enumerate(nxt)]
            self._xmod.append(nxt)
        return self._xmod[c]

    def _exe(self, a: int, b: int) -> dict:
        out: dict = {}
        for k, ck in enumerate(self.xmod(a)):
            if is_zero(ck):
                continue
            for l, cl in enumerate(self.xmod(b)):
                _add(out, BasisWord("EXE", k, l), ck * cl)
        return out

    def _x_pow(self, i: int, terms: dict) -> dict:
        if i == 0:
            return dict(terms)
        out: dict = {}
        for w, c in terms.items():
            for k, ck in enumerate(self.xmod(w.a + i)):
                _add(out, BasisWord(w.family, k, w.b), c * ck)
        return out

    # the s x^a e rule and its mirror

    def sxe(self, a: int) -> dict[int, object]:
        """s x^a e = sum_k coeff_k x^k e, for 0 <= a <= r."""
        out: dict[int, object] = {}

        def put(k, c):
            out[k] = out.get(k, 0) + c

        put(a, (-1) ** a * self._one)
        for b in range(1, a + 1):
            put(b - 1, (-1) ** (b - 1) * self.omega[a - b])
        if a % 2 == 1:
            put(a - 1, -self._one)
        return {k: c for k, c in out.items() if not is_zero(c)}

    def exs(self, c: int) -> dict[int, object]:
        """e x^c s = sum_k coeff_k e x^k (any c >= 0)."""
        if c not in self._exs_cache:
            out: dict[int, object] = {}
            for j, cj in enumerate(self.xmod(c)):
                if is_zero(cj):
                    continue
                for k, ck in self.sxe(j).items():
                    out[k] = out.get(k, 0) + cj * ck
            self._exs_cache[c] = {k: v for k, v in out.items() if not is_zero(v)}
        return self._exs_cache[c]

    def _right_s(self, terms: dict) -> dict:
        out: dict = {}
        for w, c in terms.items():
            if w.family == "XX":
                _add(out, BasisWord("XXS", w.a, w.b), c)
            elif w.family == "XXS":
                _add(out, BasisWord("XX", w.a, w.b), c)
            else:
                for k, ck in self.exs(w.b).items():
                    _add(out, BasisWord("EXE", w.a, k), c * ck)
        return out

    # powers of x2

    def _y_e_x_s(self, k: int, m: int) -> dict:
        """y^k (e - 1) x^m s for k, m < r."""
        out: dict = {}
        sign = (-1) ** k
        for l, cl in self.exs(m).items():
            _add(out, BasisWord("EXE", k, l), sign * cl)
        _add(out, BasisWord("XXS", m, k), -self._one)
        return out

    def _expand_y_r(self) -> dict:
        # y^a = s x^a s - sum_c y^(c-1)(e-1)x^(a-c)s, with s x^r s = -sum_j a_j s x^j s
        # and s x^j s = y^j + sum_c y^(c-1)(e-1)x^(j-c)s for j < r.
        r = self.r
        out: dict = {}
        for j in range(r):
            sxs = {BasisWord("XX", 0, j): self._one}
            for c in range(1, j + 1):
                _axpy(sxs, 1, self._y_e_x_s(c - 1, j - c))
            _axpy(out, -self.a[j], sxs)
        for c in range(1, r + 1):
            _axpy(out, -1, self._y_e_x_s(c - 1, r - c))
        return out

    def ypow(self, k: int) -> dict:
        while len(self._ypow) <= k:
            self._ypow.append(self._apply_y(self._ypow[-1]))
        return self._ypow[k]

    def _left_y(self, w: BasisWord) -> dict:
        r = self.r
        if w.family == "EXE":
            return {v: -c for v, c in self._x_pow(1, {w: self._one}).items()}
        if w.b + 1 < r:
            return {BasisWord(w.family, w.a, w.b + 1): self._one}
        overflow = self._y_r if w.family == "XX" else self._y_r_s
        return self._x_pow(w.a, overflow)

    def _apply_y(self, terms: dict) -> dict:
        out: dict = {}
        for w, c in terms.items():
            _axpy(out, c, self._left_y(w))
        return out

    # left multiplication by generators on spanning words

    def _left_e(self, w: BasisWord) -> dict:
        if w.family == "EXE":
            return {BasisWord("EXE", 0, w.b): self.omega[w.a]} if not is_zero(self.omega[w.a]) else {}
        sign = (-1) ** w.b
        if w.family == "XX":
            return {v: sign * c for v, c in self._exe(0, w.a + w.b).items()}
        return {BasisWord("EXE", 0, k): sign * c for k, c in self.exs(w.a + w.b).items()}

    def _left_s(self, w: BasisWord) -> dict:
        if w.family == "EXE":
            return {BasisWord("EXE", k, w.b): c for k, c in self.sxe(w.a).items()}
        if w.family == "XXS":
            return self._right_s(self._left_s(BasisWord("XX", w.a, w.b)))
        a, b = w.a, w.b
        out: dict = {BasisWord("XXS", b, a): self._one}
        # y^a s y^b
        for d in range(1, b + 1):
            _axpy(out, -((-1) ** (a + b - d)), self._exe(a + d - 1, b - d))
            _axpy(out, 1, self._x_pow(d - 1, self.ypow(a + b - d)))
        # sum_c y^(c-1)(e-1) x^(a-c) y^b
        for c in range(1, a + 1):
            _axpy(out, (-1) ** (c - 1 + b), self._exe(c - 1, a - c + b))
            _axpy(out, -1, self._x_pow(a - c, self.ypow(b + c - 1)))
        return out

    def _left(self, g: str, w: BasisWord) -> dict:
        if g == "x1":
            return self._x_pow(1, {w: self._one})
        if g == "x2":
            return self._left_y(w)
        if g == "e":
            return self._left_e(w)
        if g == "s":
            return self._left_s(w)
        raise InputError(f"unknown generator {g!r}")

    # public operations

    def apply(self, g: str, el: AlgebraElement | dict) -> AlgebraElement:
        terms = el.terms if isinstance(el, AlgebraElement) else el
        table = self.left_mult[g]
        out: dict = {}
        for w, c in terms.items():
            _axpy(out, c, table[w])
        return AlgebraElement(out)

    def _apply_letters(self, letters: Sequence[str], terms: dict) -> dict:
        for g in reversed(letters):
            table = self.left_mult[g]
            out: dict = {}
            for w, c in terms.items():
                _axpy(out, c, table[w])
            terms = out
        return terms

    def reduce(self, word: str | Sequence[str]) -> AlgebraElement:
        letters = parse_word(word)
        return AlgebraElement(self._apply_letters(letters, {IDENTITY: self._one}))

    def product(self, w1: BasisWord, w2: BasisWord) -> AlgebraElement:
        key = (w1, w2)
        if key not in self._products:
            self._products[key] = self._apply_letters(w1.letters(), {w2: self._one})
        return AlgebraElement(self._products[key])

    def multiply(self, lhs: AlgebraElement, rhs: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for u, cu in lhs.terms.items():
            _axpy(out, cu, self._apply_letters(u.letters(), rhs.terms))
        return AlgebraElement(out)

    def element(self, word: BasisWord, coeff=None) -> AlgebraElement:
        return AlgebraElement({word: self._one if coeff is None else coeff})

    def one(self) -> AlgebraElement:
        return self.element(IDENTITY)

    def dump(self) -> list[dict]:
        from .ring import serialize

        rows = []
        for w in self.words:
            for g in GENERATORS:
                el = AlgebraElement(self.left_mult[g][w])
                rows.append(
                    {
                        "word": w.to_json(),
                        "generator": g,
                        "expansion": [{"word": v.to_json(), "coeff": serialize(el.terms[v])} for v in el.support()],
                    }
                )
        return rows


def build_table(r: int, params: ParameterSet) -> StructureTable:
    if params.r != r:
        raise ValueError(f"parameter set has r = {params.r}, expected {r}")
    return StructureTable(params)


def reduce_word(word: str | Sequence[str], params: ParameterSet) -> AlgebraElement:
    return StructureTable(params).reduce(word)


def involution(t: StructureTable, el: AlgebraElement) -> AlgebraElement:
    """The anti-automorphism fixing e, s, x1 and x2."""
    out: dict = {}
    for w, c in el.terms.items():
        if w.family == "EXE":
            _add(out, BasisWord("EXE", w.b, w.a), c)
        elif w.family == "XX":
            _add(out, w, c)
        else:
            # (x1^a x2^b s)* = s x2^b x1^a = s x1^a x2^b
            _axpy(out, c, t.left_mult["s"][BasisWord("XX", w.a, w.b)])
    return AlgebraElement(out)


# certification


@dataclass(frozen=True)
class RelationCheck:
    name: str
    holds: bool
    witness: BasisWord | None = None
    detail: str = ""


@dataclass(frozen=True)
class RelationReport:
    checks: tuple[RelationCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.holds]


def _operator_identity(t: StructureTable, name: str, lhs, rhs, detail: str = "") -> RelationCheck:
    """Compare two operators (functions word -> AlgebraElement) on every spanning word."""
    for w in t.words:
        if lhs(w) != rhs(w):
            return RelationCheck(name, False, w, detail)
    return RelationCheck(name, True, None, detail)


def check_relations(t: StructureTable, unwrap_max: int | None = None) -> RelationReport:
    """Every defining relation of W_{2,r}, tested as an operator identity on the spanning words."""
    p = t.params
    one = t._one
    if unwrap_max is None:
        unwrap_max = 2 * t.r - 1

    def word(w):
        return t.element(w)

    def act(*letters):
        def op(w):
            return AlgebraElement(t._apply_letters(letters, {w: one}))

        return op

    def comb(*pairs):
        def op(w):
            out = AlgebraElement()
            for coeff, f in pairs:
                out = out + coeff * f(w)
            return out

        return op

    def zero(w):
        return AlgebraElement()

    checks = [
        _operator_identity(t, "involution s^2 = 1", act("s", "s"), word),
        _operator_identity(t, "idempotent e^2 = w0 e", act("e", "e"), comb((p.omega_at(0), act("e")))),
        _operator_identity(
            t, "skein s x1 - x2 s = e - 1",
            comb((1, act("s", "x1")), (-1, act("x2", "s"))), comb((1, act("e")), (-1, word)),
        ),
        _operator_identity(
            t, "skein x1 s - s x2 = e - 1",
            comb((1, act("x1", "s")), (-1, act("s", "x2"))), comb((1, act("e")), (-1, word)),
        ),
        _operator_identity(t, "tangle e s = e", act("e", "s"), act("e")),
        _operator_identity(t, "tangle s e = e", act("s", "e"), act("e")),
        _operator_identity(t, "anti-symmetry e (x1 + x2) = 0", comb((1, act("e", "x1")), (1, act("e", "x2"))), zero),
        _operator_identity(t, "anti-symmetry (x1 + x2) e = 0", comb((1, act("x1", "e")), (1, act("x2", "e"))), zero),
        _operator_identity(t, "commutation x1 x2 = x2 x1", act("x1", "x2"), act("x2", "x1")),
    ]
    for a in range(1, unwrap_max + 1):
        checks.append(
            _operator_identity(
                t, f"unwrapping e x1^{a} e = w{a} e",
                act("e", *(["x1"] * a), "e"), comb((p.omega_at(a), act("e"))), detail=f"a={a}",
            )
        )

    def cyclotomic(w):
        terms = {w: one}
        for u in p.u:
            shifted = t._apply_letters(["x1"], terms)
            _axpy(shifted, -u, terms)
            terms = shifted
        return AlgebraElement(terms)

    checks.append(_operator_identity(t, "cyclotomic prod (x1 - u_i) = 0", cyclotomic, zero))
    checks.append(
        _operator_identity(
            t, "x2 = s x1 s + s - e",
            act("x2"), comb((1, act("s", "x1", "s")), (1, act("s")), (-1, act("e"))),
        )
    )
    checks.append(
        _operator_identity(t, "spanning words: w * 1 = w", lambda w: t.product(w, IDENTITY), word)
    )
    return RelationReport(tuple(checks))


@dataclass(frozen=True)
class AssociativityReport:
    triples: int
    holds: bool
    witness: tuple[BasisWord, BasisWord, BasisWord] | None = None


def _structure_tensor(t: StructureTable):
    n = len(t.words)
    index = {w: k for k, w in enumerate(t.words)}
    tensor = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, w1 in enumerate(t.words):
        for j, w2 in enumerate(t.words):
            for v, c in t.product(w1, w2).terms.items():
                tensor[i][j][index[v]] = c
    return tensor


def _assoc_rows(args):
    """Compare (w_i w_j) w_l with w_i (w_j w_l) for every i in ``rows``."""
    tensor, rows = args
    n = tensor.shape[0]
    flat_right = tensor.reshape(n, n * n)
    flat_left = tensor.reshape(n * n, n)
    for i in rows:
        a_i = tensor[i]
        left = (a_i.dot(flat_right)).reshape(n, n, n)
        right = (flat_left.dot(a_i)).reshape(n, n, n)
        bad = np.argwhere(left != right)
        if len(bad):
            j, l, _ = bad[0]
            return int(i), int(j), int(l)
    return None


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CYCLOBMW_THREADS", "1")))
    except ValueError:
        return 1


def check_associativity(t: StructureTable) -> AssociativityReport:
    """(w1 w2) w3 == w1 (w2 w3) for all triples of spanning words."""
    n = len(t.words)
    tensor = _structure_tensor(t)
    if not t.params.is_symbolic:
        denominators = [Fraction(c).denominator for plane in tensor for row in plane for c in row]
        scale = lcm(*denominators) if denominators else 1
        ints = [[[int(Fraction(c) * scale) for c in row] for row in plane] for plane in tensor]
        bound = max((abs(c) for plane in ints for row in plane for c in row), default=0)
        dtype = np.int64 if bound**2 * n < 2**62 else object
        arr = np.array(ints, dtype=dtype)
        workers = _worker_count()
        chunks = [list(range(k, n, workers)) for k in range(workers)]
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                found = [res for res in pool.map(_assoc_rows, [(arr, c) for c in chunks]) if res]
            hit = min(found) if found else None
        else:
            hit = _assoc_rows((arr, chunks[0]))
        witness = None if hit is None else tuple(t.words[k] for k in hit)
        return AssociativityReport(n**3, hit is None, witness)
    for i in range(n):
        for j in range(n):
            left_ij = tensor[i][j]
            for l in range(n):
                for m in range(n):
                    lhs = 0
                    rhs = 0
                    for k in range(n):
                        if not is_zero(left_ij[k]) and not is_zero(tensor[k][l][m]):
                            lhs = lhs + left_ij[k] * tensor[k][l][m]
                        if not is_zero(tensor[j][l][k]) and not is_zero(tensor[i][k][m]):
                            rhs = rhs + tensor[j][l][k] * tensor[i][k][m]
                    if not is_zero(lhs - rhs):
                        return AssociativityReport(n**3, False, (t.words[i], t.words[j], t.words[l]))
    return AssociativityReport(n**3, True)


@dataclass(frozen=True)
class FreenessCertificate:
    free: bool
    rank: int
    relations: RelationReport
    associativity: AssociativityReport


def freeness_certificate(r: int, params: ParameterSet) -> FreenessCertificate:
    """Certify that the 3r^2 spanning words form a basis of W_{2,r}.

    Passing means the table is a faithful model of the algebra, so in
    particular e, x e, ..., x^(r-1) e (distinct basis words) are independent.
    """
    t = build_table(r, params)
    relations = check_relations(t)
    associativity = check_associativity(t)
    free = relations.all_pass and associativity.holds
    return FreenessCertificate(free, 3 * r * r, relations, associativity)


def random_words(count: int, max_length: int, seed: int) -> list[list[str]]:
    rng = random.Random(seed)
    return [
        [rng.choice(GENERATORS) for _ in range(rng.randint(0, max_length))]
        for _ in range(count)
    ]


@dataclass(frozen=True)
class ConfluenceReport:
    trials: int
    holds: bool
    witness: tuple[list[str], list[str]] | None = None


def check_confluence(t: StructureTable, count: int = 200, max_length: int = 8, seed: int = 0) -> ConfluenceReport:
    """reduce(w1 w2) == reduce(w1) * reduce(w2) on seeded random word pairs.

    Lengths are chosen so the concatenation has at most ``max_length`` letters.
    """
    rng = random.Random(seed)
    for _ in range(count):
        total = rng.randint(0, max_length)
        split = rng.randint(0, total)
        w1 = [rng.choice(GENERATORS) for _ in range(split)]
        w2 = [rng.choice(GENERATORS) for _ in range(total - split)]
        if t.reduce(w1 + w2) != t.multiply(t.reduce(w1), t.reduce(w2)):
            return ConfluenceReport(count, False, (w1, w2))
    return ConfluenceReport(count, True)


def left_ideal_closed(t: StructureTable) -> bool:
    """span{x1^a e} is stable under left multiplication by every generator."""
    for a in range(t.r):
        w = BasisWord("EXE", a, 0)
        for g in GENERATORS:
            if any(v.family != "EXE" or v.b != 0 for v in t.left_mult[g][w]):
                return False
    return True


def default_instance(r: int) -> ParameterSet:
    """u-admissible numeric parameters at distinct primes (2, 3, 5, 7, ...)."""
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    if r > len(primes):
        raise ValueError("no default instance for r > 10")
    return ParameterSet.u_admissible(primes[:r])

