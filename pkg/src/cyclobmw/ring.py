"""Exact ground rings: rationals, sparse multivariate polynomials, rational functions.

Rationals are plain :class:`fractions.Fraction`.  ``MultiPoly`` is a sparse
polynomial in a fixed number of variables with rational coefficients, kept in
canonical form (no zero coefficients; graded-lex iteration order), so equality
is structural.  ``RatFunc`` is a lazily normalised fraction of two ``MultiPoly``
values whose equality is decided by cross-multiplication.

Scalars (``int`` / ``Fraction``) mix freely with both classes.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, InputError, SingularityError

Exponent = tuple[int, ...]


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p/q"`` / ``"p"`` (or a JSON integer) into a Fraction."""
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InputError(f"expected an exact rational 'p/q' or integer, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    s = text.strip()
    try:
        num, _, den = s.partition("/")
        value = Fraction(int(num), int(den)) if den else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not an exact rational: {text!r}") from None
    return value


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _grlex_key(exp: Exponent) -> tuple[int, Exponent]:
    return (sum(exp), exp)


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables over the rationals.

    >>> u1, u2 = MultiPoly.variables(2)
    >>> (u1 + u2) * (u1 - u2) == u1**2 - u2**2
    True
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction | int] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                if c:
                    clean[tuple(exp)] = Fraction(c)
        self._terms = clean
        self._hash: int | None = None

    # construction helpers

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> MultiPoly:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, nvars: int, value: Fraction | int) -> MultiPoly:
        if not value:
            return cls._raw(nvars, {})
        return cls._raw(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> MultiPoly:
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> MultiPoly:
        """The ``index``-th variable (0-based)."""
        if not 0 <= index < nvars:
            raise DimensionError(f"variable index {index} out of range for {nvars} variables")
        exp = tuple(1 if k == index else 0 for k in range(nvars))
        return cls._raw(nvars, {exp: Fraction(1)})

    @classmethod
    def variables(cls, nvars: int) -> list[MultiPoly]:
        return [cls.variable(nvars, k) for k in range(nvars)]

    # inspection

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * self.nvars}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def leading(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=_grlex_key)
        return exp, self._terms[exp]

    # arithmetic

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, Rational):
            return MultiPoly.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly._raw(self.nvars, {})
            return MultiPoly._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                out[exp] = out.get(exp, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MultiPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, Rational) and not isinstance(other, MultiPoly):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, MultiPoly):
            return RatFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return RatFunc(MultiPoly.constant(self.nvars, other), self)
        return NotImplemented

    def divmod(self, divisor: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        """Multivariate division by a single divisor in graded-lex order."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_exp, lead_c = divisor.leading()
        quotient: dict[Exponent, Fraction] = {}
        remainder: dict[Exponent, Fraction] = {}
        work = self
        while not work.is_zero():
            exp, c = work.leading()
            if all(a >= b for a, b in zip(exp, lead_exp)):
                q_exp = tuple(a - b for a, b in zip(exp, lead_exp))
                q_c = c / lead_c
                quotient[q_exp] = quotient.get(q_exp, 0) + q_c
                work = work - MultiPoly._raw(self.nvars, {q_exp: q_c}) * divisor
            else:
                remainder[exp] = c
                work = work - MultiPoly._raw(self.nvars, {exp: c})
        return (MultiPoly(self.nvars, quotient), MultiPoly(self.nvars, remainder))

    def divexact(self, divisor: MultiPoly) -> MultiPoly:
        q, rem = self.divmod(divisor)
        if not rem.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    # comparison

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        try:
            other = self._coerce(other)
        except DimensionError:
            return False
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # substitution

    def evaluate(self, point: Sequence) -> Fraction:
        """Substitute ``point`` for the variables.

        Entries may be rationals or any ring elements supporting ``+`` and ``*``
        (e.g. other polynomials), so this doubles as a ring homomorphism.
        """
        if len(point) != self.nvars:
            raise DimensionError(f"point has length {len(point)}, expected {self.nvars}")
        total = 0
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def permute(self, perm: Sequence[int]) -> MultiPoly:
        """Rename variable ``k`` to ``perm[k]``."""
        out = {}
        for exp, c in self._terms.items():
            new = [0] * self.nvars
            for k, e in enumerate(exp):
                new[perm[k]] = e
            out[tuple(new)] = c
        return MultiPoly._raw(self.nvars, out)

    def swap(self, i: int, j: int) -> MultiPoly:
        perm = list(range(self.nvars))
        perm[i], perm[j] = j, i
        return self.permute(perm)

    # serialisation

    def to_records(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in self.items()]

    @classmethod
    def from_records(cls, nvars: int, records: Iterable[Mapping]) -> MultiPoly:
        terms: dict[Exponent, Fraction] = {}
        for k, rec in enumerate(records):
            try:
                exp = tuple(int(e) for e in rec["exponents"])
                coeff = parse_rational(rec["coeff"])
            except (KeyError, TypeError) as exc:
                raise InputError(f"term [{k}]: expected {{exponents, coeff}} record ({exc})") from None
            except InputError as exc:
                raise InputError(f"term [{k}]: {exc}") from None
            if len(exp) != nvars:
                raise InputError(f"term [{k}]: exponent vector has length {len(exp)}, expected {nvars}")
            terms[exp] = terms.get(exp, 0) + coeff
        return cls(nvars, terms)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        if names is None:
            names = [f"u{k + 1}" for k in range(self.nvars)]
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                names[k] if e == 1 else f"{names[k]}^{e}" for k, e in enumerate(exp) if e
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_str()!r})"


class RatFunc:
    """Element of the fraction field of ``MultiPoly``.

    Fractions are not reduced by arithmetic; ``reduce`` strips rational content
    and common monomial factors, which never changes the equality class.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | Fraction | int = 1):
        if not isinstance(den, MultiPoly):
            den = MultiPoly.constant(num.nvars, den)
        if num.nvars != den.nvars:
            raise DimensionError(f"variable count mismatch: {num.nvars} vs {den.nvars}")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def lift(cls, value, nvars: int) -> RatFunc:
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, MultiPoly):
            return cls(value)
        return cls(MultiPoly.constant(nvars, value))

    def _coerce(self, other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            if other.nvars != self.nvars:
                raise DimensionError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return RatFunc(other)
        if isinstance(other, Rational):
            return RatFunc(MultiPoly.constant(self.nvars, other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except DimensionError:
            return False
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is not structural

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def evaluate(self, point: Sequence) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise SingularityError(f"denominator vanishes at {list(map(str, point))}")
        return self.num.evaluate(point) / d

    def as_poly(self) -> MultiPoly:
        """Exact quotient when the fraction is a polynomial."""
        return self.num.divexact(self.den)

    def reduce(self) -> RatFunc:
        num, den = self.num, self.den
        if num.is_zero():
            return RatFunc(num, MultiPoly.one(self.nvars))
        # common monomial factor
        shift = tuple(
            min(min(e[k] for e in num._terms), min(e[k] for e in den._terms))
            for k in range(self.nvars)
        )
        if any(shift):
            num = MultiPoly._raw(num.nvars, {tuple(a - b for a, b in zip(e, shift)): c for e, c in num._terms.items()})
            den = MultiPoly._raw(den.nvars, {tuple(a - b for a, b in zip(e, shift)): c for e, c in den._terms.items()})
        # rational content, normalised so the denominator's leading coefficient is 1
        lead = den.leading()[1]
        num, den = num * (1 / lead), den * (1 / lead)
        if num.nvars and not den.is_constant():
            q, rem = num.divmod(den)
            if rem.is_zero():
                return RatFunc(q)
        if den.is_constant():
            return RatFunc(num * (1 / den.constant_value()))
        return RatFunc(num, den)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if self.den == 1:
            return self.num.to_str(names)
        return f"({self.num.to_str(names)})/({self.den.to_str(names)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFunc({self.to_str()!r})"


def is_zero(value) -> bool:
    """Zero test that works uniformly over Fraction, MultiPoly and RatFunc."""
    if isinstance(value, (MultiPoly, RatFunc)):
        return value.is_zero()
    return value == 0


def evaluate(value, point: Sequence):
    """Evaluate a ground-ring element at a numeric point (scalars pass through)."""
    if isinstance(value, (MultiPoly, RatFunc)):
        return value.evaluate(point)
    return Fraction(value)


def serialize(value) -> str | list | dict:
    """JSON-ready form: "p/q" for rationals, term records for polynomials."""
    if isinstance(value, RatFunc):
        return {"num": value.num.to_records(), "den": value.den.to_records()}
    if isinstance(value, MultiPoly):
        return value.to_records()
    return format_rational(value)


def to_text(value, names: Sequence[str] | None = None) -> str:
    if isinstance(value, (MultiPoly, RatFunc)):
        return value.to_str(names)
    return format_rational(value)
