"""Exact sparse multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`; exponents are plain tuples of
ints.  Polynomials are immutable and hashable.  Printing and default iteration
use graded-reverse-lex, with the first declared variable largest.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]

INFINITY = math.inf


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column = line, col
        super().__init__(f"{message} (line {line}, column {col})")


class PolynomialRing:
    """Polynomial ring k[x_1..x_n] over Q with a positive integer grading."""

    __slots__ = ("variables", "grading", "_index")

    def __init__(self, variables: Sequence[str], grading: Sequence[int] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for name in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"invalid variable name {name!r}")
        if grading is None:
            grading = (1,) * len(variables)
        grading = tuple(int(g) for g in grading)
        if len(grading) != len(variables):
            raise ValueError("grading length must match the number of variables")
        if any(g <= 0 for g in grading):
            raise ValueError("grading weights must be positive integers")
        self.variables = variables
        self.grading = grading
        self._index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.variables == other.variables
            and self.grading == other.grading
        )

    def __hash__(self):
        return hash((self.variables, self.grading))

    def __repr__(self):
        if all(g == 1 for g in self.grading):
            return f"PolynomialRing({', '.join(self.variables)})"
        return f"PolynomialRing({', '.join(self.variables)}; grading={list(self.grading)})"

    def index(self, name: str) -> int:
        return self._index[name]

    def degree(self, exps: Monomial) -> int:
        return sum(g * e for g, e in zip(self.grading, exps))

    def gen(self, name_or_index) -> "Polynomial":
        i = self._index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def one(self) -> "Polynomial":
        return self.constant(1)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def constant(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Iterable[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent length does not match the ring")
        c = Fraction(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def monomials_of_degree(self, n: int) -> list[Monomial]:
        """All monomials of graded degree ``n``, descending graded-reverse-lex."""
        if n < 0:
            return []
        out: list[Monomial] = []
        if all(g == 1 for g in self.grading):
            for combo in combinations_with_replacement(range(self.nvars), n):
                exps = [0] * self.nvars
                for i in combo:
                    exps[i] += 1
                out.append(tuple(exps))
        else:
            out = list(_weighted_monomials(self.grading, n))
        out.sort(key=grevlex_key, reverse=True)
        return out

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


def _weighted_monomials(grading, n, start=0):
    if start == len(grading):
        if n == 0:
            yield ()
        return
    g = grading[start]
    for e in range(n // g + 1):
        for rest in _weighted_monomials(grading, n - g * e, start + 1):
            yield (e,) + rest


# --- term orders -----------------------------------------------------------
#
# An order is realised as a sort key on exponent tuples; larger key = larger
# monomial.  Weight-refined orders take the *minimum* weight as leading, which
# internally means sorting on the negated weight.


def lex_key(exps: Monomial):
    return exps


def grevlex_key(exps: Monomial):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class TermOrder:
    """A total monomial order: ``lex``, ``grevlex`` or ``weight`` refined."""

    __slots__ = ("kind", "weights", "tiebreak", "grading", "_key")

    def __init__(self, kind: str, weights: "WeightVector | None" = None,
                 tiebreak: "TermOrder | None" = None, grading: Sequence[int] | None = None):
        if kind not in ("lex", "grevlex", "weight"):
            raise ValueError(f"unknown term order {kind!r}")
        if kind == "weight":
            if weights is None:
                raise ValueError("weight-refined order needs a weight vector")
            tiebreak = tiebreak if tiebreak is not None else GREVLEX
        self.kind = kind
        self.weights = weights
        self.tiebreak = tiebreak
        self.grading = tuple(grading) if grading is not None else None
        self._key = self._make_key()

    def _make_key(self) -> Callable:
        if self.kind == "lex":
            return lex_key
        if self.kind == "grevlex":
            return grevlex_key
        w = self.weights.weights
        tb = self.tiebreak.key
        g = self.grading
        # graded first, so that on homogeneous input the order is well founded
        if g is None:
            return lambda e: (sum(e), -sum(a * b for a, b in zip(w, e) if b), tb(e))
        return lambda e: (
            sum(a * b for a, b in zip(g, e)), -sum(a * b for a, b in zip(w, e) if b), tb(e)
        )

    @property
    def key(self) -> Callable:
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, TermOrder)
            and self.kind == other.kind
            and self.weights == other.weights
            and self.tiebreak == other.tiebreak
            and self.grading == other.grading
        )

    def __hash__(self):
        return hash((self.kind, self.weights, self.tiebreak, self.grading))

    def __repr__(self):
        if self.kind == "weight":
            return f"TermOrder(weight={self.weights.weights!r}, tiebreak={self.tiebreak!r})"
        return f"TermOrder({self.kind!r})"

    @classmethod
    def weight_refined(cls, weights, tiebreak: "TermOrder | None" = None,
                       grading: Sequence[int] | None = None) -> "TermOrder":
        """Minimum ``weights`` first, then ``tiebreak``; graded by ``grading``."""
        if not isinstance(weights, WeightVector):
            weights = WeightVector(weights)
        if grading is not None and all(g == 1 for g in grading):
            grading = None
        return cls("weight", weights, tiebreak, grading)


LEX = TermOrder("lex")
GREVLEX = TermOrder("grevlex")


class WeightVector:
    """Non-negative rational weights, one per variable."""

    __slots__ = ("weights",)

    def __init__(self, weights: Iterable):
        ws = tuple(Fraction(w) for w in weights)
        if any(w < 0 for w in ws):
            raise ValueError("weights must be non-negative")
        self.weights = ws

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __eq__(self, other):
        return isinstance(other, WeightVector) and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return f"WeightVector({[str(w) for w in self.weights]})"

    def is_positive(self) -> bool:
        return all(w > 0 for w in self.weights)

    def of(self, exps: Monomial) -> Fraction:
        if len(exps) != len(self.weights):
            raise ValueError("weight vector length does not match exponent length")
        return sum((w * e for w, e in zip(self.weights, exps) if e), Fraction(0))


# --- polynomials -------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        out = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != ring.nvars or any(x < 0 for x in e):
                raise ValueError(f"exponent {e} does not fit a ring with {ring.nvars} variables")
            c = Fraction(c)
            if c:
                out[e] = out.get(e, 0) + c
        self._terms = {e: c for e, c in out.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # trusted constructor: terms already nonzero Fractions
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # container-ish protocol
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=grevlex_key, reverse=True)

    def coefficient(self, exps: Monomial) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        for e in self.monomials():
            yield e, self._terms[e]

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})

    def mul_monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        c = Fraction(coeff)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self._terms.items()},
        )

    # gradings and orders
    def degree(self) -> int:
        """Graded degree of the top component; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(self.ring.degree(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(e) for e in self._terms}) <= 1

    def homogeneous_component(self, n: int) -> "Polynomial":
        return Polynomial._raw(
            self.ring, {e: c for e, c in self._terms.items() if self.ring.degree(e) == n}
        )

    def leading_monomial(self, order: TermOrder = GREVLEX) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: TermOrder = GREVLEX) -> Fraction:
        return self._terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _format_monomial(ring: PolynomialRing, exps: Monomial) -> str:
    parts = []
    for name, e in zip(ring.variables, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: descending graded-reverse-lex, coefficients in lowest terms."""
    if not f._terms:
        return "0"
    chunks = []
    for i, e in enumerate(f.monomials()):
        c = f._terms[e]
        mono = _format_monomial(f.ring, e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


# --- parser ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))", re.S)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, ident, sym = m.groups()
        start = m.start(m.lastindex) if m.lastindex else pos
        if num is not None:
            tokens.append(("num", int(num), start))
        elif ident is not None:
            tokens.append(("id", ident, start))
        elif sym is not None:
            if sym.isspace():
                pos = m.end()
                continue
            if sym not in "+-*^/()":
                raise ParseError(f"unexpected character {sym!r}", text, start)
            tokens.append((sym, sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolynomialRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}")
        self.i += 1
        return tok

    def fail(self, message):
        tok = self.peek()
        found = "end of input" if tok[0] == "end" else repr(self.text[tok[2]:tok[2] + 8])
        raise ParseError(f"{message}, found {found}", self.text, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty input (spell the zero polynomial as '0')", self.text, 0)
        p = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[0] in ("num", "id", "("):
                self.fail("implicit multiplication is not allowed; use '*'")
            self.fail("unexpected token")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Polynomial:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            if self.peek()[0] != "num":
                self.fail("exponent must be a non-negative integer")
            base = base ** self.take()[1]
        return base

    def atom(self) -> Polynomial:
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                if self.peek()[0] != "num":
                    self.fail("malformed rational: denominator must be an integer literal")
                den = self.take()[1]
                if den == 0:
                    raise ParseError("malformed rational: zero denominator", self.text, pos)
                return self.ring.constant(Fraction(value, den))
            return self.ring.constant(value)
        if kind == "id":
            self.take()
            if value not in self.ring._index:
                raise ParseError(f"undeclared variable {value!r}", self.text, pos)
            return self.ring.gen(value)
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if kind == "/":
            self.fail("division is only allowed inside a rational literal p/q")
        self.fail("expected a number, variable or '('")


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse ``text`` into a canonical :class:`Polynomial` of ``ring``.

    Grammar: sums of products of rational literals ``p/q``, integers,
    declared variables, ``^`` integer powers and parenthesised expressions.
    Multiplication must be written with ``*``.
    """
    return _Parser(text, ring).parse()


# --- valuations ---------------------------------------------------------------


def _check_dims(f: Polynomial, w: WeightVector):
    if len(w) != f.ring.nvars:
        raise ValueError(
            f"weight vector has length {len(w)} but the ring has {f.ring.nvars} variables"
        )


def weight_value(f: Polynomial, w: WeightVector | Sequence):
    """Minimum ``w``-weight over the support of ``f``; ``math.inf`` for zero."""
    if not isinstance(w, WeightVector):
        w = WeightVector(w)
    _check_dims(f, w)
    if not f._terms:
        return INFINITY
    return min(w.of(e) for e in f._terms)


def initial_form(f: Polynomial, w: WeightVector | Sequence) -> Polynomial:
    """Sum of the terms of ``f`` of minimal ``w``-weight."""
    if not isinstance(w, WeightVector):
        w = WeightVector(w)
    _check_dims(f, w)
    if not f._terms:
        raise ValueError("the zero polynomial has no initial form")
    weights = {e: w.of(e) for e in f._terms}
    low = min(weights.values())
    return Polynomial._raw(f.ring, {e: c for e, c in f._terms.items() if weights[e] == low})
