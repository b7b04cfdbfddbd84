"""Multivariate polynomials over QuadScalar in chart variables u1..um.

Terms live in a dict keyed by exponent tuples; zero coefficients are
dropped eagerly so equality is structural.  Differentiation and
evaluation are exact.  The text format is round-trippable: sums of
terms like '3/2*u1^2*u2', '(1 - s)*u2', '(-2)', with 's' denoting
sigma and explicit '*' between all factors.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .errors import ParseError, ShapeError
from .scalars import MetallicParams, QuadScalar

Expos = Tuple[int, ...]


class Polynomial:
    """Immutable by convention; all operations return fresh objects."""

    __slots__ = ("nvars", "params", "terms")

    def __init__(
        self,
        terms: Dict[Expos, QuadScalar],
        nvars: int,
        params: MetallicParams,
    ) -> None:
        clean: Dict[Expos, QuadScalar] = {}
        for expos, coef in terms.items():
            if len(expos) != nvars:
                raise ShapeError(
                    f"exponent tuple {expos} in a polynomial of {nvars} variables"
                )
            if any(e < 0 for e in expos):
                raise ShapeError(f"negative exponent in {expos}")
            if coef:
                clean[expos] = coef
        self.terms = clean
        self.nvars = nvars
        self.params = params

    # ---- constructors ----

    @classmethod
    def constant(cls, value, nvars: int, params: MetallicParams) -> "Polynomial":
        coef = value if isinstance(value, QuadScalar) else QuadScalar(value, 0, params)
        return cls({(0,) * nvars: coef}, nvars, params)

    @classmethod
    def zero(cls, nvars: int, params: MetallicParams) -> "Polynomial":
        return cls({}, nvars, params)

    @classmethod
    def variable(cls, i: int, nvars: int, params: MetallicParams) -> "Polynomial":
        if not 0 <= i < nvars:
            raise ShapeError(f"variable index {i} out of range for {nvars} variables")
        expos = tuple(1 if j == i else 0 for j in range(nvars))
        return cls({expos: QuadScalar.one(params)}, nvars, params)

    # ---- structure ----

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def constant_term(self) -> QuadScalar:
        return self.terms.get((0,) * self.nvars, QuadScalar.zero(self.params))

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ShapeError("mixed variable counts")
        if self.params != other.params:
            raise ShapeError("mixed scalar parameters")

    # ---- ring operations ----

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        merged = dict(self.terms)
        for expos, coef in other.terms.items():
            if expos in merged:
                merged[expos] = merged[expos] + coef
            else:
                merged[expos] = coef
        return Polynomial(merged, self.nvars, self.params)

    def __neg__(self) -> "Polynomial":
        return Polynomial(
            {e: -c for e, c in self.terms.items()}, self.nvars, self.params
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out: Dict[Expos, QuadScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if key in out:
                    out[key] = out[key] + prod
                else:
                    out[key] = prod
        return Polynomial(out, self.nvars, self.params)

    def scale(self, c: QuadScalar) -> "Polynomial":
        return Polynomial(
            {e: c * v for e, v in self.terms.items()}, self.nvars, self.params
        )

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ShapeError("negative polynomial power")
        result = Polynomial.constant(1, self.nvars, self.params)
        for _ in range(exponent):
            result = result * self
        return result

    # ---- calculus and evaluation ----

    def partial(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise ShapeError(f"variable index {i} out of range")
        out: Dict[Expos, QuadScalar] = {}
        for expos, coef in self.terms.items():
            if expos[i] == 0:
                continue
            lowered = tuple(
                e - 1 if j == i else e for j, e in enumerate(expos)
            )
            contrib = coef * expos[i]
            if lowered in out:
                out[lowered] = out[lowered] + contrib
            else:
                out[lowered] = contrib
        return Polynomial(out, self.nvars, self.params)

    def eval(self, point: Sequence[QuadScalar]) -> QuadScalar:
        if len(point) != self.nvars:
            raise ShapeError(
                f"point of length {len(point)} for {self.nvars} variables"
            )
        acc = QuadScalar.zero(self.params)
        for expos, coef in self.terms.items():
            term = coef
            for x, e in zip(point, expos):
                for _ in range(e):
                    term = term * x
            acc = acc + term
        return acc

    # ---- equality ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.params == other.params
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.params, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ---- text ----

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        parts = []
        for expos in keys:
            coef = self.terms[expos]
            mono = "*".join(
                f"u{i + 1}" if e == 1 else f"u{i + 1}^{e}"
                for i, e in enumerate(expos)
                if e
            )
            text = coef.to_string()
            wrapped = f"({text})" if (" " in text or text.startswith("-")) else text
            if not mono:
                parts.append(wrapped)
            elif coef == 1:
                parts.append(mono)
            else:
                parts.append(f"{wrapped}*{mono}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()!r}, nvars={self.nvars})"


def poly_det(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by Laplace expansion: division-free, fine at these sizes."""
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ShapeError("determinant of a non-square polynomial matrix")
    if n == 1:
        return rows[0][0]
    first = rows[0]
    acc = Polynomial.zero(first[0].nvars, first[0].params)
    for j in range(n):
        if first[j].is_zero:
            continue
        minor = tuple(
            tuple(row[t] for t in range(n) if t != j) for row in rows[1:]
        )
        cof = first[j] * poly_det(minor)
        acc = acc + cof if j % 2 == 0 else acc - cof
    return acc


def poly_cross(
    rows: Sequence[Sequence[Polynomial]], eps: Sequence[int]
) -> Tuple[Polynomial, ...]:
    """Polynomial-entry version of the metric cross product.

    Takes n-1 polynomial vectors in dimension n; the result pairs to
    the determinant against any test vector, so it is orthogonal to
    every input row wherever they are evaluated.
    """
    n = len(eps)
    if len(rows) != n - 1 or n < 2:
        raise ShapeError(f"need {n - 1} vectors in dimension {n}")
    if any(len(v) != n for v in rows):
        raise ShapeError("vector length does not match dimension")
    out = []
    for i in range(n):
        minor = tuple(
            tuple(v[j] for j in range(n) if j != i) for v in rows
        )
        cof = poly_det(minor)
        if i % 2 == 1:
            cof = -cof
        if eps[i] == -1:
            cof = -cof
        out.append(cof)
    return tuple(out)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>u\d+)|(?P<sym>s)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError(f"bad character at offset {pos} in {text!r}")
            break
        if m.group("num"):
            tokens.append(("num", int(m.group("num"))))
        elif m.group("var"):
            tokens.append(("var", int(m.group("var")[1:]) - 1))
        elif m.group("sym"):
            tokens.append(("sym", "s"))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, nvars: int, params: MetallicParams):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars
        self.params = params

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of polynomial text")
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r}, got {tok!r}")

    def parse(self) -> Polynomial:
        result = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing tokens from {self.peek()!r}")
        return result

    def expr(self) -> Polynomial:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        negate = False
        while self.peek() == ("op", "-"):
            self.take()
            negate = not negate
        value = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise ParseError(f"exponent must be a literal, got {tok!r}")
            value = value ** tok[1]
        return -value if negate else value

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, payload = tok
        if kind == "num":
            numer = payload
            if self.peek() == ("op", "/"):
                self.take()
                den_tok = self.take()
                if den_tok[0] != "num" or den_tok[1] == 0:
                    raise ParseError(f"bad denominator {den_tok!r}")
                return Polynomial.constant(
                    Fraction(numer, den_tok[1]), self.nvars, self.params
                )
            return Polynomial.constant(numer, self.nvars, self.params)
        if kind == "sym":
            return Polynomial.constant(
                QuadScalar.sigma(self.params), self.nvars, self.params
            )
        if kind == "var":
            if not 0 <= payload < self.nvars:
                raise ParseError(
                    f"variable u{payload + 1} out of range for {self.nvars} variables"
                )
            return Polynomial.variable(payload, self.nvars, self.params)
        if tok == ("op", "("):
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {tok!r}")


def parse_polynomial(text: str, nvars: int, params: MetallicParams) -> Polynomial:
    if not isinstance(text, str):
        raise ParseError(f"expected polynomial text, got {type(text).__name__}")
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    return _Parser(tokens, nvars, params).parse()
