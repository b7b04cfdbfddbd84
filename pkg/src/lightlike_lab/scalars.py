"""Exact arithmetic in the quadratic extension Q(sigma), sigma^2 = p*sigma + q.

sigma is the positive root (p + sqrt(p^2 + 4q)) / 2.  Every scalar in
the package is a QuadScalar: a pair of Fractions (a, b) standing for
a + b*sigma, tagged with the integer parameters (p, q).  All ring and
field operations, the sign, and ordering are exact; floats only enter
through the one-way embed/__float__ bridge used by oracles.

When p^2 + 4q is a perfect square sigma itself is rational and the
representation would be non-unique, so construction collapses b into a
and the invariant b == 0 holds for every value with such parameters.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivByZero, ParamError, ParseError

RationalLike = Union[int, Fraction]


def _is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


@dataclass(frozen=True)
class MetallicParams:
    """Integer parameters (p, q) of the defining relation sigma^2 = p*sigma + q.

    Constraints: p >= 0, q >= 1, and p + q >= 2 so that sigma > 1.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise ParamError("p and q must be integers")
        if isinstance(self.p, bool) or isinstance(self.q, bool):
            raise ParamError("p and q must be integers")
        if self.p < 0:
            raise ParamError(f"p must be nonnegative, got {self.p}")
        if self.q < 1:
            raise ParamError(f"q must be positive, got {self.q}")
        if self.p + self.q < 2:
            raise ParamError(
                f"need p + q >= 2 so that sigma > 1, got p={self.p} q={self.q}"
            )

    @property
    def discriminant(self) -> int:
        return self.p * self.p + 4 * self.q

    @property
    def square_discriminant(self) -> bool:
        """True when sigma is rational and the sigma-part of every scalar is folded away."""
        return _is_perfect_square(self.discriminant)

    def sigma_rational(self) -> Fraction:
        """Exact value of sigma, only defined when the discriminant is a square."""
        if not self.square_discriminant:
            raise ParamError("sigma is irrational for these parameters")
        return Fraction(self.p + math.isqrt(self.discriminant), 2)


def _coerce_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    raise TypeError(f"cannot treat {type(value).__name__} as a rational")


@dataclass(frozen=True, eq=False)
class QuadScalar:
    """a + b*sigma with exact Fraction coefficients."""

    a: Fraction
    b: Fraction
    params: MetallicParams

    def __init__(
        self,
        a: RationalLike,
        b: RationalLike,
        params: MetallicParams,
    ) -> None:
        fa = _coerce_fraction(a)
        fb = _coerce_fraction(b)
        if fb != 0 and params.square_discriminant:
            fa = fa + fb * params.sigma_rational()
            fb = Fraction(0)
        object.__setattr__(self, "a", fa)
        object.__setattr__(self, "b", fb)
        object.__setattr__(self, "params", params)

    # ---- constructors ----

    @classmethod
    def _fast(cls, fa: Fraction, fb: Fraction, params: MetallicParams) -> "QuadScalar":
        """Internal: both coefficients are already normalized Fractions.

        Arithmetic on normalized values stays normalized (a square
        discriminant forces b = 0, and sums and products of b = 0
        values keep b = 0), so the constructor checks can be skipped.
        """
        self = object.__new__(cls)
        object.__setattr__(self, "a", fa)
        object.__setattr__(self, "b", fb)
        object.__setattr__(self, "params", params)
        return self

    @classmethod
    def of(cls, value: RationalLike, params: MetallicParams) -> "QuadScalar":
        return cls(value, 0, params)

    @classmethod
    def zero(cls, params: MetallicParams) -> "QuadScalar":
        return cls(0, 0, params)

    @classmethod
    def one(cls, params: MetallicParams) -> "QuadScalar":
        return cls(1, 0, params)

    @classmethod
    def sigma(cls, params: MetallicParams) -> "QuadScalar":
        return cls(0, 1, params)

    # ---- structure ----

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _check_params(self, other: "QuadScalar") -> None:
        if self.params != other.params:
            raise ParamError(
                f"mixed structure parameters {self.params} vs {other.params}"
            )

    def _lift(self, value: object) -> "QuadScalar":
        if isinstance(value, QuadScalar):
            self._check_params(value)
            return value
        return QuadScalar(_coerce_fraction(value), 0, self.params)

    # ---- ring operations ----

    def __add__(self, other: object) -> "QuadScalar":
        if type(other) is QuadScalar:
            if self.params is not other.params:
                self._check_params(other)
            return QuadScalar._fast(self.a + other.a, self.b + other.b, self.params)
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return QuadScalar._fast(self.a + o.a, self.b + o.b, self.params)

    __radd__ = __add__

    def __neg__(self) -> "QuadScalar":
        return QuadScalar._fast(-self.a, -self.b, self.params)

    def __sub__(self, other: object) -> "QuadScalar":
        if type(other) is QuadScalar:
            if self.params is not other.params:
                self._check_params(other)
            return QuadScalar._fast(self.a - other.a, self.b - other.b, self.params)
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return QuadScalar._fast(self.a - o.a, self.b - o.b, self.params)

    def __rsub__(self, other: object) -> "QuadScalar":
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "QuadScalar":
        if type(other) is QuadScalar:
            o = other
            if self.params is not o.params:
                self._check_params(o)
        else:
            try:
                o = self._lift(other)
            except TypeError:
                return NotImplemented
        # (a + b s)(c + d s) = ac + bd q + (ad + bc + bd p) s  using s^2 = p s + q
        a, b, c, d = self.a, self.b, o.a, o.b
        if not b:
            if not d:
                return QuadScalar._fast(a * c, b, self.params)
            return QuadScalar._fast(a * c, a * d, self.params)
        if not d:
            return QuadScalar._fast(a * c, b * c, self.params)
        p, q = self.params.p, self.params.q
        bd = b * d
        return QuadScalar._fast(
            a * c + bd * q,
            a * d + b * c + bd * p,
            self.params,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadScalar":
        """Image under sigma -> p - sigma, the other root of the defining relation."""
        return QuadScalar(self.a + self.b * self.params.p, -self.b, self.params)

    def field_norm(self) -> Fraction:
        """self * self.conjugate(), always rational."""
        p, q = self.params.p, self.params.q
        return self.a * self.a + self.a * self.b * p - self.b * self.b * q

    def inverse(self) -> "QuadScalar":
        n = self.field_norm()
        if n == 0:
            # norm vanishes only at zero: sigma irrational excludes a = -b*sigma,
            # and square discriminants collapse to b == 0 where norm == a^2
            raise DivByZero("inverse of zero")
        c = self.conjugate()
        return QuadScalar(c.a / n, c.b / n, self.params)

    def __truediv__(self, other: object) -> "QuadScalar":
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "QuadScalar":
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "QuadScalar":
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadScalar.one(self.params)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ---- equality ----

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadScalar):
            if self.b == 0 and other.b == 0:
                # rationals are the same number regardless of which
                # extension they were tagged with
                return self.a == other.a
            return (
                self.params == other.params
                and self.a == other.a
                and self.b == other.b
            )
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.params))

    # ---- order ----

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}, no floating point involved."""
        if self.b == 0:
            if self.a == 0:
                return 0
            return 1 if self.a > 0 else -1
        # never reached for square discriminants (b collapses to 0 there)
        p, q = self.params.p, self.params.q
        t = -self.a / self.b
        chi = t * t - p * t - q
        # sign(a + b sigma) = sign(b) * sign(sigma - t); sigma is the larger root
        # of chi, so sigma > t iff chi(t) < 0 or (chi(t) > 0 and t < p/2).
        # chi(t) == 0 would make sigma rational, impossible here.
        assert chi != 0
        if chi < 0:
            s = 1
        else:
            s = 1 if t < Fraction(p, 2) else -1
        return s if self.b > 0 else -s

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __lt__(self, other: object) -> bool:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other: object) -> bool:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other: object) -> bool:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other: object) -> bool:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() >= 0

    def __abs__(self) -> "QuadScalar":
        return -self if self.sign() < 0 else self

    # ---- embedding into the reals ----

    def embed(self, places: int) -> Fraction:
        """Rational approximation within 10**-places of the real value.

        Exact for rational scalars.  Otherwise sqrt(discriminant) is
        bracketed by a scaled integer square root taken with enough
        guard digits to absorb the b/2 multiplier.
        """
        if places < 0:
            raise ValueError("places must be nonnegative")
        if self.b == 0:
            return self.a
        d = self.params.discriminant
        guard = len(str(abs(self.b.numerator))) + 1
        t = places + guard
        scale = 10**t
        root_floor = Fraction(math.isqrt(d * scale * scale), scale)
        # a + b(p + sqrt(d))/2 with sqrt(d) in [root_floor, root_floor + 10^-t)
        return self.a + self.b * (self.params.p + root_floor) / 2

    def __float__(self) -> float:
        return float(self.embed(20))

    # ---- text ----

    def to_string(self) -> str:
        """Canonical text, round-tripped by parse_scalar."""
        if self.b == 0:
            return str(self.a)
        mag = -self.b if self.b < 0 else self.b
        s_term = "s" if mag == 1 else f"{mag}*s"
        if self.a == 0:
            return s_term if self.b > 0 else f"-{s_term}"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {s_term}"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"QuadScalar({self.to_string()!r}, p={self.params.p}, q={self.params.q})"


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coef>\d+(?:/\d+)?)(?:\s*\*?\s*(?P<sym_after>s))?
          | (?P<sym>s)
        )\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str, params: MetallicParams) -> QuadScalar:
    """Parse sums of rational and sigma terms: '3/2', '-s', '1 - 2/3*s'.

    The symbol s stands for sigma.  Whitespace is free, '*' between a
    coefficient and s is optional.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected scalar text, got {type(text).__name__}")
    pos = 0
    a = Fraction(0)
    b = Fraction(0)
    saw_term = False
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"bad scalar text at offset {pos}: {text!r}")
        if saw_term and m.group("sign") is None:
            raise ParseError(f"missing sign between terms in {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coef_text = m.group("coef")
        if coef_text is not None:
            if "/" in coef_text:
                num, den = coef_text.split("/")
                if int(den) == 0:
                    raise ParseError(f"zero denominator in {text!r}")
                coef = Fraction(int(num), int(den))
            else:
                coef = Fraction(int(coef_text))
            if m.group("sym_after"):
                b += sign * coef
            else:
                a += sign * coef
        else:
            b += sign * 1
        saw_term = True
        pos = m.end()
    if not saw_term:
        raise ParseError(f"empty scalar text {text!r}")
    return QuadScalar(a, b, params)


def metallic_number(params: MetallicParams) -> QuadScalar:
    """The positive root of x^2 = p*x + q, as an exact scalar.

    (1, 1) gives the golden ratio (1+sqrt 5)/2, (2, 1) the silver
    ratio 1+sqrt 2; embed() produces decimal approximations.
    """
    return QuadScalar.sigma(params)


GOLDEN = MetallicParams(1, 1)
SILVER = MetallicParams(2, 1)
