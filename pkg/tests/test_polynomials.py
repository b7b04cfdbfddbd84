"""Polynomial ring ops, partials, evaluation, text round-trip.

sympy is the independent oracle: coefficients a + b*s map to exprs in a
symbol S that is reduced modulo S^2 - p*S - q after every operation.
"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lightlike_lab.errors import ParseError, ShapeError
from lightlike_lab.polynomials import Polynomial, parse_polynomial
from lightlike_lab.scalars import GOLDEN, MetallicParams, QuadScalar

P = GOLDEN
S = sympy.Symbol("S")
U = sympy.symbols("x1 x2 x3")


def to_sympy(poly: Polynomial):
    expr = sympy.Integer(0)
    for expos, coef in poly.terms.items():
        term = sympy.Rational(coef.a.numerator, coef.a.denominator) + S * sympy.Rational(
            coef.b.numerator, coef.b.denominator
        )
        for var, e in zip(U, expos):
            term *= var**e
        expr += term
    return sympy.expand(expr)


def reduce_sigma(expr):
    """Rewrite S^2 -> p*S + q until degree in S drops below 2."""
    p, q = P.p, P.q
    expr = sympy.expand(expr)
    while sympy.degree(sympy.Poly(expr, S), S) >= 2:
        expr = sympy.expand(expr.subs(S**2, p * S + q))
    return sympy.expand(expr)


coef_st = st.builds(
    lambda a, b: QuadScalar(Fraction(a, 2), Fraction(b, 2), P),
    st.integers(-6, 6),
    st.integers(-4, 4),
)


@st.composite
def polys(draw, nvars=3, max_terms=4, max_exp=2):
    n_terms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n_terms):
        expos = tuple(
            draw(st.integers(0, max_exp)) for _ in range(nvars)
        )
        terms[expos] = draw(coef_st)
    return Polynomial(terms, nvars, P)


# ---- ring laws against sympy ----


@settings(max_examples=150, deadline=None, derandomize=True)
@given(polys(), polys())
def test_product_matches_sympy(f, g):
    ours = to_sympy(f * g)
    theirs = reduce_sigma(to_sympy(f) * to_sympy(g))
    assert sympy.expand(ours - theirs) == 0


@settings(max_examples=150, deadline=None, derandomize=True)
@given(polys(), polys(), polys())
def test_ring_laws(f, g, h):
    assert (f + g) - g == f
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


@settings(max_examples=100, deadline=None, derandomize=True)
@given(polys())
def test_partial_matches_sympy(f):
    for i in range(3):
        ours = to_sympy(f.partial(i))
        theirs = sympy.expand(sympy.diff(to_sympy(f), U[i]))
        assert sympy.expand(ours - theirs) == 0


@settings(max_examples=100, deadline=None, derandomize=True)
@given(polys(), polys())
def test_leibniz_rule(f, g):
    for i in range(3):
        lhs = (f * g).partial(i)
        rhs = f.partial(i) * g + f * g.partial(i)
        assert lhs == rhs


@settings(max_examples=100, deadline=None, derandomize=True)
@given(polys())
def test_partials_commute(f):
    assert f.partial(0).partial(1) == f.partial(1).partial(0)


# ---- evaluation ----


@settings(max_examples=100, deadline=None, derandomize=True)
@given(polys(), polys(), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_eval_is_ring_homomorphism(f, g, pt):
    point = tuple(QuadScalar(x, 0, P) for x in pt)
    assert (f * g).eval(point) == f.eval(point) * g.eval(point)
    assert (f + g).eval(point) == f.eval(point) + g.eval(point)


def test_eval_frozen():
    f = parse_polynomial("u1^2 + (1 - s)*u2 + (-3)", 2, P)
    sigma = QuadScalar.sigma(P)
    point = (QuadScalar(2, 0, P), sigma)
    # 4 + (1 - s)s - 3 = 1 + s - s^2 = 1 + s - (s + 1) = 0
    assert not f.eval(point)


# ---- text ----


@settings(max_examples=200, deadline=None, derandomize=True)
@given(polys())
def test_to_string_round_trip(f):
    assert parse_polynomial(f.to_string(), 3, P) == f


def test_parse_forms():
    f = parse_polynomial("2*u1*u2 - u1^2", 2, P)
    assert f.degree() == 2
    g = parse_polynomial("s*u1 + s^2", 1, P)
    sigma = QuadScalar.sigma(P)
    assert g.constant_term() == sigma * sigma
    assert parse_polynomial("-(u1 - u2)", 2, P) == parse_polynomial("u2 - u1", 2, P)
    assert parse_polynomial("1/2*u1^3", 1, P).degree() == 3
    assert parse_polynomial("0", 2, P).is_zero


def test_parse_rejects():
    for bad in ["", "u0", "u3", "u1 u2", "1 +", "2^u1", "(u1", "u1^-2", "3//2"]:
        with pytest.raises(ParseError):
            parse_polynomial(bad, 2, P)


def test_shape_guards():
    f = Polynomial.variable(0, 2, P)
    g = Polynomial.variable(0, 3, P)
    with pytest.raises(ShapeError):
        f + g
    with pytest.raises(ShapeError):
        f.eval((QuadScalar.zero(P),))
    with pytest.raises(ShapeError):
        f.partial(5)
    with pytest.raises(ShapeError):
        Polynomial({(-1, 0): QuadScalar.one(P)}, 2, P)


def test_degree_and_zero():
    z = Polynomial.zero(2, P)
    assert z.degree() == -1
    assert z.to_string() == "0"
    assert parse_polynomial("u1*u2^2", 2, P).degree() == 3


# ---- polynomial determinants and cross products ----


def test_poly_det_matches_scalar_det():
    from lightlike_lab.linalg import as_mat, det
    from lightlike_lab.polynomials import poly_det

    u1 = Polynomial.variable(0, 1, P)
    one = Polynomial.constant(1, 1, P)
    rows = ((u1, one), (one, u1))
    d = poly_det(rows)
    # u1^2 - 1 at u1 = 3 is 8
    three = (QuadScalar(3, 0, P),)
    assert d.eval(three) == QuadScalar(8, 0, P)
    evaled = as_mat([[3, 1], [1, 3]], P)
    assert det(evaled) == d.eval(three)


def test_poly_cross_orthogonal_everywhere():
    from lightlike_lab.polynomials import poly_cross

    eps = (-1, 1, 1)
    u1 = Polynomial.variable(0, 1, P)
    one = Polynomial.constant(1, 1, P)
    zero = Polynomial.zero(1, P)
    rows = ((one, u1, zero), (zero, one, u1))
    cross = poly_cross(rows, eps)
    for pt in [(QuadScalar(t, 0, P),) for t in (-2, 0, 5)]:
        cval = tuple(c.eval(pt) for c in cross)
        for row in rows:
            rval = tuple(c.eval(pt) for c in row)
            inner = sum(
                (e * a * b for e, a, b in zip(eps, cval, rval)),
                start=QuadScalar.zero(P),
            )
            assert not inner
