"""Adapted frame construction on frozen fixtures of every case kind.

The fixture arithmetic (Gram matrices, radical bases, transversal
frames) was worked out by hand; tests freeze those values and also
assert the frame contracts that must hold regardless of basis choices.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lightlike_lab.ambient import SignatureSpace
from lightlike_lab.errors import (
    ImmersionRankDrop,
    ScreenInvalid,
    ShapeError,
    ValidationError,
)
from lightlike_lab.linalg import Subspace, as_mat, as_vec, rank
from lightlike_lab.polynomials import Polynomial, parse_polynomial
from lightlike_lab.scalars import GOLDEN, MetallicParams, QuadScalar
from lightlike_lab.submanifold import (
    AdaptedFrame,
    CaseKind,
    PolynomialImmersion,
    build_frame,
    choose_screen,
    classify_case,
    construct_ltr,
)

P02 = MetallicParams(0, 2)


def immersion(space: SignatureSpace, chart_dim: int, texts) -> PolynomialImmersion:
    comps = tuple(
        parse_polynomial(t, chart_dim, space.params) for t in texts
    )
    return PolynomialImmersion(space, chart_dim, comps)


def origin(space: SignatureSpace, m: int):
    return tuple(QuadScalar.zero(space.params) for _ in range(m))


def assert_frame_contracts(frame: AdaptedFrame) -> None:
    """Contracts every adapted frame satisfies, basis choices aside."""
    space = frame.space
    r = frame.radical_dim
    m = frame.tangent.dim
    k = frame.normal.dim
    assert m + k == space.dim
    assert frame.screen.dim == m - r
    assert frame.normal_screen.dim == k - r
    assert len(frame.ltr) == r
    # screen inside tangent, normal screen inside normal, radical inside both
    assert frame.tangent.contains_subspace(frame.screen)
    assert frame.normal.contains_subspace(frame.normal_screen)
    assert frame.tangent.contains_subspace(frame.radical)
    assert frame.normal.contains_subspace(frame.radical)
    # duality and isotropy of the transversal frame
    for i, n_i in enumerate(frame.ltr):
        for j, xi in enumerate(frame.rad_basis):
            assert space.inner(n_i, xi) == (1 if i == j else 0)
        for n_j in frame.ltr:
            assert not space.inner(n_i, n_j)
        for s in frame.screen.basis:
            assert not space.inner(n_i, s)
        for z in frame.normal_screen.basis:
            assert not space.inner(n_i, z)
    # the whole ambient splits: TN + ltr + normal screen
    stacked = frame.tangent.basis + frame.ltr + frame.normal_screen.basis
    assert rank(stacked) == space.dim


# ---- worked five dimensional example ----


def worked_example_frame() -> AdaptedFrame:
    space = SignatureSpace(5, (-1, 1, -1, 1, 1), P02)
    imm = immersion(space, 3, ["u1", "0", "u2", "s*u1 + s*u2", "u3"])
    return build_frame(imm, origin(space, 3))


def test_worked_example_jacobian():
    frame = worked_example_frame()
    sigma = QuadScalar.sigma(P02)
    w1, w2, w3 = frame.tangent_jacobian
    assert w1 == as_vec([1, 0, 0, 0, 0], P02)[:3] + (sigma, QuadScalar.zero(P02))
    assert w2 == (
        QuadScalar.zero(P02),
        QuadScalar.zero(P02),
        QuadScalar.one(P02),
        sigma,
        QuadScalar.zero(P02),
    )
    assert w3 == as_vec([0, 0, 0, 0, 1], P02)


def test_worked_example_gram_and_radical():
    """sigma^2 = 2 here, so the induced metric is [[1,2,0],[2,1,0],[0,0,1]]
    and it is nondegenerate: the radical is zero."""
    frame = worked_example_frame()
    gram = frame.space.gram(frame.tangent_jacobian)
    expected = as_mat([[1, 2, 0], [2, 1, 0], [0, 0, 1]], P02)
    assert gram == expected
    assert frame.radical_dim == 0
    assert frame.case is CaseKind.NONDEGENERATE
    assert frame.ltr == ()
    assert_frame_contracts(frame)


def test_worked_example_float_oracle():
    frame = worked_example_frame()
    gram = frame.space.gram(frame.tangent_jacobian)
    gf = np.array([[float(x) for x in row] for row in gram])
    expected = np.array([[1.0, 2.0, 0.0], [2.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    assert np.max(np.abs(gf - expected)) < 1e-9
    jf = np.array([[float(x) for x in row] for row in frame.tangent_jacobian])
    assert np.linalg.matrix_rank(jf) == 3
    assert np.linalg.matrix_rank(gf) == 3


# ---- one dimensional radical, both screens nontrivial ----


def generic_r1_frame(**kwargs) -> AdaptedFrame:
    space = SignatureSpace(4, (-1, 1, 1, 1), GOLDEN)
    imm = immersion(space, 2, ["u1", "u1", "u2", "0"])
    return build_frame(imm, origin(space, 2), **kwargs)


def test_generic_r1_fixture():
    frame = generic_r1_frame()
    assert frame.case is CaseKind.GENERIC
    assert frame.radical_dim == 1
    assert frame.rad_basis == (as_vec([1, 1, 0, 0], GOLDEN),)
    assert frame.screen.basis == (as_vec([0, 0, 1, 0], GOLDEN),)
    assert frame.normal_screen.basis == (as_vec([0, 0, 0, 1], GOLDEN),)
    assert frame.ltr == (as_vec([Fraction(-1, 2), Fraction(1, 2), 0, 0], GOLDEN),)
    assert_frame_contracts(frame)


def test_screen_override_accepted():
    override = (as_vec([0, 0, 1, 0], GOLDEN),)
    frame = generic_r1_frame(screen_override=override)
    assert frame.screen.basis == override
    assert_frame_contracts(frame)


def test_screen_override_rejected():
    outside = (as_vec([0, 0, 0, 1], GOLDEN),)  # normal, not tangent
    with pytest.raises(ScreenInvalid):
        generic_r1_frame(screen_override=outside)
    not_complement = (as_vec([1, 1, 0, 0], GOLDEN),)  # the radical itself
    with pytest.raises(ScreenInvalid):
        generic_r1_frame(screen_override=not_complement)
    wrong_count = (
        as_vec([0, 0, 1, 0], GOLDEN),
        as_vec([1, 1, 0, 0], GOLDEN),
    )
    with pytest.raises(ScreenInvalid):
        generic_r1_frame(screen_override=wrong_count)
    dependent = (as_vec([0, 0, 1, 0], GOLDEN), as_vec([0, 0, 2, 0], GOLDEN))
    with pytest.raises(ScreenInvalid):
        generic_r1_frame(screen_override=dependent)


def test_normal_screen_override():
    override = (as_vec([0, 0, 0, 1], GOLDEN),)
    frame = generic_r1_frame(normal_screen_override=override)
    assert frame.normal_screen.basis == override
    bad = (as_vec([0, 0, 1, 0], GOLDEN),)
    with pytest.raises(ScreenInvalid):
        generic_r1_frame(normal_screen_override=bad)


# ---- coisotropic ----


def test_coisotropic_r1():
    space = SignatureSpace(3, (-1, 1, 1), GOLDEN)
    imm = immersion(space, 2, ["u1", "u1", "u2"])
    frame = build_frame(imm, origin(space, 2))
    assert frame.case is CaseKind.COISOTROPIC
    assert frame.radical_dim == 1
    assert frame.normal_screen.dim == 0
    assert frame.screen.basis == (as_vec([0, 0, 1], GOLDEN),)
    assert frame.ltr == (as_vec([Fraction(-1, 2), Fraction(1, 2), 0], GOLDEN),)
    assert_frame_contracts(frame)


def test_coisotropic_r2():
    space = SignatureSpace(5, (-1, -1, 1, 1, 1), GOLDEN)
    imm = immersion(space, 3, ["u1", "u2", "u1", "u2", "u3"])
    frame = build_frame(imm, origin(space, 3))
    assert frame.case is CaseKind.COISOTROPIC
    assert frame.radical_dim == 2
    n1, n2 = frame.ltr
    assert n1 == as_vec([Fraction(-1, 2), 0, Fraction(1, 2), 0, 0], GOLDEN)
    assert n2 == as_vec([0, Fraction(-1, 2), 0, Fraction(1, 2), 0], GOLDEN)
    assert_frame_contracts(frame)


# ---- isotropic ----


def test_isotropic_r2():
    space = SignatureSpace(5, (-1, -1, 1, 1, 1), GOLDEN)
    imm = immersion(space, 2, ["u1", "u2", "u1", "u2", "0"])
    frame = build_frame(imm, origin(space, 2))
    assert frame.case is CaseKind.ISOTROPIC
    assert frame.radical_dim == 2
    assert frame.screen.dim == 0
    assert frame.normal_screen.basis == (as_vec([0, 0, 0, 0, 1], GOLDEN),)
    assert_frame_contracts(frame)


# ---- totally lightlike ----


def test_totally_lightlike_line():
    space = SignatureSpace(2, (-1, 1), GOLDEN)
    imm = immersion(space, 1, ["u1", "u1"])
    frame = build_frame(imm, origin(space, 1))
    assert frame.case is CaseKind.TOTALLY_LIGHTLIKE
    assert frame.screen.dim == 0 and frame.normal_screen.dim == 0
    assert frame.ltr == (as_vec([Fraction(-1, 2), Fraction(1, 2)], GOLDEN),)
    assert_frame_contracts(frame)


# ---- mixed case with both screens, radical of rank two ----


def test_generic_r2_two_screens():
    space = SignatureSpace(6, (-1, -1, 1, 1, 1, 1), GOLDEN)
    imm = immersion(space, 3, ["u1", "u2", "u1", "u2", "u3", "u3"])
    frame = build_frame(imm, origin(space, 3))
    assert frame.case is CaseKind.GENERIC
    assert frame.radical_dim == 2
    assert frame.screen.basis == (as_vec([0, 0, 0, 0, 1, 1], GOLDEN),)
    assert frame.normal_screen.basis == (as_vec([0, 0, 0, 0, 1, -1], GOLDEN),)
    n1, n2 = frame.ltr
    assert n1 == as_vec([Fraction(-1, 2), 0, Fraction(1, 2), 0, 0, 0], GOLDEN)
    assert n2 == as_vec([0, Fraction(-1, 2), 0, Fraction(1, 2), 0, 0], GOLDEN)
    assert_frame_contracts(frame)


# ---- curvature does not disturb the pointwise frame at a critical point ----


def test_quadratic_graph_frame():
    """A paraboloid graph over a lightlike plane: at the origin the frame
    matches the linear fixture because the quadratic terms have no
    first-order contribution there."""
    space = SignatureSpace(4, (-1, 1, 1, 1), GOLDEN)
    imm = immersion(space, 2, ["u1", "u1", "u2", "u1^2 + u2^2"])
    frame = build_frame(imm, origin(space, 2))
    linear = generic_r1_frame()
    assert frame.rad_basis == linear.rad_basis
    assert frame.screen == linear.screen
    assert frame.ltr == linear.ltr
    # away from the critical point the tangent plane tips over
    one = QuadScalar.one(GOLDEN)
    frame2 = build_frame(imm, (one, one))
    assert frame2.tangent != linear.tangent
    assert_frame_contracts(frame2)


# ---- failure modes ----


def test_rank_drop_raises():
    space = SignatureSpace(3, (-1, 1, 1), GOLDEN)
    imm = immersion(space, 1, ["u1^2", "u1^2", "0"])
    with pytest.raises(ImmersionRankDrop):
        build_frame(imm, origin(space, 1))
    # fine away from the singular point
    frame = build_frame(imm, (QuadScalar.one(GOLDEN),))
    assert frame.tangent.dim == 1


def test_immersion_validation():
    space = SignatureSpace(3, (-1, 1, 1), GOLDEN)
    with pytest.raises(ValidationError):
        immersion(space, 3, ["u1", "u2", "u3"])  # chart_dim == ambient dim
    with pytest.raises(ShapeError):
        immersion(space, 1, ["u1", "u1"])  # wrong component count
    with pytest.raises(ShapeError):
        PolynomialImmersion(
            space,
            1,
            (
                Polynomial.variable(0, 2, GOLDEN),
                Polynomial.zero(2, GOLDEN),
                Polynomial.zero(2, GOLDEN),
            ),
        )


# ---- classification table ----


def test_classify_case_table():
    assert classify_case(3, 2, 0) is CaseKind.NONDEGENERATE
    assert classify_case(3, 2, 1) is CaseKind.GENERIC
    assert classify_case(3, 2, 2) is CaseKind.COISOTROPIC
    assert classify_case(2, 3, 2) is CaseKind.ISOTROPIC
    assert classify_case(2, 2, 2) is CaseKind.TOTALLY_LIGHTLIKE


# ---- random linear immersions keep the contracts ----


@settings(max_examples=120, deadline=None, derandomize=True)
@given(
    st.sampled_from(
        [(-1, 1, 1), (-1, -1, 1, 1), (-1, 1, 1, 1), (-1, -1, 1, 1, 1)]
    ),
    st.data(),
)
def test_random_linear_frames(eps, data):
    n = len(eps)
    space = SignatureSpace(n, tuple(eps), GOLDEN)
    m = data.draw(st.integers(1, n - 1), label="m")
    rows = [
        [data.draw(st.integers(-2, 2), label=f"a{i}{j}") for j in range(n)]
        for i in range(m)
    ]
    assume(rank(as_mat(rows, GOLDEN)) == m)
    comps = []
    for j in range(n):
        terms = {}
        for i in range(m):
            expos = tuple(1 if t == i else 0 for t in range(m))
            terms[expos] = QuadScalar(rows[i][j], 0, GOLDEN)
        comps.append(Polynomial(terms, m, GOLDEN))
    imm = PolynomialImmersion(space, m, tuple(comps))
    frame = build_frame(imm, origin(space, m))
    assert_frame_contracts(frame)
