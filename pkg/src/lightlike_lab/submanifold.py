"""Pointwise adapted frames along polynomial immersions.

Given an immersion f: R^m -> R^n into a signature space, everything is
computed exactly at a chosen chart point: the coordinate tangent frame,
the radical (the kernel of the induced metric), a screen complement in
the tangent space, a screen complement in the normal space, and the
null transversal frame paired against the radical basis.

Two structural facts keep the constructions total.  Any complement of
the radical inside the tangent space (or inside the normal space) is
automatically nondegenerate, and the pairing matrix between the radical
and any complement of it inside the orthogonal space of both screens is
automatically invertible.  Both are asserted rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

from .ambient import SignatureSpace
from .errors import (
    ImmersionRankDrop,
    InternalInconsistency,
    LtrConstructionFailed,
    ScreenInvalid,
    ShapeError,
    ValidationError,
)
from .linalg import (
    Subspace,
    Vec,
    det,
    invert,
    lin_comb,
    rank,
    vec_scale,
    vec_sub,
)
from .polynomials import Polynomial
from .scalars import QuadScalar


class CaseKind(str, Enum):
    """Position of the radical inside tangent and normal spaces."""

    NONDEGENERATE = "nondegenerate"
    GENERIC = "generic-lightlike"  # 0 < r < min(m, k)
    COISOTROPIC = "coisotropic"  # r = k < m
    ISOTROPIC = "isotropic"  # r = m < k
    TOTALLY_LIGHTLIKE = "totally-lightlike"  # r = m = k


def classify_case(chart_dim: int, normal_dim: int, radical_dim: int) -> CaseKind:
    m, k, r = chart_dim, normal_dim, radical_dim
    if r == 0:
        return CaseKind.NONDEGENERATE
    if r == m and r == k:
        return CaseKind.TOTALLY_LIGHTLIKE
    if r == k:
        return CaseKind.COISOTROPIC
    if r == m:
        return CaseKind.ISOTROPIC
    return CaseKind.GENERIC


@dataclass(frozen=True)
class PolynomialImmersion:
    """f: R^m -> R^n with polynomial components."""

    space: SignatureSpace
    chart_dim: int
    components: Tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.chart_dim < self.space.dim:
            raise ValidationError(
                f"chart dimension {self.chart_dim} must be positive and below "
                f"the ambient dimension {self.space.dim}"
            )
        if len(self.components) != self.space.dim:
            raise ShapeError(
                f"{len(self.components)} components for ambient dimension {self.space.dim}"
            )
        for i, comp in enumerate(self.components):
            if comp.nvars != self.chart_dim:
                raise ShapeError(f"component {i} has {comp.nvars} variables")
            if comp.params != self.space.params:
                raise ShapeError(f"component {i} carries foreign scalar parameters")

    def value_at(self, point: Sequence[QuadScalar]) -> Vec:
        return tuple(c.eval(point) for c in self.components)

    def partial_polys(self, j: int) -> Tuple[Polynomial, ...]:
        """The j-th coordinate tangent field as ambient polynomial components."""
        return tuple(c.partial(j) for c in self.components)

    def tangent_frame(self, point: Sequence[QuadScalar]) -> Tuple[Vec, ...]:
        """Coordinate tangent vectors at the point; full rank or a raise."""
        if len(point) != self.chart_dim:
            raise ShapeError("point length does not match chart dimension")
        frame = tuple(
            tuple(c.partial(j).eval(point) for c in self.components)
            for j in range(self.chart_dim)
        )
        if rank(frame) != self.chart_dim:
            pretty = ", ".join(str(x) for x in point)
            raise ImmersionRankDrop(f"Jacobian rank drop at ({pretty})")
        return frame


def _greedy_complement(
    space: SignatureSpace, whole: Subspace, sub: Subspace
) -> Subspace:
    """Complement of sub inside whole from whole's canonical basis.

    First pass keeps the partial Gram matrix nondegenerate while
    growing; a second pass fills any remaining slots on independence
    alone.  The final complement is nondegenerate regardless (a vector
    of whole orthogonal to both sub and the complement sits in the
    radical of whole, which is contained in sub), and that is asserted.
    """
    if not whole.contains_subspace(sub):
        raise ShapeError("sub is not inside whole")
    target = whole.dim - sub.dim
    chosen: list = []

    def independent(v: Vec) -> bool:
        return rank(sub.basis + tuple(chosen) + (v,)) == sub.dim + len(chosen) + 1

    for v in whole.basis:
        if len(chosen) == target:
            break
        if not independent(v):
            continue
        candidate = chosen + [v]
        if det(space.gram(tuple(candidate))):
            chosen = candidate
    if len(chosen) < target:
        for v in whole.basis:
            if len(chosen) == target:
                break
            if independent(v):
                chosen.append(v)
    if len(chosen) != target:
        raise InternalInconsistency("greedy complement failed to reach full size")
    result = Subspace(tuple(chosen), space.dim, space.params)
    if result.dim and not det(space.gram(result.basis)):
        raise InternalInconsistency("complement of the radical came out degenerate")
    return result


def _validate_override(
    space: SignatureSpace,
    whole: Subspace,
    sub: Subspace,
    override: Sequence[Vec],
    label: str,
) -> Subspace:
    vectors = tuple(override)
    for v in vectors:
        if len(v) != space.dim:
            raise ScreenInvalid(f"{label}: vector length does not match ambient")
        if not whole.contains(v):
            raise ScreenInvalid(f"{label}: vector outside the bundle it must refine")
    if rank(vectors) != len(vectors):
        raise ScreenInvalid(f"{label}: spanning vectors are dependent")
    if len(vectors) != whole.dim - sub.dim:
        raise ScreenInvalid(
            f"{label}: got {len(vectors)} vectors, need {whole.dim - sub.dim}"
        )
    if rank(sub.basis + vectors) != whole.dim:
        raise ScreenInvalid(f"{label}: does not complement the radical")
    candidate = Subspace(vectors, space.dim, space.params)
    if candidate.dim and not det(space.gram(candidate.basis)):
        raise ScreenInvalid(f"{label}: induced metric on the override is degenerate")
    return candidate


def choose_screen(
    space: SignatureSpace,
    tangent: Subspace,
    radical: Subspace,
    override: Optional[Sequence[Vec]] = None,
) -> Subspace:
    """Screen distribution: a complement of the radical in the tangent space."""
    if override is not None:
        return _validate_override(space, tangent, radical, override, "screen")
    return _greedy_complement(space, tangent, radical)


def choose_normal_screen(
    space: SignatureSpace,
    normal: Subspace,
    radical: Subspace,
    override: Optional[Sequence[Vec]] = None,
) -> Subspace:
    """Screen of the normal bundle: a complement of the radical there."""
    if override is not None:
        return _validate_override(space, normal, radical, override, "normal screen")
    return _greedy_complement(space, normal, radical)


def construct_ltr(
    space: SignatureSpace,
    rad_basis: Sequence[Vec],
    screen: Subspace,
    normal_screen: Subspace,
) -> Tuple[Vec, ...]:
    """Null transversal frame N_i dual to the given radical basis.

    The N_i satisfy <N_i, xi_j> = delta_ij, <N_i, N_j> = 0 and are
    orthogonal to both screens.  Construction: inside the orthogonal
    space of the two screens, take any complement of the radical, apply
    the inverse pairing matrix, then strip quadratic self-terms.
    """
    r = len(rad_basis)
    if r == 0:
        return ()
    params = space.params
    both = screen.sum(normal_screen)
    lam = space.orthogonal_complement(both)
    radical = Subspace(tuple(rad_basis), space.dim, params)
    if lam.dim != 2 * r:
        raise LtrConstructionFailed(
            f"orthogonal space of the screens has dimension {lam.dim}, expected {2 * r}"
        )
    if not lam.contains_subspace(radical):
        raise LtrConstructionFailed("radical escaped the orthogonal space of the screens")

    chosen: list = []
    for v in lam.basis:
        if len(chosen) == r:
            break
        if rank(radical.basis + tuple(chosen) + (v,)) == r + len(chosen) + 1:
            chosen.append(v)
    if len(chosen) != r:
        raise LtrConstructionFailed("no complement of the radical inside the pairing space")

    pairing = tuple(
        tuple(space.inner(v, xi) for xi in rad_basis) for v in chosen
    )
    inv = invert(pairing)
    if inv is None:
        raise LtrConstructionFailed("pairing matrix against the radical is singular")
    # dual vectors: <tilde_i, xi_j> = delta_ij
    tilde = [lin_comb(inv[i], tuple(chosen)) for i in range(r)]
    # subtract half the mutual inner products along the radical to null them
    half = QuadScalar(1, 0, params) / QuadScalar(2, 0, params)
    out = []
    for i in range(r):
        v = tilde[i]
        for j in range(r):
            coeff = half * space.inner(tilde[i], tilde[j])
            v = vec_sub(v, vec_scale(coeff, rad_basis[j]))
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class AdaptedFrame:
    """Everything the pointwise checks need, all exact.

    tangent_jacobian keeps the coordinate order of the chart, while the
    Subspace fields carry canonical bases.  ltr[i] pairs with
    rad_basis[i].
    """

    space: SignatureSpace
    point: Tuple[QuadScalar, ...]
    tangent_jacobian: Tuple[Vec, ...]
    tangent: Subspace
    normal: Subspace
    radical: Subspace
    screen: Subspace
    normal_screen: Subspace
    ltr: Tuple[Vec, ...]
    case: CaseKind

    @property
    def rad_basis(self) -> Tuple[Vec, ...]:
        return self.radical.basis

    @property
    def radical_dim(self) -> int:
        return self.radical.dim


def build_frame(
    immersion: PolynomialImmersion,
    point: Sequence[QuadScalar],
    screen_override: Optional[Sequence[Vec]] = None,
    normal_screen_override: Optional[Sequence[Vec]] = None,
) -> AdaptedFrame:
    space = immersion.space
    jac = immersion.tangent_frame(point)
    tangent = Subspace(jac, space.dim, space.params)
    normal = space.orthogonal_complement(tangent)
    radical = tangent.intersect(normal)
    case = classify_case(tangent.dim, normal.dim, radical.dim)

    screen = choose_screen(space, tangent, radical, screen_override)
    normal_screen = choose_normal_screen(
        space, normal, radical, normal_screen_override
    )
    ltr = construct_ltr(space, radical.basis, screen, normal_screen)

    # paranoid contracts, all cheap at these sizes
    for i, n_i in enumerate(ltr):
        for j, xi in enumerate(radical.basis):
            expected = QuadScalar(1 if i == j else 0, 0, space.params)
            if space.inner(n_i, xi) != expected:
                raise InternalInconsistency("transversal frame lost duality")
        for n_j in ltr:
            if space.inner(n_i, n_j):
                raise InternalInconsistency("transversal frame is not null")
    return AdaptedFrame(
        space=space,
        point=tuple(point),
        tangent_jacobian=jac,
        tangent=tangent,
        normal=normal,
        radical=radical,
        screen=screen,
        normal_screen=normal_screen,
        ltr=ltr,
        case=case,
    )
