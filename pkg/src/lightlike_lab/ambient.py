"""Flat semi-Euclidean ambient spaces and metallic structure endomorphisms.

A SignatureSpace is R^n with the diagonal bilinear form given by a
tuple of +1/-1 weights.  A structure endomorphism J is any matrix; the
validators below decide whether it satisfies the defining quadratic
relation J^2 = p J + q I and whether it is self-adjoint for the form,
reporting exact witnesses for every violated entry instead of a bare
boolean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import ShapeError, ValidationError
from .linalg import (
    Mat,
    Subspace,
    Vec,
    identity,
    mat_mul,
    mat_vec,
    null_space,
)
from .scalars import MetallicParams, QuadScalar


@dataclass(frozen=True)
class SignatureSpace:
    """R^n with the form <u, v> = sum_i eps_i u_i v_i, eps_i in {+1, -1}."""

    dim: int
    eps: Tuple[int, ...]
    params: MetallicParams

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValidationError("ambient dimension must be positive")
        if len(self.eps) != self.dim:
            raise ShapeError(
                f"signature length {len(self.eps)} vs dimension {self.dim}"
            )
        for i, e in enumerate(self.eps):
            if e not in (1, -1) or isinstance(e, bool):
                raise ValidationError(f"signature entry {i} must be +1 or -1, got {e!r}")

    @property
    def index(self) -> int:
        """Number of negative directions."""
        return sum(1 for e in self.eps if e == -1)

    def inner(self, u: Vec, v: Vec) -> QuadScalar:
        if len(u) != self.dim or len(v) != self.dim:
            raise ShapeError("vector length does not match ambient dimension")
        acc = QuadScalar.zero(self.params)
        for e, x, y in zip(self.eps, u, v):
            acc = acc + e * x * y
        return acc

    def basis_vector(self, i: int) -> Vec:
        if not 0 <= i < self.dim:
            raise ShapeError(f"basis index {i} out of range")
        one = QuadScalar.one(self.params)
        zero = QuadScalar.zero(self.params)
        return tuple(one if j == i else zero for j in range(self.dim))

    def zero(self) -> Vec:
        z = QuadScalar.zero(self.params)
        return tuple(z for _ in range(self.dim))

    def orthogonal_complement(self, sub: Subspace) -> Subspace:
        """All vectors orthogonal to sub.  The form is nondegenerate, so
        dimensions are complementary even when the two spaces overlap."""
        if sub.ambient_dim != self.dim:
            raise ShapeError("subspace does not live in this ambient space")
        rows = tuple(
            tuple(self.eps[j] * b[j] for j in range(self.dim)) for b in sub.basis
        )
        kernel = null_space(rows, self.dim, self.params)
        return Subspace(kernel, self.dim, self.params)

    def gram(self, vectors: Sequence[Vec]) -> Mat:
        return tuple(tuple(self.inner(u, v) for v in vectors) for u in vectors)


@dataclass(frozen=True)
class StructureDefect:
    """One exact counterexample entry from a validator."""

    code: str
    row: int
    col: int
    got: QuadScalar
    expected: QuadScalar

    def message(self) -> str:
        return (
            f"{self.code} at ({self.row}, {self.col}): "
            f"got {self.got}, expected {self.expected}"
        )


def diag_branches(params: MetallicParams, pattern: Sequence[str]) -> Mat:
    """Diagonal structure matrix from a branch pattern.

    Each entry is 'sigma' or 'p-sigma', the two roots of the defining
    quadratic.  Any such diagonal matrix satisfies both validators.
    """
    sigma = QuadScalar.sigma(params)
    other = QuadScalar(params.p, -1, params)
    zero = QuadScalar.zero(params)
    diag = []
    for i, name in enumerate(pattern):
        if name == "sigma":
            diag.append(sigma)
        elif name == "p-sigma":
            diag.append(other)
        else:
            raise ValidationError(
                f"branch {i} must be 'sigma' or 'p-sigma', got {name!r}"
            )
    n = len(diag)
    return tuple(
        tuple(diag[i] if i == j else zero for j in range(n)) for i in range(n)
    )


def validate_metallic(
    matrix: Mat, params: MetallicParams
) -> Tuple[bool, List[StructureDefect]]:
    """Check J^2 = p J + q I entry by entry."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ShapeError("structure matrix must be square and nonempty")
    square = mat_mul(matrix, matrix)
    ident = identity(n, params)
    defects = []
    for i in range(n):
        for j in range(n):
            expected = params.p * matrix[i][j] + params.q * ident[i][j]
            if square[i][j] != expected:
                defects.append(
                    StructureDefect("quadratic-relation", i, j, square[i][j], expected)
                )
    return (not defects, defects)


def validate_compatibility(
    space: SignatureSpace, matrix: Mat
) -> Tuple[bool, List[StructureDefect]]:
    """Check <J e_i, e_j> = <e_i, J e_j> for all basis pairs.

    For the diagonal form this is the symmetry of eps_i * J_ij.
    """
    n = space.dim
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ShapeError("structure matrix does not match ambient dimension")
    defects = []
    for i in range(n):
        for j in range(n):
            left = space.eps[j] * matrix[j][i]  # <J e_i, e_j>
            right = space.eps[i] * matrix[i][j]  # <e_i, J e_j>
            if left != right:
                defects.append(StructureDefect("self-adjointness", i, j, left, right))
    return (not defects, defects)


def bilinear_transfer_audit(
    space: SignatureSpace, matrix: Mat
) -> List[StructureDefect]:
    """Residuals of <J e_i, J e_j> - p <e_i, J e_j> - q <e_i, e_j>.

    Implied by the two validators, so a valid structure must return an
    empty list; kept as an independent audit rather than trusted.
    """
    n = space.dim
    defects = []
    basis = [space.basis_vector(i) for i in range(n)]
    images = [mat_vec(matrix, b) for b in basis]
    zero = QuadScalar.zero(space.params)
    for i in range(n):
        for j in range(n):
            residual = (
                space.inner(images[i], images[j])
                - space.params.p * space.inner(basis[i], images[j])
                - space.params.q * space.inner(basis[i], basis[j])
            )
            if residual != zero:
                defects.append(StructureDefect("bilinear-transfer", i, j, residual, zero))
    return defects


@dataclass(frozen=True)
class MetallicStructure:
    """A validated-or-not structure endomorphism attached to its space."""

    space: SignatureSpace
    matrix: Mat

    def __post_init__(self) -> None:
        n = self.space.dim
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ShapeError("structure matrix does not match ambient dimension")

    def apply(self, v: Vec) -> Vec:
        return mat_vec(self.matrix, v)

    def validate(self) -> Tuple[bool, List[StructureDefect]]:
        ok1, d1 = validate_metallic(self.matrix, self.space.params)
        ok2, d2 = validate_compatibility(self.space, self.matrix)
        return (ok1 and ok2, d1 + d2)
