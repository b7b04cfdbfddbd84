"""Dense exact linear algebra over QuadScalar.

Everything is small (ambient dimension stays in single digits), so the
implementation favors transparency: plain tuples, textbook Gaussian
elimination with deterministic first-nonzero pivoting, no fraction-free
tricks.  Division is exact in the scalar field, so elimination is too.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence, Tuple

from .errors import NotInSpan, ShapeError
from .scalars import MetallicParams, QuadScalar, RationalLike

Vec = Tuple[QuadScalar, ...]
Mat = Tuple[Vec, ...]


def as_scalar(value: object, params: MetallicParams) -> QuadScalar:
    if isinstance(value, QuadScalar):
        return value
    return QuadScalar(value, 0, params)  # type: ignore[arg-type]


def as_vec(entries: Iterable[object], params: MetallicParams) -> Vec:
    return tuple(as_scalar(e, params) for e in entries)


def as_mat(rows: Iterable[Iterable[object]], params: MetallicParams) -> Mat:
    mat = tuple(as_vec(row, params) for row in rows)
    if mat and any(len(row) != len(mat[0]) for row in mat):
        raise ShapeError("ragged rows")
    return mat


def zero_vec(n: int, params: MetallicParams) -> Vec:
    z = QuadScalar.zero(params)
    return tuple(z for _ in range(n))


def is_zero_vec(u: Vec) -> bool:
    return all(not x for x in u)


def vec_add(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise ShapeError(f"length {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise ShapeError(f"length {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: QuadScalar, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def vec_neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def lin_comb(coeffs: Sequence[QuadScalar], vectors: Sequence[Vec]) -> Vec:
    if len(coeffs) != len(vectors):
        raise ShapeError("coefficient count does not match vector count")
    if not vectors:
        raise ShapeError("empty combination needs an explicit ambient")
    acc = zero_vec(len(vectors[0]), coeffs[0].params if coeffs else vectors[0][0].params)
    for c, v in zip(coeffs, vectors):
        acc = vec_add(acc, vec_scale(c, v))
    return acc


def identity(n: int, params: MetallicParams) -> Mat:
    one = QuadScalar.one(params)
    zero = QuadScalar.zero(params)
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def mat_vec(a: Mat, x: Vec) -> Vec:
    if not a:
        return ()
    if len(a[0]) != len(x):
        raise ShapeError(f"matrix width {len(a[0])} vs vector length {len(x)}")
    if not x:
        raise ShapeError("cannot apply a width-zero matrix")
    zero = x[0] * 0
    return tuple(sum((r * s for r, s in zip(row, x)), start=zero) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if not a or not b:
        return ()
    if len(a[0]) != len(b):
        raise ShapeError(f"inner dimensions {len(a[0])} vs {len(b)}")
    bt = transpose(b)
    return tuple(
        tuple(
            sum((x * y for x, y in zip(row, col)), start=row[0] * 0)
            for col in bt
        )
        for row in a
    )


def rref(a: Mat) -> Tuple[Mat, Tuple[int, ...]]:
    """Reduced row echelon form with the pivot column indices.

    Pivoting is deterministic: first row with a nonzero entry in the
    current column.  Exact arithmetic makes stability a non-issue.
    """
    if not a:
        return (), ()
    rows = [list(r) for r in a]
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def null_space(a: Mat, ncols: int, params: MetallicParams) -> Tuple[Vec, ...]:
    """Basis of the kernel in echelon-parameter form, one vector per free column."""
    if a and len(a[0]) != ncols:
        raise ShapeError(f"declared width {ncols} vs rows of width {len(a[0])}")
    reduced, pivots = rref(a)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    one = QuadScalar.one(params)
    zero = QuadScalar.zero(params)
    basis = []
    for fc in free_cols:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


def solve(a: Mat, b: Vec) -> Optional[Vec]:
    """One solution of a x = b with free variables set to zero, or None."""
    if len(a) != len(b):
        raise ShapeError(f"matrix height {len(a)} vs rhs length {len(b)}")
    if not a:
        return ()
    ncols = len(a[0])
    params = b[0].params if b else a[0][0].params
    augmented = tuple(row + (rhs,) for row, rhs in zip(a, b))
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == ncols:
        return None  # a pivot in the rhs column: inconsistent system
    zero = QuadScalar.zero(params)
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][ncols]
    return tuple(x)


def det(a: Mat) -> QuadScalar:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        raise ShapeError("determinant of an empty matrix")
    params = a[0][0].params
    rows = [list(r) for r in a]
    result = QuadScalar.one(params)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if rows[i][c]), None)
        if pivot_row is None:
            return QuadScalar.zero(params)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            result = -result
        result = result * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


def invert(a: Mat) -> Optional[Mat]:
    """Inverse matrix, or None when singular."""
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise ShapeError("inverse needs a nonempty square matrix")
    params = a[0][0].params
    augmented = tuple(row + ident_row for row, ident_row in zip(a, identity(n, params)))
    reduced, pivots = rref(augmented)
    if tuple(pivots) != tuple(range(n)):
        return None
    return tuple(row[n:] for row in reduced)


def gram_matrix(
    vectors: Sequence[Vec], form: Callable[[Vec, Vec], QuadScalar]
) -> Mat:
    return tuple(tuple(form(u, v) for v in vectors) for u in vectors)


def generalized_cross(vectors: Sequence[Vec], eps: Sequence[int]) -> Vec:
    """The vector v with <v, w> = det(w; vectors) for the diagonal form eps.

    Takes n-1 vectors in dimension n.  Component i is eps_i times the
    signed cofactor obtained by deleting column i.
    """
    n = len(eps)
    if n < 2:
        raise ShapeError("cross product needs dimension at least 2")
    if len(vectors) != n - 1:
        raise ShapeError(f"need {n - 1} vectors in dimension {n}, got {len(vectors)}")
    if any(len(v) != n for v in vectors):
        raise ShapeError("vector length does not match dimension")
    out = []
    for i in range(n):
        minor = tuple(
            tuple(v[j] for j in range(n) if j != i) for v in vectors
        )
        cof = det(minor)
        if i % 2 == 1:
            cof = -cof
        out.append(cof * eps[i])
    return tuple(out)


class Subspace:
    """Linear subspace with a canonical reduced-echelon basis.

    Two Subspace objects compare equal exactly when they are the same
    subspace: the canonical basis is unique.
    """

    __slots__ = ("ambient_dim", "params", "basis")

    def __init__(
        self,
        spanning: Sequence[Vec],
        ambient_dim: int,
        params: MetallicParams,
    ) -> None:
        for v in spanning:
            if len(v) != ambient_dim:
                raise ShapeError(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
        self.ambient_dim = ambient_dim
        self.params = params
        reduced, pivots = rref(tuple(spanning))
        self.basis: Mat = tuple(reduced[r] for r in range(len(pivots)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length does not match ambient dimension")
        if is_zero_vec(v):
            return True
        stacked = self.basis + (v,)
        return rank(stacked) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.basis + other.basis, self.ambient_dim, self.params)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Kernel construction: coefficients (a, b) with a.U = b.V."""
        self._check_compatible(other)
        r, s = self.dim, other.dim
        if r == 0 or s == 0:
            return Subspace((), self.ambient_dim, self.params)
        columns = tuple(
            tuple(self.basis[i][row] for i in range(r))
            + tuple(-other.basis[j][row] for j in range(s))
            for row in range(self.ambient_dim)
        )
        kernel = null_space(columns, r + s, self.params)
        vectors = [
            lin_comb(k[:r], self.basis) for k in kernel
        ]
        return Subspace(tuple(vectors), self.ambient_dim, self.params)

    def _check_compatible(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("subspaces live in different ambient dimensions")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def coords_in_basis(basis: Sequence[Vec], v: Vec) -> Vec:
    """Coefficients of v in an independent spanning list, else NotInSpan."""
    if not basis:
        if is_zero_vec(v):
            return ()
        raise NotInSpan("nonzero vector against an empty basis")
    columns = transpose(tuple(basis))
    sol = solve(columns, v)
    if sol is None:
        raise NotInSpan("vector is outside the span of the basis")
    return sol
