"""Dense linear algebra over a :class:`~scalarend.gf.FieldSpec`.

Matrices are 2-d numpy ``int64`` arrays of field codes; the field is passed
explicitly.  Vectors are rows and maps act on the right (``v -> v @ M``), so a
composite "first A, then B" is ``A @ B``.  Every elimination uses the same
leftmost-pivot, topmost-row order, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldSpec


class DimensionError(ValueError):
    pass


class NoSolution(ArithmeticError):
    """Raised by :func:`solve` for an inconsistent system."""


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def asmat(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise DimensionError("matrices are two dimensional")
    return a


def _eliminate(F: FieldSpec, a: np.ndarray, full: bool = True):
    """In-place row reduction; returns the pivot columns."""
    if F.q == 2 and a.size:
        return _eliminate_gf2(a, full)
    return _eliminate_dense(F, a, full)


def _eliminate_gf2(a: np.ndarray, full: bool = True):
    """Bit-packed GF(2) path: rows become uint64 words and row operations are XORs.

    Pivot order matches :func:`_eliminate_dense`, so the result is identical.
    """
    rows, cols = a.shape
    nbytes = -(-cols // 64) * 8
    packed = np.zeros((rows, nbytes), dtype=np.uint8)
    packed[:, : -(-cols // 8)] = np.packbits(a.astype(np.uint8), axis=1, bitorder="little")
    words = packed.view(np.uint64)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        byte, bit = c >> 3, np.uint8(1 << (c & 7))
        nz = np.flatnonzero(packed[r:, byte] & bit)
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            words[[r, i]] = words[[i, r]]
        hit = (packed[:, byte] & bit) != 0
        hit[r] = False
        if not full:
            hit[:r] = False
        idx = np.flatnonzero(hit)
        if idx.size:
            words[idx] ^= words[r]
        pivots.append(c)
        r += 1
    a[:] = np.unpackbits(packed, axis=1, count=cols, bitorder="little")
    return pivots


def _eliminate_dense(F: FieldSpec, a: np.ndarray, full: bool = True):
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    prime = F.m == 1
    p = F.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        lead = a[r, c]
        if lead != 1:
            a[r, c:] = F.mul(a[r, c:], F.inv(lead))
        col = a[:, c].copy()
        col[r] = 0
        if not full:
            col[:r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            prow = a[r, c:]
            if prime:
                a[idx, c:] = (a[idx, c:] - col[idx, None] * prow[None, :]) % p
            else:
                a[idx, c:] = F.sub(a[idx, c:], F.mul(col[idx, None], prow[None, :]))
        pivots.append(c)
        r += 1
    return pivots


def rref(F: FieldSpec, a) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form, pivot columns and rank (zero rows kept)."""
    a = asmat(a).copy()
    piv = _eliminate(F, a)
    return a, piv, len(piv)


def rank(F: FieldSpec, a) -> int:
    a = asmat(a).copy()
    return len(_eliminate(F, a, full=False))


def row_basis(F: FieldSpec, a) -> np.ndarray:
    """Canonical (RREF, no zero rows) basis of the row space."""
    e, _, r = rref(F, a)
    return e[:r]


def nullspace(F: FieldSpec, a) -> "Subspace":
    """Subspace of row vectors v with v @ a.T == 0, i.e. the kernel of x -> a @ x."""
    a = asmat(a)
    return Subspace(F, a.shape[1], _null_rows(F, a))


def left_nullspace(F: FieldSpec, a) -> "Subspace":
    """Subspace of row vectors v with v @ a == 0."""
    a = asmat(a)
    return Subspace(F, a.shape[0], _null_rows(F, a.T.copy()))


def _null_rows(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    e, piv, r = rref(F, a)
    n = a.shape[1]
    free = [c for c in range(n) if c not in set(piv)]
    out = zeros(len(free), n)
    if not free:
        return out
    # x_free = e_f, x_pivot[i] = -e[i, f]
    for k, f in enumerate(free):
        out[k, f] = 1
        if r:
            out[k, piv] = F.neg(e[:r, f])
    return row_basis(F, out)


def solve(F: FieldSpec, a, b) -> np.ndarray:
    """Canonical solution x of x @ a == b (free variables zero)."""
    a, b = asmat(a), asmat(b)
    if a.shape[1] != b.shape[1]:
        raise DimensionError(f"cannot solve x @ {a.shape} = {b.shape}")
    n = a.shape[0]
    # eliminate on the transposed augmented system [a.T | b.T]
    aug = np.concatenate([a.T, b.T], axis=1)
    e, piv, r = rref(F, aug)
    if any(c >= n for c in piv):
        raise NoSolution("inconsistent system")
    x = zeros(b.shape[0], n)
    for i, c in enumerate(piv):
        x[:, c] = e[i, n:]
    return x


def inverse(F: FieldSpec, a) -> np.ndarray:
    a = asmat(a)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError("inverse of a non-square matrix")
    e, piv, r = rref(F, np.concatenate([a, identity(n)], axis=1))
    if r < n or piv[n - 1] >= n:
        raise ZeroDivisionError("singular matrix")
    return e[:, n:]


def is_invertible(F: FieldSpec, a) -> bool:
    a = asmat(a)
    return a.shape[0] == a.shape[1] and rank(F, a) == a.shape[0]


def matpow(F: FieldSpec, a, e: int) -> np.ndarray:
    a = asmat(a)
    if e < 0:
        a, e = inverse(F, a), -e
    r = identity(a.shape[0])
    while e:
        if e & 1:
            r = F.dot(r, a)
        a = F.dot(a, a)
        e >>= 1
    return r


def order(F: FieldSpec, a, limit: int = 100000) -> int:
    a = asmat(a)
    one = identity(a.shape[0])
    x = a.copy()
    for k in range(1, limit + 1):
        if np.array_equal(x, one):
            return k
        x = F.dot(x, a)
    raise ArithmeticError("order exceeds limit")


def scalar_mul(F: FieldSpec, c, a) -> np.ndarray:
    return F.mul(np.asarray(a, dtype=np.int64), c)


# -- block assembly -------------------------------------------------------


def block(blocks) -> np.ndarray:
    """Assemble a grid of matrices; row heights and column widths must agree."""
    grid = [[asmat(b) for b in row] for row in blocks]
    if not grid:
        return zeros(0, 0)
    ncols = len(grid[0])
    if any(len(row) != ncols for row in grid):
        raise DimensionError("ragged block grid")
    heights = [row[0].shape[0] for row in grid]
    widths = [b.shape[1] for b in grid[0]]
    for i, row in enumerate(grid):
        for j, b in enumerate(row):
            if b.shape != (heights[i], widths[j]):
                raise DimensionError(f"block ({i},{j}) has shape {b.shape}, expected {(heights[i], widths[j])}")
    if not heights or not widths:
        return zeros(sum(heights), sum(widths))
    return np.block(grid).astype(np.int64).reshape(sum(heights), sum(widths))


def direct_sum(*mats) -> np.ndarray:
    mats = [asmat(m) for m in mats]
    out = zeros(sum(m.shape[0] for m in mats), sum(m.shape[1] for m in mats))
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def kron(F: FieldSpec, a, b) -> np.ndarray:
    a, b = asmat(a), asmat(b)
    prod = F.mul(a[:, None, :, None], b[None, :, None, :])
    return prod.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


# -- subspaces ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space with a canonical RREF basis."""

    field: FieldSpec
    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = asmat(self.basis) if self.basis.size else zeros(0, self.ambient_dim)
        if b.shape[1] != self.ambient_dim:
            raise DimensionError("basis width differs from ambient dimension")
        object.__setattr__(self, "basis", row_basis(self.field, b) if b.shape[0] else b)

    @classmethod
    def span(cls, F: FieldSpec, vectors, ambient_dim: int | None = None) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64)
        if ambient_dim is None:
            ambient_dim = v.shape[-1]
        return cls(F, ambient_dim, v.reshape(-1, ambient_dim))

    @classmethod
    def zero(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, n, zeros(0, n))

    @classmethod
    def full(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, n, identity(n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.basis]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.tobytes()))

    def _check(self, other: "Subspace"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionError("subspaces live in different ambient spaces")

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.sum(other)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient_dim, np.concatenate([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # x @ U == y @ V  <=>  (x, -y) in left kernel of [U; V]
        F = self.field
        stacked = np.concatenate([self.basis, other.basis])
        ker = left_nullspace(F, stacked).basis
        return Subspace(F, self.ambient_dim, F.dot(ker[:, : self.dim], self.basis))

    def contains(self, v) -> bool:
        v = asmat(v)
        return rank(self.field, np.concatenate([self.basis, v])) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return other.contains(self.basis) if self.dim else True

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of the rows of v in the canonical basis (RREF makes this a column pick)."""
        v = asmat(v)
        coords = v[:, self.pivots]
        if not np.array_equal(self.field.dot(coords, self.basis), v):
            raise NoSolution("vector not in subspace")
        return coords

    def complement_pivots(self) -> list[int]:
        """Standard basis positions spanning a complement (the non-pivot columns)."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def image(self, a) -> "Subspace":
        a = asmat(a)
        return Subspace(self.field, a.shape[1], self.field.dot(self.basis, a))


def kernel(F: FieldSpec, a) -> Subspace:
    """Kernel of the right action v -> v @ a."""
    return left_nullspace(F, a)


def image(F: FieldSpec, a) -> Subspace:
    """Image of the right action v -> v @ a (the row space of a)."""
    a = asmat(a)
    return Subspace(F, a.shape[1], a)


class IncrementalNullspace:
    """Left kernel of a matrix whose columns arrive in batches.

    Keeps a basis N of {x : x @ C == 0} for the columns C seen so far, so a new
    batch only costs an elimination of size dim(N) x batch.
    """

    def __init__(self, F: FieldSpec, n: int):
        self.field = F
        self.basis = identity(n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def add(self, cols) -> None:
        cols = asmat(cols)
        if self.dim == 0 or cols.shape[1] == 0:
            return
        F = self.field
        img = F.dot(self.basis, cols)
        if not img.any():
            return
        ker = left_nullspace(F, img).basis
        self.basis = F.dot(ker, self.basis)

    def result(self) -> Subspace:
        return Subspace(self.field, self.basis.shape[1], self.basis)


# -- text format ----------------------------------------------------------


def format_matrix(F: FieldSpec, a, header: bool = True) -> str:
    a = asmat(a)
    lines = [F.header()] if header else []
    lines.append(f"{a.shape[0]} {a.shape[1]}")
    lines.extend(" ".join(map(str, row)) for row in a.tolist())
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, F: FieldSpec | None = None):
    """Inverse of :func:`format_matrix`; returns (field, matrix)."""
    lines = iter([ln for ln in text.splitlines() if ln.strip()])
    if F is None:
        F = FieldSpec.from_header(next(lines))
    a = read_matrix_lines(lines, F)
    return F, a


def read_matrix_lines(lines, F: FieldSpec) -> np.ndarray:
    rows, cols = map(int, next(lines).split())
    out = zeros(rows, cols)
    for i in range(rows):
        vals = [int(t) for t in next(lines).split()]
        if len(vals) != cols:
            raise DimensionError(f"row {i} has {len(vals)} entries, expected {cols}")
        out[i] = vals
    if out.size and (out.min() < 0 or out.max() >= F.q):
        raise ValueError("entry outside the field")
    return out
