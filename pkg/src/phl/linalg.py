"""Exact dense linear algebra over the rationals.

Matrices hold Fraction (or plain int) entries inside numpy object arrays;
all arithmetic is exact. Subspaces are stored as reduced row echelon bases
with strictly increasing pivot columns, so two subspaces are equal exactly
when their basis grids are equal.

Elimination runs on integer-scaled primitive rows (cross-multiplication
followed by gcd reduction) and divides by pivots only when producing the
final canonical rows; this is equivalent to Fraction pivoting but far
faster, and the RREF output is independent of pivot choices.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "DimensionMismatch",
    "MatrixQ",
    "Subspace",
    "reduce",
    "kernel",
    "image",
    "meet",
    "join",
    "preimage",
    "map_subspace",
    "solve_right",
    "inverse",
]


class DimensionMismatch(ValueError):
    """Operands live in different ambient spaces."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _object_matrix(data) -> np.ndarray:
    if isinstance(data, np.ndarray) and data.dtype == object:
        return data
    rows = [[_frac(x) for x in row] for row in data]
    a = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        a[i, :] = row
    return a


def _row_primitive(a: np.ndarray, i: int) -> None:
    """Divide row i by the gcd of its entries (in place, integer rows)."""
    g = 0
    for x in a[i, :]:
        if x:
            g = math.gcd(g, x if x > 0 else -x)
            if g == 1:
                return
    if g > 1:
        a[i, :] = a[i, :] // g


def _int_rows(a: np.ndarray) -> np.ndarray:
    """Copy of a with each row scaled to primitive integer entries."""
    out = np.empty(a.shape, dtype=object)
    for i in range(a.shape[0]):
        denom = 1
        for x in a[i, :]:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // math.gcd(denom, x.denominator)
        row = [int(x * denom) if isinstance(x, Fraction) else int(x) * denom for x in a[i, :]]
        out[i, :] = row
        _row_primitive(out, i)
    return out


def _rref(a: np.ndarray):
    """Reduced row echelon form of an exact matrix.

    Returns (rows, pivots) where rows is a tuple of Fraction-tuples (the
    nonzero RREF rows, pivot entries equal to 1) and pivots the strictly
    increasing pivot column indices.
    """
    m = _int_rows(a)
    nr, nc = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        best = -1
        best_abs = None
        for i in range(r, nr):
            v = m[i, c]
            if v:
                av = v if v > 0 else -v
                if best_abs is None or av < best_abs:
                    best, best_abs = i, av
        if best < 0:
            continue
        if best != r:
            m[[r, best], :] = m[[best, r], :]
        p = m[r, c]
        for i in range(nr):
            if i == r:
                continue
            v = m[i, c]
            if v:
                m[i, :] = m[i, :] * p - m[r, :] * v
                _row_primitive(m, i)
        pivots.append(c)
        r += 1
        if r == nr:
            break
    rows = []
    for i, c in enumerate(pivots):
        p = m[i, c]
        rows.append(tuple(Fraction(int(x), int(p)) for x in m[i, :]))
    return tuple(rows), pivots


class MatrixQ:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_a", "_grid")

    def __init__(self, data):
        a = _object_matrix(data)
        self._a = a
        self.rows, self.cols = a.shape
        self._grid = None

    @classmethod
    def from_array(cls, a: np.ndarray) -> "MatrixQ":
        m = object.__new__(cls)
        m._a = a
        m.rows, m.cols = a.shape
        m._grid = None
        return m

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        a = np.zeros((n, n), dtype=object)
        for i in range(n):
            a[i, i] = 1
        return cls.from_array(a)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls.from_array(np.zeros((rows, cols), dtype=object))

    @property
    def array(self) -> np.ndarray:
        """Underlying object array; treat as read-only."""
        return self._a

    def grid(self):
        if self._grid is None:
            self._grid = tuple(tuple(_frac(x) for x in row) for row in self._a)
        return self._grid

    def entry(self, i: int, j: int) -> Fraction:
        return _frac(self._a[i, j])

    def row(self, i: int) -> np.ndarray:
        return self._a[i, :].copy()

    def transpose(self) -> "MatrixQ":
        return MatrixQ.from_array(self._a.T.copy())

    def __matmul__(self, other):
        if isinstance(other, MatrixQ):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.cols} != {other.rows}")
            return MatrixQ.from_array(self._a @ other._a)
        other = np.asarray(other, dtype=object)
        return self._a @ other

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        return MatrixQ.from_array(self._a + other._a)

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        return MatrixQ.from_array(self._a - other._a)

    def __neg__(self) -> "MatrixQ":
        return MatrixQ.from_array(-self._a)

    def scale(self, c) -> "MatrixQ":
        return MatrixQ.from_array(self._a * _frac(c))

    def power(self, k: int) -> "MatrixQ":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        out = MatrixQ.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def apply(self, v) -> np.ndarray:
        """Matrix-vector product m @ v (column-vector convention)."""
        return self._a @ np.asarray(v, dtype=object)

    def is_zero(self) -> bool:
        return not any(x for x in self._a.flat)

    def rank(self) -> int:
        return len(_rref(self._a)[1])

    def __eq__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.grid() == other.grid()

    def __hash__(self):
        return hash(self.grid())

    def __repr__(self):
        return f"MatrixQ({self.rows}x{self.cols})"


class Subspace:
    """Rational subspace given by its canonical reduced-row-echelon basis.

    Basis vectors are the rows of `grid`; two Subspace values are equal
    exactly when their grids are identical.
    """

    __slots__ = ("ambient_dim", "grid", "pivots", "_constraints")

    def __init__(self, ambient_dim: int, grid, pivots):
        self.ambient_dim = ambient_dim
        self.grid = grid
        self.pivots = tuple(pivots)
        self._constraints = None

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        grid = tuple(
            tuple(Fraction(1) if j == i else Fraction(0) for j in range(n)) for i in range(n)
        )
        return cls(n, grid, range(n))

    @classmethod
    def span(cls, vectors, ambient_dim: int | None = None) -> "Subspace":
        """Canonical subspace spanned by the given row vectors."""
        if isinstance(vectors, MatrixQ):
            a = vectors.array
        else:
            vectors = list(vectors)
            if not vectors:
                if ambient_dim is None:
                    raise ValueError("ambient_dim required for an empty span")
                return cls.zero(ambient_dim)
            a = _object_matrix(vectors)
        if a.shape[0] == 0:
            if ambient_dim is None:
                raise ValueError("ambient_dim required for an empty span")
            return cls.zero(ambient_dim)
        grid, pivots = _rref(a)
        return cls(a.shape[1], grid, pivots)

    @property
    def dim(self) -> int:
        return len(self.grid)

    def basis(self) -> MatrixQ:
        if not self.grid:
            return MatrixQ.zeros(0, self.ambient_dim)
        return MatrixQ(self.grid)

    def basis_array(self) -> np.ndarray:
        a = np.empty((self.dim, self.ambient_dim), dtype=object)
        for i, row in enumerate(self.grid):
            a[i, :] = row
        return a

    def contains(self, v) -> bool:
        """Exact membership of a vector (any iterable of rationals)."""
        w = [_frac(x) for x in v]
        if len(w) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(w)} in Q^{self.ambient_dim}")
        for row, p in zip(self.grid, self.pivots):
            c = w[p]
            if c:
                for j in range(p, self.ambient_dim):
                    w[j] -= c * row[j]
        return not any(w)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.grid)

    def constraints(self) -> np.ndarray:
        """Matrix C with self == {x : C @ x == 0}; cached.

        One constraint per non-pivot column, read directly off the RREF
        basis, so no extra elimination is needed.
        """
        if self._constraints is None:
            n = self.ambient_dim
            piv = set(self.pivots)
            free = [c for c in range(n) if c not in piv]
            C = np.zeros((len(free), n), dtype=object)
            for t, f in enumerate(free):
                C[t, f] = Fraction(1)
                for i, p in enumerate(self.pivots):
                    C[t, p] = -self.grid[i][f]
            self._constraints = C
        return self._constraints

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.grid == other.grid

    def __hash__(self):
        return hash((self.ambient_dim, self.grid))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def reduce(m: MatrixQ):
    """Canonical row-space basis and rank of a matrix."""
    if isinstance(m, MatrixQ):
        a = m.array
    else:
        a = _object_matrix(m)
    grid, pivots = _rref(a)
    return Subspace(a.shape[1], grid, pivots), len(pivots)


def kernel(m: MatrixQ) -> Subspace:
    """Null space {v : m @ v == 0} as a canonical subspace."""
    a = m.array if isinstance(m, MatrixQ) else _object_matrix(m)
    nr, nc = a.shape
    grid, pivots = _rref(a)
    piv_set = set(pivots)
    free = [c for c in range(nc) if c not in piv_set]
    if not free:
        return Subspace.zero(nc)
    vecs = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -grid[i][f]
        vecs.append(v)
    return Subspace.span(vecs)


def image(m: MatrixQ) -> Subspace:
    """Column space of m, i.e. the span of m @ v over all v."""
    a = m.array if isinstance(m, MatrixQ) else _object_matrix(m)
    grid, pivots = _rref(a.T)
    return Subspace(a.shape[0], grid, pivots)


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient {a.ambient_dim} != {b.ambient_dim}")


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection a ∩ b."""
    _check_same_ambient(a, b)
    ca, cb = a.constraints(), b.constraints()
    if ca.shape[0] == 0:
        return b
    if cb.shape[0] == 0:
        return a
    stacked = np.vstack([ca, cb])
    return kernel(MatrixQ.from_array(stacked))


def join(a: Subspace, b: Subspace) -> Subspace:
    """Sum a + b."""
    _check_same_ambient(a, b)
    if a.dim == 0:
        return b
    if b.dim == 0:
        return a
    return Subspace.span(list(a.grid) + list(b.grid))


def preimage(m: MatrixQ, s: Subspace) -> Subspace:
    """{v : m @ v ∈ s}."""
    if s.ambient_dim != m.rows:
        raise DimensionMismatch(f"subspace ambient {s.ambient_dim} != matrix rows {m.rows}")
    C = s.constraints()
    if C.shape[0] == 0:
        return Subspace.full(m.cols)
    return kernel(MatrixQ.from_array(C @ m.array))


def map_subspace(m: MatrixQ, s: Subspace) -> Subspace:
    """Image m(s) of a subspace under the operator m."""
    if s.ambient_dim != m.cols:
        raise DimensionMismatch(f"subspace ambient {s.ambient_dim} != matrix cols {m.cols}")
    if s.dim == 0:
        return Subspace.zero(m.rows)
    rows = (m.array @ s.basis_array().T).T
    return Subspace.span(MatrixQ.from_array(rows))


def solve_right(m: MatrixQ, b) -> np.ndarray | None:
    """One exact solution x of m @ x == b, or None if inconsistent."""
    a = m.array
    bv = np.asarray([_frac(x) for x in b], dtype=object)
    aug = np.hstack([a, bv[:, None]])
    grid, pivots = _rref(aug)
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=object)
    for i, p in enumerate(pivots):
        x[p] = grid[i][n]
    return x


def inverse(m: MatrixQ) -> MatrixQ:
    """Exact inverse of a square matrix; raises ValueError if singular."""
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.rows
    aug = np.hstack([m.array, MatrixQ.identity(n).array])
    grid, pivots = _rref(aug)
    if list(pivots) != list(range(n)):
        raise ValueError("matrix is singular")
    inv = np.empty((n, n), dtype=object)
    for i in range(n):
        inv[i, :] = grid[i][n:]
    return MatrixQ.from_array(inv)
