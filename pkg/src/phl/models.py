"""Graded Frobenius-algebra models of hyperkahler-type cohomology.

Two constructions are shipped:

* ``build_k3`` -- the full cohomology ring of a K3 surface: degrees
  (0, 2, 4) with dims (1, b2, 1), cup product on degree 2 given by the
  Beauville-Bogomolov form, integral(pt) = 1.

* ``build_verbitsky`` -- the subalgebra generated by degree 2 for half
  complex dimension n: degree 2d is Sym^d(H^2) for d <= n and the
  quotient of Sym^d(H^2) by the kernel of the top-degree pairing for
  d > n.  The pairing is the perfect-matching sum
  ``int x_1...x_{2n} = sum over matchings M of prod_{(a,b) in M} q(x_a, x_b)``
  (Fujiki constant normalized to 1; rescaling it moves no kernel and
  hence no dimension below).

Everything is exact: complex conjugation is modeled as the basis
involution swapping the sigma and sigma-bar tags, which is enough for
every dimension count downstream.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .filtration import NilpotentOperator
from .linalg import MatrixQ, Subspace, kernel, reduce
from .report import CheckReport

__all__ = [
    "SpecError",
    "ModelError",
    "QuadraticSpace",
    "DistinguishedClasses",
    "ModelSpec",
    "GradedAlgebraModel",
    "default_gram",
    "build_k3",
    "build_verbitsky",
    "build_model",
    "lefschetz",
    "validate",
    "all_pairings",
    "matching_integral",
    "monomials",
    "monomial_bidegree",
]


class SpecError(ValueError):
    """Malformed model spec document (schema/type level)."""


class ModelError(ValueError):
    """Spec parsed but the requested model is invalid or out of scale."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise SpecError(f"not a rational: {x!r}")


# ---------------------------------------------------------------------------
# quadratic space on degree 2
# ---------------------------------------------------------------------------


def default_gram(b2: int) -> np.ndarray:
    """Two hyperbolic pairs (sigma, sigma-bar) and (beta, beta-dual), then a
    diagonal tail: (+1, -1 x 17) for b2 = 22, all -1 otherwise."""
    g = np.zeros((b2, b2), dtype=object)
    g[0, 1] = g[1, 0] = 1
    g[2, 3] = g[3, 2] = 1
    if b2 == 22:
        g[4, 4] = 1
        for i in range(5, b2):
            g[i, i] = -1
    else:
        for i in range(4, b2):
            g[i, i] = -1
    return g


class QuadraticSpace:
    """Degree-2 coordinate space with its pairing and Hodge tags."""

    __slots__ = ("b2", "gram", "labels")

    def __init__(self, b2: int, gram: np.ndarray, labels):
        self.b2 = b2
        self.gram = gram
        self.labels = tuple(labels)
        if gram.shape != (b2, b2):
            raise ModelError(f"gram must be {b2}x{b2}")
        if self.labels.count("sigma") != 1 or self.labels.count("sigma_bar") != 1:
            raise ModelError("exactly one basis vector must carry each of sigma, sigma_bar")
        for i in range(b2):
            for j in range(i, b2):
                if gram[i, j] != gram[j, i]:
                    raise ModelError("gram is not symmetric")
        if MatrixQ.from_array(gram).rank() != b2:
            raise ModelError("gram is degenerate")
        s, sb = self.sigma_index, self.sigma_bar_index
        if gram[s, s] != 0 or gram[sb, sb] != 0:
            raise ModelError("sigma and sigma_bar must be isotropic")
        if gram[s, sb] == 0:
            raise ModelError("q(sigma, sigma_bar) must be nonzero")

    @property
    def sigma_index(self) -> int:
        return self.labels.index("sigma")

    @property
    def sigma_bar_index(self) -> int:
        return self.labels.index("sigma_bar")

    def pair(self, x, y) -> Fraction:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        return _frac((x @ self.gram @ y))

    def bidegree(self, i: int):
        return {"sigma": (2, 0), "sigma_bar": (0, 2)}.get(self.labels[i], (1, 1))


@dataclass
class DistinguishedClasses:
    """Coordinates (in the degree-2 basis) of sigma, sigma-bar, beta, omega."""

    sigma: np.ndarray
    sigma_bar: np.ndarray
    beta: np.ndarray
    omega: np.ndarray

    def as_rows(self):
        return [self.sigma, self.sigma_bar, self.beta, self.omega]


def _default_classes(b2: int) -> DistinguishedClasses:
    def e(i):
        v = np.zeros(b2, dtype=object)
        v[i] = Fraction(1)
        return v

    omega = e(2)
    omega[3] = Fraction(1)
    return DistinguishedClasses(sigma=e(0), sigma_bar=e(1), beta=e(2), omega=omega)


# ---------------------------------------------------------------------------
# model spec (JSON surface)
# ---------------------------------------------------------------------------

_SPEC_KEYS = {"kind", "n", "b2", "gram"}


@dataclass
class ModelSpec:
    kind: str
    n: int
    b2: int
    gram: np.ndarray | None = None

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ModelSpec":
        if not isinstance(doc, dict):
            raise SpecError("spec document must be a JSON object")
        unknown = set(doc) - _SPEC_KEYS
        if unknown:
            raise SpecError(f"unknown spec fields: {sorted(unknown)}")
        kind = doc.get("kind")
        if kind not in ("k3", "verbitsky"):
            raise SpecError("spec field 'kind' must be 'k3' or 'verbitsky'")
        n = doc.get("n", 1 if kind == "k3" else None)
        if n is None:
            raise SpecError("spec field 'n' is required for verbitsky models")
        if not isinstance(n, int):
            raise SpecError("spec field 'n' must be an integer")
        b2 = doc.get("b2", 22 if kind == "k3" else None)
        if b2 is None:
            raise SpecError("spec field 'b2' is required for verbitsky models")
        if not isinstance(b2, int):
            raise SpecError("spec field 'b2' must be an integer")
        gram = None
        if "gram" in doc:
            raw = doc["gram"]
            if not isinstance(raw, list) or any(not isinstance(r, list) for r in raw):
                raise SpecError("spec field 'gram' must be a matrix of rational strings")
            g = np.empty((len(raw), len(raw[0])), dtype=object)
            for i, row in enumerate(raw):
                if len(row) != len(raw[0]):
                    raise SpecError("gram rows have unequal lengths")
                for j, x in enumerate(row):
                    g[i, j] = _frac(x)
            gram = g
        return cls(kind=kind, n=n, b2=b2, gram=gram)

    def validate_scale(self) -> None:
        if self.b2 == 4:
            raise ModelError(
                "b2 = 4 is rejected: with four degree-2 directions the special orthogonal "
                "group of (H^2, q) need not act transitively on isotropic classes, so the "
                "symmetry guarantees used by the checks fail"
            )
        if self.b2 < 5:
            raise ModelError(f"b2 must be at least 5, got {self.b2}")
        if self.kind == "k3":
            if self.n != 1:
                raise ModelError("k3 models have n = 1")
        else:
            if not 1 <= self.n <= 3:
                raise ModelError(f"verbitsky models support 1 <= n <= 3, got n = {self.n}")
            cap = 22 if self.n == 1 else 8
            if self.b2 > cap:
                raise ModelError(
                    f"verbitsky models support b2 <= {cap} at n = {self.n}, got b2 = {self.b2}"
                )
        if self.gram is not None and self.gram.shape != (self.b2, self.b2):
            raise ModelError(f"gram must be {self.b2}x{self.b2}")


# ---------------------------------------------------------------------------
# symmetric-power combinatorics
# ---------------------------------------------------------------------------


def monomials(b2: int, d: int):
    """Exponent tuples of the degree-d monomial basis of Sym^d(Q^b2).

    Ordered by the sorted variable-index tuples from
    itertools.combinations_with_replacement, which is deterministic.
    """
    out = []
    for comb in itertools.combinations_with_replacement(range(b2), d):
        exp = [0] * b2
        for i in comb:
            exp[i] += 1
        out.append(tuple(exp))
    return out


def _expand(exp) -> list:
    idxs = []
    for i, e in enumerate(exp):
        idxs.extend([i] * e)
    return idxs


def monomial_bidegree(exp):
    """Hodge bidegree of a monomial: sigma counts (2,0), sigma-bar (0,2),
    every other variable (1,1); indices 0 and 1 are sigma and sigma-bar."""
    rest = sum(exp[2:])
    return (2 * exp[0] + rest, 2 * exp[1] + rest)


def all_pairings(items):
    """All partitions of the given list into unordered pairs."""
    items = list(items)
    if not items:
        yield []
        return
    first = items[0]
    rest = items[1:]
    for i, other in enumerate(rest):
        for sub in all_pairings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + sub


def matching_integral(gram: np.ndarray, indices) -> Fraction:
    """Sum over perfect matchings of prod q(x_a, x_b) for the given factor
    list; zero for an odd number of factors."""
    indices = list(indices)
    if len(indices) % 2:
        return Fraction(0)
    total = Fraction(0)
    for pairing in all_pairings(indices):
        term = Fraction(1)
        for a, b in pairing:
            term *= _frac(gram[a, b])
            if term == 0:
                break
        total += term
    return total


# ---------------------------------------------------------------------------
# the model object
# ---------------------------------------------------------------------------


class GradedAlgebraModel:
    """Graded commutative algebra with bigrading tags and marked classes.

    Degrees are the even numbers 0, 2, ..., 4n; piece d holds degree 2d.
    ``mult[(a, b)]`` is the structure tensor of piece a times piece b with
    values in piece a+b (absent above the top degree).  All data is exact
    and immutable after construction.
    """

    def __init__(self, kind, n, quad, dims, bidegrees, mult, integral_vec, classes, conj):
        self.kind = kind
        self.n = n
        self.quad = quad
        self.dims = dims  # list, piece d -> dimension
        self.bidegrees = bidegrees  # list of lists of (p, q)
        self.mult = mult  # {(a, b): object ndarray (dim_a, dim_b, dim_{a+b})}
        self.integral_vec = integral_vec  # functional on the top piece
        self.classes = classes
        self.conj = conj  # list of MatrixQ blocks, piece d
        self.pieces = 2 * n + 1
        self.offsets = [0]
        for d in range(self.pieces):
            self.offsets.append(self.offsets[-1] + dims[d])
        self.total_dim = self.offsets[-1]
        self._bidegree_coords = None

    # -- indexing helpers ---------------------------------------------------

    def block_indices(self, d: int):
        return range(self.offsets[d], self.offsets[d + 1])

    def block_subspace(self, d: int) -> Subspace:
        return _coordinate_span(self.total_dim, list(self.block_indices(d)))

    def bidegree_coords(self, d: int, p: int):
        """Global coordinates of the (p, 2d-p) part of piece d."""
        if self._bidegree_coords is None:
            table = {}
            for dd in range(self.pieces):
                off = self.offsets[dd]
                for i, (pp, qq) in enumerate(self.bidegrees[dd]):
                    table.setdefault((dd, pp), []).append(off + i)
            self._bidegree_coords = table
        return self._bidegree_coords.get((d, p), [])

    def bidegree_list(self, d: int):
        return self.bidegrees[d]

    # -- algebra operations ---------------------------------------------------

    def cup(self, da: int, va, db: int, vb):
        """Product of a piece-da vector with a piece-db vector; None above
        the top degree."""
        if da + db >= self.pieces:
            return None
        t = self.mult[(da, db)]
        va = np.asarray(va, dtype=object)
        vb = np.asarray(vb, dtype=object)
        return np.tensordot(np.tensordot(t, vb, axes=([1], [0])), va, axes=([0], [0]))

    def integral(self, v_top) -> Fraction:
        return _frac(np.asarray(v_top, dtype=object) @ self.integral_vec)

    def q(self, x, y) -> Fraction:
        return self.quad.pair(x, y)

    def lefschetz_matrix(self, x) -> MatrixQ:
        """Global cup-product-with-x operator for a degree-2 class x."""
        x = np.asarray(x, dtype=object)
        out = np.zeros((self.total_dim, self.total_dim), dtype=object)
        for d in range(self.pieces - 1):
            t = self.mult[(1, d)]
            block = np.tensordot(x, t, axes=([0], [0]))  # (dim_d, dim_{d+1})
            out[self.offsets[d + 1] : self.offsets[d + 2], self.offsets[d] : self.offsets[d + 1]] = block.T
        return MatrixQ.from_array(out)

    def conj_matrix(self) -> MatrixQ:
        out = np.zeros((self.total_dim, self.total_dim), dtype=object)
        for d in range(self.pieces):
            o = self.offsets[d]
            out[o : o + self.dims[d], o : o + self.dims[d]] = self.conj[d].array
        return MatrixQ.from_array(out)

    # -- gradings -------------------------------------------------------------

    def degree_diag(self):
        """Eigenvalue m - 2n on the degree-m piece."""
        return tuple(2 * d - 2 * self.n for d in range(self.pieces) for _ in range(self.dims[d]))

    def hodge_q_diag(self):
        """Eigenvalue q - n on a (p, q) basis vector."""
        return tuple(
            pq[1] - self.n for d in range(self.pieces) for pq in self.bidegrees[d]
        )

    def pq_difference_diag(self):
        return tuple(pq[0] - pq[1] for d in range(self.pieces) for pq in self.bidegrees[d])

    # -- distinguished-class surgery -------------------------------------------

    def rescale_classes(self, beta_scale=1, sigma_scale=1) -> "GradedAlgebraModel":
        """Copy of the model with beta scaled by beta_scale and the
        symplectic pair sigma, sigma-bar jointly scaled by sigma_scale
        (joint so that conj still swaps them exactly)."""
        b = _frac(beta_scale)
        s = _frac(sigma_scale)
        if b == 0 or s == 0:
            raise ModelError("class rescalings must be nonzero")
        cls = DistinguishedClasses(
            sigma=self.classes.sigma * s,
            sigma_bar=self.classes.sigma_bar * s,
            beta=self.classes.beta * b,
            omega=self.classes.omega.copy(),
        )
        clone = object.__new__(GradedAlgebraModel)
        clone.__dict__.update(self.__dict__)
        clone.classes = cls
        return clone


def _coordinate_span(n: int, coords) -> Subspace:
    grid = []
    for c in coords:
        row = [Fraction(0)] * n
        row[c] = Fraction(1)
        grid.append(tuple(row))
    return Subspace(n, tuple(grid), tuple(coords))


def lefschetz(model: GradedAlgebraModel, x) -> NilpotentOperator:
    """Cup product with a degree-2 class as a validated nilpotent operator."""
    return NilpotentOperator(model.lefschetz_matrix(x))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def _quad_from_spec(spec: ModelSpec) -> QuadraticSpace:
    gram = spec.gram if spec.gram is not None else default_gram(spec.b2)
    labels = ["sigma", "sigma_bar"] + ["hodge11"] * (spec.b2 - 2)
    return QuadraticSpace(spec.b2, gram, labels)


def _check_classes(quad: QuadraticSpace, classes: DistinguishedClasses) -> list:
    """Invariant violations of the distinguished classes, as witness strings."""
    bad = []
    q = quad.pair
    if q(classes.beta, classes.beta) != 0:
        bad.append("q(beta, beta) != 0")
    s, sb = quad.sigma_index, quad.sigma_bar_index
    if classes.beta[s] != 0 or classes.beta[sb] != 0:
        bad.append("beta is not of type (1,1)")
    if q(classes.omega, classes.omega) == 0:
        bad.append("q(omega, omega) == 0")
    if q(classes.beta, classes.omega) == 0:
        bad.append("q(beta, omega) == 0")
    if q(classes.sigma, classes.sigma_bar) == 0:
        bad.append("q(sigma, sigma_bar) == 0")
    _, rank = reduce(MatrixQ(classes.as_rows()))
    if rank != 4:
        bad.append("sigma, sigma_bar, beta, omega are linearly dependent")
    return bad


def build_k3(spec: ModelSpec) -> GradedAlgebraModel:
    """K3 cohomology ring: degrees (0, 2, 4), dims (1, b2, 1)."""
    if spec.kind != "k3":
        raise ModelError("build_k3 requires kind = k3")
    spec.validate_scale()
    quad = _quad_from_spec(spec)
    b2 = spec.b2
    dims = [1, b2, 1]
    bidegrees = [
        [(0, 0)],
        [quad.bidegree(i) for i in range(b2)],
        [(2, 2)],
    ]
    mult = {}
    t00 = np.zeros((1, 1, 1), dtype=object)
    t00[0, 0, 0] = Fraction(1)
    mult[(0, 0)] = t00
    for d, dim in ((1, b2), (2, 1)):
        t = np.zeros((1, dim, dim), dtype=object)
        for j in range(dim):
            t[0, j, j] = Fraction(1)
        mult[(0, d)] = t
        mult[(d, 0)] = t.transpose(1, 0, 2).copy()
    t11 = np.zeros((b2, b2, 1), dtype=object)
    for i in range(b2):
        for j in range(b2):
            t11[i, j, 0] = _frac(quad.gram[i, j])
    mult[(1, 1)] = t11
    integral_vec = np.array([Fraction(1)], dtype=object)
    conj2 = np.zeros((b2, b2), dtype=object)
    for i in range(b2):
        conj2[i, i] = Fraction(1)
    s, sb = quad.sigma_index, quad.sigma_bar_index
    conj2[s, s] = conj2[sb, sb] = Fraction(0)
    conj2[sb, s] = conj2[s, sb] = Fraction(1)
    conj = [MatrixQ.identity(1), MatrixQ.from_array(conj2), MatrixQ.identity(1)]
    model = GradedAlgebraModel(
        kind="k3",
        n=1,
        quad=quad,
        dims=dims,
        bidegrees=bidegrees,
        mult=mult,
        integral_vec=integral_vec,
        classes=_default_classes(b2),
        conj=conj,
    )
    _require_valid(model)
    return model


def _pairing_matrix(gram, mono_a, mono_b):
    out = np.zeros((len(mono_a), len(mono_b)), dtype=object)
    for i, a in enumerate(mono_a):
        ia = _expand(a)
        for j, b in enumerate(mono_b):
            out[i, j] = matching_integral(gram, ia + _expand(b))
    return out


class _Piece:
    """One graded piece of the symmetric-power model: a chosen monomial
    basis of Sym^d/K_d plus the projection matrix from Sym^d coordinates."""

    def __init__(self, d, mono, kern: Subspace | None):
        self.d = d
        self.mono = mono
        self.kernel = kern
        nm = len(mono)
        if kern is None or kern.dim == 0:
            self.basis_monomials = list(range(nm))
            self.proj = None  # identity
        else:
            piv = set(kern.pivots)
            self.basis_monomials = [c for c in range(nm) if c not in piv]
            proj = np.zeros((len(self.basis_monomials), nm), dtype=object)
            for t, c in enumerate(self.basis_monomials):
                proj[t, c] = Fraction(1)
                for r, p in enumerate(kern.pivots):
                    proj[t, p] = -kern.grid[r][c]
            self.proj = proj

    @property
    def dim(self):
        return len(self.basis_monomials)

    def project_monomial(self, idx):
        """Coordinates of the image of the idx-th monomial."""
        if self.proj is None:
            v = np.zeros(self.dim, dtype=object)
            v[idx] = Fraction(1)
            return v
        return self.proj[:, idx].copy()


def build_verbitsky(spec: ModelSpec) -> GradedAlgebraModel:
    """Symmetric-power model generated by degree 2 in half dimension n."""
    if spec.kind != "verbitsky":
        raise ModelError("build_verbitsky requires kind = verbitsky")
    spec.validate_scale()
    quad = _quad_from_spec(spec)
    n, b2 = spec.n, spec.b2
    mono = {d: monomials(b2, d) for d in range(0, 2 * n + 1)}
    idx = {d: {m: i for i, m in enumerate(mono[d])} for d in mono}

    pieces = []
    for d in range(0, 2 * n + 1):
        if d <= n:
            pieces.append(_Piece(d, mono[d], None))
            continue
        pair_mat = _pairing_matrix(quad.gram, mono[d], mono[2 * n - d])
        kern = kernel(MatrixQ.from_array(pair_mat.T))
        piece = _Piece(d, mono[d], kern)
        if piece.dim != len(mono[2 * n - d]):
            raise ModelError(
                f"pairing kernel in degree {2 * d} has codimension {piece.dim}, "
                f"expected {len(mono[2 * n - d])}"
            )
        # the kernel must be spanned by pure-bidegree vectors, or the
        # quotient bigrading would be meaningless
        for row in kern.grid:
            for part in _bidegree_parts(row, mono[d]):
                if not kern.contains(part):
                    raise ModelError(
                        f"pairing kernel in degree {2 * d} is not bigraded"
                    )
        pieces.append(piece)

    dims = [p.dim for p in pieces]
    bidegrees = [
        [monomial_bidegree(pieces[d].mono[c]) for c in pieces[d].basis_monomials]
        for d in range(2 * n + 1)
    ]

    mult = {}
    for da in range(0, 2 * n + 1):
        for db in range(0, 2 * n + 1 - da):
            dc = da + db
            t = np.zeros((dims[da], dims[db], dims[dc]), dtype=object)
            for i, ca in enumerate(pieces[da].basis_monomials):
                ea = pieces[da].mono[ca]
                for j, cb in enumerate(pieces[db].basis_monomials):
                    eb = pieces[db].mono[cb]
                    prod = tuple(x + y for x, y in zip(ea, eb))
                    t[i, j, :] = pieces[dc].project_monomial(idx[dc][prod])
            mult[(da, db)] = t

    top = pieces[2 * n]
    if top.dim != 1:
        raise ModelError(f"top piece has dimension {top.dim}, expected 1")
    top_int = matching_integral(quad.gram, _expand(top.mono[top.basis_monomials[0]]))
    if top_int == 0:
        raise ModelError("top-degree integral vanishes; gram is unusable")
    integral_vec = np.array([top_int], dtype=object)

    conj = []
    for d in range(0, 2 * n + 1):
        piece = pieces[d]
        c = np.zeros((piece.dim, piece.dim), dtype=object)
        for t, cm in enumerate(piece.basis_monomials):
            exp = list(piece.mono[cm])
            exp[0], exp[1] = exp[1], exp[0]
            c[:, t] = piece.project_monomial(idx[d][tuple(exp)])
        conj.append(MatrixQ.from_array(c))

    model = GradedAlgebraModel(
        kind="verbitsky",
        n=n,
        quad=quad,
        dims=dims,
        bidegrees=bidegrees,
        mult=mult,
        integral_vec=integral_vec,
        classes=_default_classes(b2),
        conj=conj,
    )
    _require_valid(model)
    return model


def build_model(spec: ModelSpec) -> GradedAlgebraModel:
    return build_k3(spec) if spec.kind == "k3" else build_verbitsky(spec)


def _bidegree_parts(vec, mono):
    """Split a Sym^d coordinate vector into its bidegree components."""
    parts = {}
    for c, x in enumerate(vec):
        if x:
            parts.setdefault(monomial_bidegree(mono[c]), np.zeros(len(vec), dtype=object))[c] = x
    return list(parts.values())


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _require_valid(model: GradedAlgebraModel) -> None:
    rep = validate(model)
    if not rep.all_pass:
        names = [r.name for r in rep.failures()]
        raise ModelError(f"model fails validation: {names}")


def validate(model: GradedAlgebraModel) -> CheckReport:
    """Exact structural checks: ring axioms, Poincare duality, bigradedness,
    conjugation, distinguished classes, and (for quotient models) that the
    pairing kernels form an ideal."""
    rep = CheckReport()
    P = model.pieces
    dims = model.dims
    mult = model.mult

    t0 = time.perf_counter()
    bad = []
    for d in range(P):
        t = mult[(0, d)]
        for j in range(dims[d]):
            for k in range(dims[d]):
                want = Fraction(1) if j == k else Fraction(0)
                if t[0, j, k] != want:
                    bad.append((d, j, k))
    rep.add("algebra_unit", not bad, witnesses=bad[:5], seconds=time.perf_counter() - t0)

    t0 = time.perf_counter()
    bad = []
    for da in range(P):
        for db in range(P - da):
            t_ab, t_ba = mult[(da, db)], mult[(db, da)]
            if not np.array_equal(t_ab, t_ba.transpose(1, 0, 2)):
                bad.append((2 * da, 2 * db))
    rep.add("algebra_commutative", not bad, witnesses=bad, seconds=time.perf_counter() - t0)

    t0 = time.perf_counter()
    bad = []
    for da in range(1, P):
        for db in range(1, P - da):
            for dc in range(1, P - da - db):
                left = np.tensordot(mult[(da, db)], mult[(da + db, dc)], axes=([2], [0]))
                right = np.tensordot(mult[(da, db + dc)], mult[(db, dc)], axes=([1], [2]))
                right = right.transpose(0, 2, 3, 1)
                if not np.array_equal(left, right):
                    bad.append((2 * da, 2 * db, 2 * dc))
    rep.add("algebra_associative", not bad, witnesses=bad, seconds=time.perf_counter() - t0)

    t0 = time.perf_counter()
    bad = []
    for d in range(P):
        dd = P - 1 - d
        pairing = np.tensordot(mult[(d, dd)], model.integral_vec, axes=([2], [0]))
        if dims[d] != dims[dd] or MatrixQ.from_array(pairing).rank() != dims[d]:
            bad.append(2 * d)
    rep.add("poincare_nondegenerate", not bad, witnesses=bad, seconds=time.perf_counter() - t0)

    t0 = time.perf_counter()
    bad = []
    for (da, db), t in mult.items():
        for i in range(dims[da]):
            pa = model.bidegrees[da][i]
            for j in range(dims[db]):
                pb = model.bidegrees[db][j]
                want = (pa[0] + pb[0], pa[1] + pb[1])
                for k in range(dims[da + db]):
                    if t[i, j, k] and model.bidegrees[da + db][k] != want:
                        bad.append((2 * da, i, 2 * db, j, k))
    rep.add("mult_bigraded", not bad, witnesses=bad[:5], seconds=time.perf_counter() - t0)

    t0 = time.perf_counter()
    bad = []
    for d in range(P):
        c = model.conj[d]
        if (c @ c) != MatrixQ.identity(dims[d]):
            bad.append(("involution", 2 * d))
        for t, (p, q) in enumerate(model.bidegrees[d]):
            col = c.array[:, t]
            for r in range(dims[d]):
                if col[r] and model.bidegrees[d][r] != (q, p):
                    bad.append(("bidegree_swap", 2 * d, t))
                    break
    rep.add("conj_involution", not bad, witnesses=bad[:5], seconds=time.perf_counter() - t0)

    t0 = time.perf_counter()
    bad = []
    for (da, db), t in mult.items():
        ca, cb, cc = model.conj[da].array, model.conj[db].array, model.conj[da + db].array
        lhs = np.tensordot(t, cc, axes=([2], [1]))
        tmp = np.tensordot(ca, t, axes=([0], [0]))
        rhs = np.tensordot(cb, tmp, axes=([0], [1])).transpose(1, 0, 2)
        if not np.array_equal(lhs, rhs):
            bad.append((2 * da, 2 * db))
    c2 = model.conj[1].array
    cls = model.classes
    if not np.array_equal(c2 @ cls.sigma, cls.sigma_bar):
        bad.append("conj(sigma) != sigma_bar")
    if not np.array_equal(c2 @ cls.beta, cls.beta):
        bad.append("conj(beta) != beta")
    if not np.array_equal(c2 @ cls.omega, cls.omega):
        bad.append("conj(omega) != omega")
    rep.add("conj_algebra_map", not bad, witnesses=bad[:5], seconds=time.perf_counter() - t0)

    t0 = time.perf_counter()
    bad = _check_classes(model.quad, model.classes)
    rep.add("distinguished_classes", not bad, witnesses=bad, seconds=time.perf_counter() - t0)

    if model.kind == "verbitsky":
        t0 = time.perf_counter()
        bad = _kernel_ideal_witnesses(model)
        rep.add("verbitsky_kernel_ideal", not bad, witnesses=bad[:5], seconds=time.perf_counter() - t0)
    return rep


def _kernel_ideal_witnesses(model: GradedAlgebraModel) -> list:
    """Probe K_d * Sym^1 ⊆ K_{d+1} on every kernel basis vector."""
    n, b2 = model.n, model.quad.b2
    bad = []
    mono = {d: monomials(b2, d) for d in range(n + 1, 2 * n + 1)}
    idx = {d: {m: i for i, m in enumerate(mono[d])} for d in mono}
    kernels = {}
    for d in range(n + 1, 2 * n + 1):
        pair_mat = _pairing_matrix(model.quad.gram, mono[d], monomials(b2, 2 * n - d))
        kernels[d] = kernel(MatrixQ.from_array(pair_mat.T))
    for d in range(n + 1, 2 * n):
        for r, row in enumerate(kernels[d].grid):
            for v in range(b2):
                prod = np.zeros(len(mono[d + 1]), dtype=object)
                for c, x in enumerate(row):
                    if x:
                        exp = list(mono[d][c])
                        exp[v] += 1
                        prod[idx[d + 1][tuple(exp)]] += x
                if not kernels[d + 1].contains(prod):
                    bad.append((2 * d, r, v))
    return bad
