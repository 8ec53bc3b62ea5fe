"""sl2 completions, bracket closures and the so(6) consistency report.

``sl2_complete`` produces, for a raising operator L and a diagonal grading
H with [H, L] = 2L satisfying hard Lefschetz, the unique lowering partner
with [H, Λ] = -2Λ and [L, Λ] = H.  It is built from the primitive
decomposition: strings L^j p over primitives p (graded kernel vectors of
the next power), with Λ(L^j p) = j(k-j+1) L^(j-1) p on a string of lowest
weight -k.  Uniqueness is classical sl2 theory; the defining relations are
re-verified exactly before returning.

``lie_closure`` span-saturates iterated brackets.  Operators are flattened
to primitive integer vectors and reduced against a sparse exact RREF, so
independence and membership decisions are certified, never numerical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .filtration import NilpotentOperator, NotNilpotentError
from .linalg import DimensionMismatch, MatrixQ, inverse, kernel
from .report import CheckReport

__all__ = [
    "Sl2CompletionError",
    "GradingOperator",
    "degree_grading",
    "hodge_q_grading",
    "pq_difference_grading",
    "sl2_complete",
    "SpanReducer",
    "LieSubalgebra",
    "lie_closure",
    "membership",
    "bracket",
    "so6_generators",
    "so6_report",
    "lefschetz_spanning_set",
]


class Sl2CompletionError(ValueError):
    pass


@dataclass(frozen=True)
class GradingOperator:
    """Diagonal grading on the total space of a model."""

    kind: str
    diag: tuple

    def matrix(self) -> MatrixQ:
        n = len(self.diag)
        a = np.zeros((n, n), dtype=object)
        for i, v in enumerate(self.diag):
            a[i, i] = Fraction(v)
        return MatrixQ.from_array(a)


def degree_grading(model) -> GradingOperator:
    return GradingOperator("H0_degree", model.degree_diag())


def hodge_q_grading(model) -> GradingOperator:
    return GradingOperator("Hq_hodge", model.hodge_q_diag())


def pq_difference_grading(model) -> GradingOperator:
    return GradingOperator("Hpq_difference", model.pq_difference_diag())


def _as_array(op) -> np.ndarray:
    if isinstance(op, NilpotentOperator):
        return op.matrix.array
    if isinstance(op, MatrixQ):
        return op.array
    return np.asarray(op, dtype=object)


def sl2_complete(L, H: GradingOperator) -> MatrixQ:
    """The unique Λ with [H, Λ] = -2Λ and [L, Λ] = H."""
    A = _as_array(L)
    lam = H.diag
    D = A.shape[0]
    if A.shape != (D, D) or len(lam) != D:
        raise DimensionMismatch("operator and grading sizes differ")
    for i in range(D):
        for j in range(D):
            if A[i, j] and lam[i] - lam[j] != 2:
                raise Sl2CompletionError(
                    f"[H, L] != 2L: entry ({i}, {j}) connects grading {lam[j]} to {lam[i]}"
                )
    coords: dict[int, list] = {}
    for c, v in enumerate(lam):
        coords.setdefault(v, []).append(c)
    kmax = max((abs(v) for v in lam), default=0)
    powers = [MatrixQ.identity(D).array]
    for _ in range(kmax + 1):
        powers.append(powers[-1] @ A)

    for k in range(1, kmax + 1):
        lo = coords.get(-k, [])
        hi = coords.get(k, [])
        if len(lo) != len(hi):
            raise Sl2CompletionError(
                f"hard Lefschetz fails: grading -{k} has dimension {len(lo)} but "
                f"grading {k} has dimension {len(hi)}"
            )
        if not lo:
            continue
        block = powers[k][np.ix_(hi, lo)]
        r = MatrixQ.from_array(block).rank()
        if r != len(lo):
            raise Sl2CompletionError(
                f"hard Lefschetz fails: L^{k} maps the grading -{k} piece (dim {len(lo)}) "
                f"to a rank-{r} image in the grading {k} piece; no sl2 partner exists"
            )

    # strings over primitives: P_k = (grading -k) ∩ ker L^(k+1)
    columns = []
    lambda_pairs = []  # (src_col, dst_col, coefficient)
    for k in range(0, kmax + 1):
        mk = coords.get(-k, [])
        if not mk:
            continue
        restricted = powers[k + 1][:, mk]
        prim_local = kernel(MatrixQ.from_array(restricted))
        for row in prim_local.grid:
            p = np.zeros(D, dtype=object)
            for t, c in enumerate(mk):
                p[c] = row[t]
            string = [p]
            for _ in range(k):
                string.append(A @ string[-1])
            base = len(columns)
            columns.extend(string)
            for j in range(1, k + 1):
                lambda_pairs.append((base + j, base + j - 1, Fraction(j * (k - j + 1))))
    if len(columns) != D:
        raise Sl2CompletionError(
            f"primitive strings span {len(columns)} of {D} dimensions"
        )
    S = np.empty((D, D), dtype=object)
    for c, col in enumerate(columns):
        S[:, c] = col
    lam_str = np.zeros((D, D), dtype=object)
    for src, dst, coeff in lambda_pairs:
        lam_str[dst, src] = coeff
    S_m = MatrixQ.from_array(S)
    lam_mat = MatrixQ.from_array(S @ lam_str @ inverse(S_m).array)

    out = lam_mat.array
    for i in range(D):
        for j in range(D):
            if out[i, j] and lam[i] - lam[j] != -2:
                raise Sl2CompletionError("internal: partner does not lower the grading by 2")
    comm = A @ out - out @ A
    for i in range(D):
        for j in range(D):
            want = Fraction(lam[i]) if i == j else Fraction(0)
            if comm[i, j] != want:
                raise Sl2CompletionError("internal: [L, partner] != H")
    return lam_mat


# ---------------------------------------------------------------------------
# exact sparse span arithmetic for flattened operators
# ---------------------------------------------------------------------------


def _primitive(v: dict) -> dict:
    g = 0
    for x in v.values():
        g = math.gcd(g, x if x > 0 else -x)
        if g == 1:
            break
    if g > 1:
        v = {c: x // g for c, x in v.items()}
    return v


class SpanReducer:
    """Incremental exact RREF over sparse integer vectors.

    Rows are primitive integer dicts, fully back-reduced, one per pivot
    column; a vector reduces to the empty dict exactly when it lies in the
    span.
    """

    def __init__(self):
        self.rows: dict[int, dict] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: dict) -> dict:
        v = {c: x for c, x in v.items() if x}
        for p, row in self.rows.items():
            c = v.get(p)
            if not c:
                continue
            rp = row[p]
            out = {col: x * rp for col, x in v.items()}
            for col, x in row.items():
                y = out.get(col, 0) - x * c
                if y:
                    out[col] = y
                else:
                    out.pop(col, None)
            v = out
        return _primitive(v)

    def insert(self, v: dict) -> bool:
        r = self._reduce(v)
        if not r:
            return False
        piv = min(r)
        if r[piv] < 0:
            r = {c: -x for c, x in r.items()}
        for p, row in list(self.rows.items()):
            c = row.get(piv)
            if not c:
                continue
            rp = r[piv]
            out = {col: x * rp for col, x in row.items()}
            for col, x in r.items():
                y = out.get(col, 0) - x * c
                if y:
                    out[col] = y
                else:
                    out.pop(col, None)
            out = _primitive(out)
            if out[p] < 0:
                out = {col: -x for col, x in out.items()}
            self.rows[p] = out
        self.rows[piv] = r
        return True

    def contains(self, v: dict) -> bool:
        return not self._reduce(v)

    def canonical_rows(self):
        """RREF rows as {column: Fraction} dicts with unit pivots."""
        out = []
        for p in sorted(self.rows):
            row = self.rows[p]
            pv = row[p]
            out.append({c: Fraction(x, pv) for c, x in row.items()})
        return out


def _integerize(a: np.ndarray) -> np.ndarray:
    denom = 1
    for x in a.flat:
        if isinstance(x, Fraction):
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
    out = np.empty(a.shape, dtype=object)
    flat_out = []
    g = 0
    for x in a.flat:
        v = int(x * denom) if isinstance(x, Fraction) else int(x) * denom
        flat_out.append(v)
        g = math.gcd(g, v if v >= 0 else -v)
    if g > 1:
        flat_out = [v // g for v in flat_out]
    out[:] = np.array(flat_out, dtype=object).reshape(a.shape)
    return out


def _flatten(a: np.ndarray, D: int) -> dict:
    v = {}
    for i in range(D):
        for j in range(D):
            x = a[i, j]
            if x:
                v[i * D + j] = int(x)
    return v


def _triplets(a: np.ndarray):
    out = []
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if a[i, j]:
                out.append((i, j, a[i, j]))
    return out


def bracket(a, b) -> MatrixQ:
    aa, bb = _as_array(a), _as_array(b)
    return MatrixQ.from_array(aa @ bb - bb @ aa)


def _bracket_dense_sparse(A: np.ndarray, trips, D: int) -> np.ndarray:
    ab = np.zeros((D, D), dtype=object)
    ba = np.zeros((D, D), dtype=object)
    for i, j, v in trips:
        ab[:, j] = ab[:, j] + A[:, i] * v
        ba[i, :] = ba[i, :] + A[j, :] * v
    return ab - ba


class LieSubalgebra:
    """Bracket-closed span of operators, held as an exact sparse RREF."""

    def __init__(self, op_dim: int, reducer: SpanReducer):
        self.op_dim = op_dim
        self._reducer = reducer

    @property
    def dim(self) -> int:
        return self._reducer.dim

    def contains_operator(self, x) -> bool:
        a = _integerize(_as_array(x))
        return self._reducer.contains(_flatten(a, self.op_dim))

    def basis_matrices(self):
        out = []
        D = self.op_dim
        for row in self._reducer.canonical_rows():
            a = np.zeros((D, D), dtype=object)
            for c, x in row.items():
                a[c // D, c % D] = x
            out.append(MatrixQ.from_array(a))
        return out


def lie_closure(generators) -> LieSubalgebra:
    """Smallest bracket-closed subspace containing the generators.

    New elements are bracketed against the generators only; by the Jacobi
    identity that already saturates the generated subalgebra.  Terminates
    since the dimension is bounded by (ambient dim)^2.
    """
    gens = [_as_array(g) for g in generators]
    if not gens:
        raise ValueError("empty generator list")
    D = gens[0].shape[0]
    for g in gens:
        if g.shape != (D, D):
            raise DimensionMismatch("generators must be square of equal size")
    gens = [_integerize(g) for g in gens]
    gen_trips = [_triplets(g) for g in gens]
    reducer = SpanReducer()
    accepted = []
    queue = []
    for g in gens:
        if reducer.insert(_flatten(g, D)):
            accepted.append(g)
            queue.append(g)
    while queue:
        a = queue.pop()
        for trips in gen_trips:
            c = _bracket_dense_sparse(a, trips, D)
            v = _flatten(c, D)
            if v and reducer.insert(_primitive(v)):
                c = _integerize(c)
                accepted.append(c)
                queue.append(c)
    return LieSubalgebra(D, reducer)


def membership(algebra: LieSubalgebra, x) -> bool:
    """Exact test that x lies in the span of the algebra basis."""
    a = _as_array(x)
    if a.shape != (algebra.op_dim, algebra.op_dim):
        raise DimensionMismatch(
            f"operator is {a.shape}, algebra acts on {algebra.op_dim}x{algebra.op_dim}"
        )
    return algebra.contains_operator(MatrixQ.from_array(a))


# ---------------------------------------------------------------------------
# model-level reports
# ---------------------------------------------------------------------------


def so6_generators(model):
    """The four Lefschetz classes sigma+sigma_bar, sigma-sigma_bar, omega,
    beta+omega used to generate the rank-3 symmetry algebra."""
    c = model.classes
    return [
        c.sigma + c.sigma_bar,
        c.sigma - c.sigma_bar,
        c.omega,
        c.beta + c.omega,
    ]


def lefschetz_spanning_set(model):
    """A deterministic basis of H^2 made of classes with q(x, x) != 0."""
    b2 = model.quad.b2
    found = []
    span = SpanReducer()

    def candidates():
        for i in range(b2):
            v = np.zeros(b2, dtype=object)
            v[i] = 1
            yield v
        for s in (1, -1, 2):
            for i in range(b2):
                for j in range(i + 1, b2):
                    v = np.zeros(b2, dtype=object)
                    v[i] = 1
                    v[j] = s
                    yield v

    for v in candidates():
        if len(found) == b2:
            break
        if model.q(v, v) == 0:
            continue
        if span.insert({c: int(x) for c, x in enumerate(v) if x}):
            found.append(v)
    if len(found) != b2:
        raise Sl2CompletionError("could not span H^2 by classes of nonzero square")
    return found


def so6_report(model, lam_sigma_bar=None) -> CheckReport:
    """Closure of the four Lefschetz sl2 triples: dimension 15 = dim so(6),
    membership of the distinguished operators, nilpotency of the commutator."""
    import time

    rep = CheckReport()
    q = model.q
    gens = so6_generators(model)

    t0 = time.perf_counter()
    bad = [str(i) for i, x in enumerate(gens) if q(x, x) == 0]
    rep.add(
        "lefschetz_generators_nondegenerate",
        not bad,
        witnesses=bad,
        seconds=time.perf_counter() - t0,
    )

    t0 = time.perf_counter()
    c = model.classes
    span4 = [c.sigma, c.sigma_bar, c.beta, c.omega]
    gram4 = np.empty((4, 4), dtype=object)
    for i in range(4):
        for j in range(4):
            gram4[i, j] = q(span4[i], span4[j])
    q4_ok = MatrixQ.from_array(gram4).rank() == 4
    rep.add("q_restriction_nondegenerate", q4_ok, seconds=time.perf_counter() - t0)
    if bad or not q4_ok:
        return rep

    h0 = degree_grading(model)
    h0_mat = h0.matrix()
    t0 = time.perf_counter()
    ops = []
    for x in gens:
        lx = model.lefschetz_matrix(x)
        ops.append(lx)
        ops.append(sl2_complete(lx, h0))
    ops.append(h0_mat)
    algebra = lie_closure(ops)
    rep.add(
        "so6_dimension",
        algebra.dim == 15,
        witnesses=[] if algebra.dim == 15 else [algebra.dim],
        data={"dim": algebra.dim},
        seconds=time.perf_counter() - t0,
    )

    l_beta = model.lefschetz_matrix(c.beta)
    if lam_sigma_bar is None:
        lam_sigma_bar = sl2_complete(
            model.lefschetz_matrix(c.sigma_bar), hodge_q_grading(model)
        )
    for name, op in (
        ("llv_contains_l_beta", l_beta),
        ("llv_contains_lambda_sigma_bar", lam_sigma_bar),
        ("llv_contains_h_degree", h0_mat),
        ("llv_contains_pq_difference", pq_difference_grading(model).matrix()),
    ):
        t0 = time.perf_counter()
        rep.add(name, membership(algebra, op), seconds=time.perf_counter() - t0)

    t0 = time.perf_counter()
    comm = bracket(l_beta, lam_sigma_bar)
    rep.add("llv_commutator_member", membership(algebra, comm), seconds=time.perf_counter() - t0)
    t0 = time.perf_counter()
    try:
        NilpotentOperator(comm)
        ok = True
    except NotNilpotentError:
        ok = False
    rep.add("llv_commutator_nilpotent", ok, seconds=time.perf_counter() - t0)
    return rep
