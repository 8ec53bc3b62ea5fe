import random
from fractions import Fraction

import pytest

from phl.linalg import (
    DimensionMismatch,
    MatrixQ,
    Subspace,
    image,
    inverse,
    join,
    kernel,
    meet,
    preimage,
    reduce,
    solve_right,
)

from conftest import random_invertible, random_matrix, random_rational_matrix


def ff_rank(grid):
    """Independent oracle: fraction-free Gaussian elimination (Bareiss-style
    cross multiplication on plain Fraction lists, first-nonzero pivoting)."""
    m = [list(row) for row in grid]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, rows):
            if m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                for j in range(c, cols):
                    m[r][j] -= f * m[rank][j]
        rank += 1
    return rank


def span_of(rows, n=None):
    return Subspace.span(rows, ambient_dim=n)


def test_reduce_identity():
    s, rank = reduce(MatrixQ.identity(2))
    assert rank == 2
    assert s == Subspace.full(2)


def test_reduce_proportional_rows():
    s, rank = reduce(MatrixQ([[1, 2], [2, 4]]))
    assert rank == 1
    assert s.grid == ((Fraction(1), Fraction(2)),)


def test_reduce_rank_matches_ff_oracle():
    rng = random.Random(17)
    for _ in range(25):
        m = random_rational_matrix(rng, 4, 4)
        _, rank = reduce(m)
        assert rank == ff_rank(m.grid())


def test_reduce_canonical_under_row_equivalence():
    rng = random.Random(3)
    for _ in range(15):
        m = random_matrix(rng, 4, 6)
        g = random_invertible(rng, 4)
        s1, _ = reduce(m)
        s2, _ = reduce(g @ m)
        assert s1 == s2
        assert hash(s1) == hash(s2)


def test_kernel_zero_map():
    assert kernel(MatrixQ.zeros(3, 3)) == Subspace.full(3)


def test_kernel_injective():
    assert kernel(MatrixQ.identity(4)) == Subspace.zero(4)


def test_kernel_jordan_block():
    # J3 v = 0 forces v2 = v3 = 0 by hand
    j3 = MatrixQ([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert kernel(j3) == span_of([[1, 0, 0]])


def test_kernel_vectors_satisfy_equation_exactly():
    rng = random.Random(5)
    for _ in range(10):
        m = random_rational_matrix(rng, 3, 5)
        for row in kernel(m).grid:
            assert not any(m.apply(row))


def test_meet_idempotent():
    a = span_of([[1, 2, 3], [0, 1, 1]])
    assert meet(a, a) == a


def test_meet_transverse_lines():
    a = span_of([[1, 0]])
    b = span_of([[0, 1]])
    assert meet(a, b) == Subspace.zero(2)


def test_meet_join_dimension_formula():
    rng = random.Random(11)
    for _ in range(20):
        a, _ = reduce(random_matrix(rng, 3, 5))
        b, _ = reduce(random_matrix(rng, 3, 5))
        assert join(a, b).dim + meet(a, b).dim == a.dim + b.dim


def test_join_neutral_element():
    a = span_of([[1, 1, 0]])
    assert join(a, Subspace.zero(3)) == a


def test_join_two_lines_span_plane():
    assert join(span_of([[1, 0]]), span_of([[1, 1]])) == Subspace.full(2)


def test_lattice_laws_random_triples():
    rng = random.Random(23)
    for _ in range(10):
        a, _ = reduce(random_matrix(rng, 2, 4))
        b, _ = reduce(random_matrix(rng, 2, 4))
        c, _ = reduce(random_matrix(rng, 2, 4))
        assert meet(a, b) == meet(b, a)
        assert join(a, b) == join(b, a)
        assert meet(meet(a, b), c) == meet(a, meet(b, c))
        assert join(join(a, b), c) == join(a, join(b, c))
        # absorption
        assert join(a, meet(a, b)) == a
        assert meet(a, join(a, b)) == a


def test_meet_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        meet(Subspace.full(2), Subspace.full(3))
    with pytest.raises(DimensionMismatch):
        join(Subspace.full(2), Subspace.full(3))


def test_preimage_of_full_space():
    rng = random.Random(7)
    m = random_matrix(rng, 4, 3)
    assert preimage(m, Subspace.full(4)) == Subspace.full(3)


def test_preimage_of_zero_is_kernel():
    rng = random.Random(9)
    m = random_matrix(rng, 4, 3)
    assert preimage(m, Subspace.zero(4)) == kernel(m)


def test_preimage_membership_sampling():
    rng = random.Random(13)
    m = random_matrix(rng, 4, 5)
    s, _ = reduce(random_matrix(rng, 2, 4))
    pre = preimage(m, s)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(pre.dim)]
        v = [Fraction(0)] * 5
        for cf, row in zip(coeffs, pre.grid):
            for j in range(5):
                v[j] += cf * row[j]
        assert pre.contains(v)
        assert s.contains(m.apply(v))
    # and a vector outside the preimage maps outside s (when one exists)
    for _ in range(20):
        v = [Fraction(rng.randint(-4, 4)) for _ in range(5)]
        assert pre.contains(v) == s.contains(m.apply(v))


def test_image_is_column_space():
    m = MatrixQ([[1, 0], [2, 0], [0, 0]])
    assert image(m) == span_of([[1, 2, 0]])


def test_subspace_contains_dimension_guard():
    with pytest.raises(DimensionMismatch):
        Subspace.full(3).contains([1, 2])


def test_solve_and_inverse():
    m = MatrixQ([[2, 1], [1, 1]])
    x = solve_right(m, [3, 2])
    assert list(x) == [Fraction(1), Fraction(1)]
    inv = inverse(m)
    assert inv @ m == MatrixQ.identity(2)
    assert solve_right(MatrixQ([[1, 0], [0, 0]]), [0, 1]) is None
    with pytest.raises(ValueError):
        inverse(MatrixQ([[1, 1], [1, 1]]))


def test_matrix_power_and_scale():
    j = MatrixQ([[0, 1], [0, 0]])
    assert j.power(2).is_zero()
    assert j.scale(Fraction(1, 2)).entry(0, 1) == Fraction(1, 2)
