import random
from fractions import Fraction

import pytest

from equivar.linalg import (
    Echelon,
    SpanBasis,
    SparseRationalMatrix,
    kernel_of_vectors,
    matrix_rank,
    nullspace,
    rank_of_vectors,
    solve_columns,
)


def dense_rank(dense):
    """Independent rank oracle: plain Gaussian elimination on dense rows."""
    rows = [list(map(Fraction, r)) for r in dense]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while col < ncols and rank < len(rows):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / lead
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def random_matrix(rng, m, n, density=0.5):
    mat = SparseRationalMatrix(m, n)
    for i in range(m):
        for j in range(n):
            if rng.random() < density:
                mat.set(i, j, Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    return mat


def test_matmul_identity_and_known_product():
    a = SparseRationalMatrix.from_entries(2, 2, [(0, 0, 1), (0, 1, 1), (1, 0, 1)])
    b = SparseRationalMatrix.from_entries(2, 2, [(0, 1, 1), (1, 0, 1), (1, 1, 1)])
    c = a @ b
    assert c.to_dense() == [[1, 2], [0, 1]]
    eye = SparseRationalMatrix.identity(2)
    assert (a @ eye) == a and (eye @ a) == a


def test_add_sub_scale_transpose():
    a = SparseRationalMatrix.from_entries(2, 3, [(0, 0, 2), (1, 2, -1)])
    b = a.scale(Fraction(1, 2))
    assert b.get(0, 0) == 1 and b.get(1, 2) == Fraction(-1, 2)
    assert (a - a).is_zero()
    assert a.transpose().get(2, 1) == -1
    assert (a + a) == a.scale(2)


def test_rank_and_nullspace_against_dense_oracle():
    rng = random.Random(7)
    for trial in range(40):
        m = rng.randint(1, 6)
        n = rng.randint(1, 6)
        mat = random_matrix(rng, m, n)
        r = matrix_rank(mat)
        assert r == dense_rank(mat.to_dense())
        kernel = nullspace(mat)
        assert len(kernel) == n - r
        for v in kernel:
            assert mat.apply(v) == {}


def test_nullspace_free_column_form():
    mat = SparseRationalMatrix.from_entries(1, 3, [(0, 0, 1), (0, 1, 2), (0, 2, 3)])
    kernel = nullspace(mat)
    assert len(kernel) == 2
    frees = []
    for v in kernel:
        ones = [k for k, val in v.items() if val == 1]
        frees.extend(ones)
    # each kernel vector has a defining unit coordinate not shared with others
    assert len(set(frees)) >= 2


def test_rank_of_vectors_and_kernel_of_vectors():
    v1 = {0: Fraction(1), 1: Fraction(2)}
    v2 = {0: Fraction(2), 1: Fraction(4)}
    v3 = {2: Fraction(1)}
    assert rank_of_vectors([v1, v2, v3], 3) == 2
    coeffs = kernel_of_vectors([v1, v2, v3])
    assert len(coeffs) == 1
    c = coeffs[0]
    combo = {}
    for t, val in c.items():
        for k, w in [v1, v2, v3][t].items():
            combo[k] = combo.get(k, 0) + val * w
    assert all(x == 0 for x in combo.values())


def test_span_basis_membership_and_coords():
    v1 = {0: Fraction(1), 2: Fraction(1)}
    v2 = {1: Fraction(1)}
    span = SpanBasis([v1, v2, {0: Fraction(2), 1: Fraction(2), 2: Fraction(2)}], 3)
    assert span.dim == 2
    w = {0: Fraction(3), 1: Fraction(-1), 2: Fraction(3)}
    coeffs = span.coords(w)
    assert len(coeffs) == 2
    assert not span.contains({2: Fraction(1)})


def test_solve_columns():
    a = SparseRationalMatrix.from_entries(3, 2, [(0, 0, 2), (1, 1, 3), (2, 0, 1), (2, 1, 1)])
    y = {0: Fraction(4), 1: Fraction(6), 2: Fraction(4)}
    (x,) = solve_columns(a, [y])
    assert a.apply(x) == y
    with pytest.raises(ValueError):
        solve_columns(a, [{0: Fraction(1)}])  # inconsistent


def test_echelon_deterministic():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1), 2: Fraction(1)}]
    e1, e2 = Echelon(3), Echelon(3)
    for r in rows:
        e1.add(dict(r))
    for r in rows:
        e2.add(dict(r))
    assert e1.kernel_basis() == e2.kernel_basis()


def test_power_and_vstack():
    n = SparseRationalMatrix.from_entries(2, 2, [(0, 1, 1)])
    assert n.power(2).is_zero()
    stacked = SparseRationalMatrix.vstack([n, SparseRationalMatrix.identity(2)])
    assert stacked.nrows == 4 and matrix_rank(stacked) == 2
