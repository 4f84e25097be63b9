import itertools
from fractions import Fraction
from math import comb, factorial

import pytest

from equivar.combinat import (
    SymFunc,
    frobenius_char,
    induce_character,
    irreducible_class_function,
    partitions,
    schur,
    specht_dimension,
)
from equivar.groth import (
    KClassRep,
    KGenClass,
    KModClass,
    char_of_S,
    mu_matrix,
    mu_n,
    p_class_in_q_basis,
    q_class_in_p_basis,
    rank_expand,
    tensor_induced_decompose,
    truncation_dim_check,
)
from equivar.linalg import matrix_rank


def test_char_of_s_examples():
    assert char_of_S(2, 1).values == {(1, 1): 4, (2,): 2}
    assert char_of_S(3, 1).values == {(1, 1, 1): 8, (2, 1): 4, (3,): 2}
    assert all(v == 1 for v in char_of_S(3, 0).values.values())


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("s", range(4))
def test_char_of_s_strictly_positive(n, s):
    assert all(v > 0 for v in char_of_S(n, s).values.values())


def test_mu_examples():
    assert mu_n(KClassRep.make(1, {(1,): 1}), 0).mult == (((1,), 1),)
    assert mu_n(KClassRep.make(1, {(1,): 1}), 1).as_dict() == {(1,): 2}
    assert mu_n(KClassRep.make(2, {(2,): 1}), 1).as_dict() == {(2,): 3, (1, 1): 1}


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("s", range(4))
def test_mu_matrix_invertible(n, s):
    mat, ps, _ = mu_matrix(n, s)
    assert matrix_rank(mat) == len(ps)


def test_p_class_examples():
    assert p_class_in_q_basis((1,), 0) == KGenClass({("Q", 0, (1,)): 1})
    assert p_class_in_q_basis((1,), 1) == KGenClass({("Q", 1, (1,)): 2})
    assert p_class_in_q_basis((2,), 1) == KGenClass({("Q", 1, (2,)): 3, ("Q", 1, (1, 1)): 1})


def test_q_class_examples():
    assert q_class_in_p_basis((1,), 1) == KGenClass({("P", 1, (1,)): Fraction(1, 2)})
    assert q_class_in_p_basis((1,), 0) == KGenClass({("P", 0, (1,)): 1})


@pytest.mark.parametrize("s", [0, 1, 2])
def test_round_trips_are_identity(s):
    for size in range(1, 5):
        for lam in partitions(size):
            # p -> q -> p
            back = KGenClass()
            for (kind, r, mu), c in p_class_in_q_basis(lam, s).coeffs.items():
                back = back + q_class_in_p_basis(mu, r).scale(c)
            assert back == KGenClass({("P", s, lam): 1})
            # q -> p -> q
            back = KGenClass()
            for (kind, r, mu), c in q_class_in_p_basis(lam, s).coeffs.items():
                back = back + p_class_in_q_basis(mu, r).scale(c)
            assert back == KGenClass({("Q", s, lam): 1})


def test_p_to_q_total_multiplicity_matches_filtration_length():
    # dimension bookkeeping: expanding a P class in Q classes accounts for
    # exactly (s+1)^n copies weighted by irreducible dimensions
    for s in (1, 2):
        for size in (1, 2, 3):
            for lam in partitions(size):
                cls = p_class_in_q_basis(lam, s)
                total = sum(c * specht_dimension(mu) for (_, _, mu), c in cls.coeffs.items())
                assert total == (s + 1) ** size * specht_dimension(lam)


def test_rank_expand_examples():
    assert rank_expand(KGenClass({("P", 1, ()): 1})) == KModClass({1: schur(())})
    assert rank_expand(KGenClass({("P", 1, (1,)): 1})) == KModClass({1: schur((1,))})
    assert rank_expand(KGenClass({("Q", 1, (1,)): 1})) == KModClass({1: schur((1,)).scale(Fraction(1, 2))})


def test_rank_expand_injective_on_p_span():
    # the map sends the P-class basis to distinct ring-basis monomials, so a
    # combination maps to zero only if it is zero
    for s in (1, 2):
        combo = KGenClass()
        for r in range(s + 1):
            for size in range(0, 4):
                for lam in partitions(size):
                    combo = combo + KGenClass({("P", r, lam): 1})
        image = rank_expand(combo)
        terms = sum(len(f.coeffs) for f in image.parts.values())
        assert terms == len(combo.coeffs)  # no collisions, hence injective


def test_rank_expand_respects_symmetric_function_action():
    base = rank_expand(KGenClass({("P", 1, (1,)): 1}))
    scaled = base.scale_sym(schur((2,)))
    assert scaled == KModClass({1: schur((2,)) * schur((1,))})


def test_kmodclass_json_shape():
    data = rank_expand(KGenClass({("Q", 1, (1,)): 1})).to_json_dict()
    assert data == {"1": {"1": [1, 2]}}


def test_tensor_decompose_trivial_pair():
    triv1 = KClassRep.make(1, {(1,): 1})
    out = tensor_induced_decompose(1, 1, triv1, triv1)
    assert [r for r, _ in out] == [0, 1]
    assert out[0][1].as_dict() == {(2,): 1, (1, 1): 1}
    assert out[1][1].as_dict() == {(1,): 1}
    # the maximal-overlap term is always present with positive dimension
    assert out[-1][1].dim() > 0


def test_tensor_decompose_level_guard():
    with pytest.raises(ValueError):
        tensor_induced_decompose(1, 2, KClassRep.make(1, {(1,): 1}), KClassRep.make(1, {(1,): 1}))


def tuple_module_dim(n, N):
    return factorial(N) // factorial(N - n)


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)])
def test_tensor_decompose_dimension_identity_at_truncation(n, m):
    # check over several inducing representations, not just the trivial pair
    pairs = [
        (KClassRep.make(n, {(n,): 1}), KClassRep.make(m, {(m,): 1})),
        (KClassRep.make(n, {lam: specht_dimension(lam) for lam in partitions(n)}),
         KClassRep.make(m, {lam: specht_dimension(lam) for lam in partitions(m)})),
    ]
    for V, W in pairs:
        out = tensor_induced_decompose(n, m, V, W)
        for N in range(n + m, 9):
            # closed-form bookkeeping for the regular pair
            assert truncation_dim_check(n, m, N)
            # an induced piece at tuple size k has truncation dimension
            # (number of k-subsets) x (dimension of the inducing module)
            lhs = comb(N, n) * V.dim() * comb(N, m) * W.dim()
            rhs = sum(comb(N, n + m - r) * cls.dim() for r, cls in out)
            assert lhs == rhs


def test_truncation_dim_check_bruteforce_basis_matching():
    # count ordered pairs of tuples grouped by overlap size, explicitly
    n, m, N = 2, 1, 4
    pairs = 0
    by_overlap = {}
    for T in itertools.permutations(range(N), n):
        for U in itertools.permutations(range(N), m):
            pairs += 1
            r = len(set(T) & set(U))
            by_overlap[r] = by_overlap.get(r, 0) + 1
    assert pairs == tuple_module_dim(n, N) * tuple_module_dim(m, N)
    for r, count in by_overlap.items():
        assert count == comb(n, r) * comb(m, r) * factorial(r) * tuple_module_dim(n + m - r, N)
    assert truncation_dim_check(n, m, N)


def test_truncation_dim_check_degenerate():
    assert truncation_dim_check(0, 2, 3)
    with pytest.raises(ValueError):
        truncation_dim_check(2, 2, 3)


def test_tensor_decompose_matches_character_induction_product():
    # tensoring two induced modules and re-inducing each overlap piece is
    # consistent with the symmetric-function product on total classes
    V = KClassRep.make(1, {(1,): 1})
    W = KClassRep.make(2, {(2,): 1})
    out = tensor_induced_decompose(1, 2, V, W)
    assert all(cls.dim() > 0 for _, cls in out)
    got_degrees = {1 + 2 - r for r, _ in out}
    assert got_degrees == {2, 3}
