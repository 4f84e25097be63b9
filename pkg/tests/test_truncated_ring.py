import itertools

import pytest

from equivar.combinat import partitions
from equivar.truncated_ring import (
    RingConfig,
    all_monomials,
    coxeter_word,
    cycle_type,
    dual_action,
    fixed_monomial_count,
    monomial_from_json,
    monomial_rank,
    monomial_to_json,
    monomial_unrank,
    multiply,
    permute,
    representative_permutation,
)


@pytest.mark.parametrize("N", range(7))
@pytest.mark.parametrize("s", range(4))
def test_monomial_count(N, s):
    cfg = RingConfig(N, s)
    monos = all_monomials(cfg)
    assert len(monos) == (s + 1) ** N == cfg.monomial_count
    assert len(set(monos)) == len(monos)
    for r, m in enumerate(monos):
        assert monomial_rank(m, cfg) == r
        assert monomial_unrank(r, cfg) == m


def test_multiply_examples():
    cfg = RingConfig(2, 1)
    x1 = (1, 0)
    x2 = (0, 1)
    one = (0, 0)
    assert multiply(x1, x1, cfg) is None  # squares vanish at bound one
    assert multiply(one, x2, cfg) == x2
    assert multiply(x1, x2, cfg) == (1, 1)
    with pytest.raises(ValueError):
        multiply((1,), (0, 0), cfg)


@pytest.mark.parametrize("N", range(1, 4))
@pytest.mark.parametrize("s", range(3))
def test_multiply_commutative_associative(N, s):
    cfg = RingConfig(N, s)
    monos = all_monomials(cfg)
    for a, b in itertools.product(monos, repeat=2):
        assert multiply(a, b, cfg) == multiply(b, a, cfg)
    for a, b, c in itertools.product(monos, repeat=3):
        ab = multiply(a, b, cfg)
        bc = multiply(b, c, cfg)
        left = multiply(ab, c, cfg) if ab is not None else None
        right = multiply(a, bc, cfg) if bc is not None else None
        assert left == right


def test_permute_basic_and_homomorphism():
    cfg = RingConfig(3, 2)
    m = (2, 1, 0)
    ident = (0, 1, 2)
    assert permute(ident, m) == m
    swap01 = (1, 0, 2)
    assert permute(swap01, (1, 0, 0)) == (0, 1, 0)  # first variable becomes second
    assert permute(swap01, (0, 0, 0)) == (0, 0, 0)
    for g in itertools.permutations(range(3)):
        for a in all_monomials(cfg):
            for b in all_monomials(RingConfig(3, 2)):
                ab = multiply(a, b, cfg)
                pab = multiply(permute(g, a), permute(g, b), cfg)
                assert (None if ab is None else permute(g, ab)) == pab


def test_permute_is_group_action():
    for g in itertools.permutations(range(4)):
        for h in itertools.permutations(range(4)):
            gh = tuple(g[h[i]] for i in range(4))
            m = (3, 1, 0, 2)
            assert permute(gh, m) == permute(g, permute(h, m))


def test_dual_action():
    cfg = RingConfig(2, 1)
    top = (1, 1)
    assert dual_action((0, 0), (1, 0), cfg) == (1, 0)
    assert dual_action((1, 0), (0, 1), cfg) is None
    # freeness: monomial a sends the top dual label to label top - a, so every
    # dual label is reached exactly once
    reached = {dual_action(a, top, cfg) for a in all_monomials(cfg)}
    assert reached == set(all_monomials(cfg))


def test_cycle_type_and_representative():
    for n in range(1, 6):
        for mu in partitions(n):
            g = representative_permutation(mu)
            assert cycle_type(g) == mu


def test_coxeter_word_reconstructs_permutation():
    for n in range(1, 6):
        for g in itertools.permutations(range(n)):
            word = coxeter_word(g)
            acc = tuple(range(n))
            for j in word:
                swap = list(range(n))
                swap[j], swap[j + 1] = swap[j + 1], swap[j]
                # apply the adjacent swap after acc
                acc = tuple(swap[acc[i]] for i in range(n))
            assert acc == g


@pytest.mark.parametrize("N", range(1, 6))
def test_fixed_monomial_count_bruteforce(N):
    for s in (1, 2):
        cfg = RingConfig(N, s)
        monos = all_monomials(cfg)
        for mu in partitions(N):
            g = representative_permutation(mu)
            brute = sum(1 for m in monos if permute(g, m) == m)
            assert fixed_monomial_count(mu, cfg) == brute
            assert fixed_monomial_count(mu, cfg) > 0


def test_fixed_monomial_count_examples():
    assert fixed_monomial_count((1, 1), RingConfig(2, 1)) == 4
    assert fixed_monomial_count((2,), RingConfig(2, 1)) == 2
    with pytest.raises(ValueError):
        fixed_monomial_count((2,), RingConfig(3, 1))


def test_monomial_json_roundtrip():
    cfg = RingConfig(3, 2)
    m = (2, 0, 1)
    assert monomial_from_json(monomial_to_json(m), cfg) == m
    with pytest.raises(ValueError):
        monomial_from_json([3, 0, 0], cfg)
