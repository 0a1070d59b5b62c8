import itertools
import random

import pytest

from racb.bounds import (
    chain_bound, d_of, find_d, is_increasing, k_of, max_bounded_chain_sequence, spheres,
)
from racb.coxeter import descents, firmness, multiply, reduce
from racb.errors import CapExceeded, Inconclusive

from diagrams import D1, D2, D3, D4, w
from oracles import ClosureOracle, firmness_by_prefixes, reduced_words


def brute_length(oracle, word):
    return len(next(iter(oracle.minimal(word))))


def brute_increasing(oracle, base, steps):
    cur = tuple(base)
    L = brute_length(oracle, cur)
    for r in steps:
        cur += (r,)
        nxt = brute_length(oracle, cur)
        if nxt <= L:
            return False
        L = nxt
    return True


def brute_chain(d, steps):
    # largest subsequence with consecutive letters generating an infinite dihedral group
    best = 0
    for k in range(1, len(steps) + 1):
        for idx in itertools.combinations(range(len(steps)), k):
            sub = [steps[i] for i in idx]
            if all(a != b and not d.commutes(a, b) for a, b in zip(sub, sub[1:])):
                best = max(best, k)
    return best


def brute_f(d, b, max_len):
    oracle = ClosureOracle(d)
    best = 0
    for L in range(max_len + 1):
        for steps in itertools.product(range(d.rank), repeat=L):
            if brute_increasing(oracle, (), steps) and brute_chain(d, steps) <= b:
                best = max(best, L)
    return best


def brute_k(d, g, max_len):
    oracle = ClosureOracle(d)
    base = firmness_by_prefixes(d, g) if g else 0
    stalled = 0
    for L in range(1, max_len + 1):
        for steps in itertools.product(range(d.rank), repeat=L):
            if brute_increasing(oracle, g, steps):
                end = next(iter(oracle.minimal(tuple(g) + steps)))
                if firmness_by_prefixes(d, end) == base:
                    stalled = max(stalled, L)
    return stalled + 1


def brute_d(d, n, max_len):
    best = 0
    for word in reduced_words(d, max_len):
        if (firmness_by_prefixes(d, word) if word else 0) <= n:
            best = max(best, len(word))
    return best


def test_is_increasing_examples():
    assert is_increasing(D1, (), w(D1, "s t s t"))
    assert not is_increasing(D1, (), w(D1, "s s"))
    assert is_increasing(D2, w(D2, "a"), w(D2, "b c"))


def test_bounded_chain_examples():
    n, seq = max_bounded_chain_sequence(D4, 1)
    assert n == 2 and sorted(seq.steps) == [0, 1]
    assert max_bounded_chain_sequence(D1, 1)[0] == 1
    assert max_bounded_chain_sequence(D1, 2)[0] == 2
    with pytest.raises(ValueError):
        max_bounded_chain_sequence(D1, 0)


@pytest.mark.parametrize("d, b", [(D1, 1), (D1, 3), (D2, 1), (D2, 2), (D4, 1)])
def test_bounded_chain_matches_brute_force(d, b):
    n, seq = max_bounded_chain_sequence(d, b)
    assert n == brute_f(d, b, n + 1)
    assert len(seq.steps) == n
    assert is_increasing(d, (), seq.steps)
    assert chain_bound(d, seq.steps) <= b
    assert brute_chain(d, seq.steps) <= b


def test_k_examples():
    assert k_of(D1, w(D1, "s t")) == 1
    assert k_of(D4, w(D4, "a")) == 2
    # from the identity the first ascent always raises firmness 0 -> 1
    assert k_of(D2, ()) == 1


@pytest.mark.parametrize("d, text", [(D2, ""), (D2, "a"), (D2, "a b"), (D2, "c a"), (D3, "r1"), (D3, "r1 r3")])
def test_k_matches_brute_force(d, text):
    g = w(d, text)
    k = k_of(d, g)
    assert k == brute_k(d, g, k + 1)


@pytest.mark.parametrize("d, text", [(D2, "a"), (D2, "c b"), (D3, "r2"), (D3, "r1 r3")])
def test_k_sampled_sequences_raise_firmness(d, text):
    rng = random.Random(17)
    g = reduce(d, w(d, text))
    k = k_of(d, g)
    for _ in range(100):
        h = g
        for _ in range(k):
            ups = [r for r in range(d.rank) if r not in descents(d, h)]
            h = multiply(d, h, rng.choice(ups))[0]
        assert firmness(d, h) > firmness(d, g)


def test_d_examples():
    assert d_of(D1, 2) == 2
    assert d_of(D4, 1) == 2
    for d in (D1, D2, D3, D4):
        assert d_of(d, 0) == 0
    assert find_d(D1, 2).to_dict() == {"n": 2, "d": 2, "checked_up_to_length": 4}


@pytest.mark.parametrize("d, n", [(D1, 1), (D1, 2), (D2, 1), (D2, 2), (D3, 1), (D4, 1)])
def test_d_matches_brute_force(d, n):
    bound = d_of(d, n)
    assert bound == brute_d(d, n, bound + 2)
    for word in reduced_words(d, bound + 3) if d is not D3 else reduced_words(d, bound + 2):
        if len(word) > bound:
            assert firmness(d, word) > n


def test_d_cap_is_explicit():
    with pytest.raises(Inconclusive):
        find_d(D3, 3, cap=20)


def test_spheres_are_duplicate_free_and_grow_by_ascents():
    prev = None
    for L, level in spheres(D3):
        if L > 5:
            break
        assert all(len(g) == L and reduce(D3, g) == g for g in level)
        if prev is not None:
            assert level == {multiply(D3, g, r)[0] for g in prev for r in range(D3.rank)
                             if r not in descents(D3, g)}
        prev = level


def test_sphere_cap():
    with pytest.raises(CapExceeded):
        for _ in spheres(D3, cap=30):
            pass


def test_finite_group_spheres_stop():
    sizes = [len(level) for _, level in spheres(D4)]
    assert sizes == [1, 2, 1, 0]
