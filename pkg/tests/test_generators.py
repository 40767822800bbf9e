from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperspectra.generators import (
    GenerationError,
    _unrank,
    gen_complete,
    gen_disjoint_blocks,
    gen_hyperstar,
    gen_random,
    gen_random_regular,
)
from hyperspectra.hypergraph import degrees, is_regular
from hyperspectra.uhg import write_uhg


def test_hyperstar_shape():
    H = gen_hyperstar(4, 3)
    assert (H.n, H.m, H.k) == (9, 4, 3)
    assert H.edges == ((1, 2, 3), (1, 4, 5), (1, 6, 7), (1, 8, 9))


@given(st.integers(1, 8), st.integers(2, 6))
def test_hyperstar_degrees(t, k):
    assert degrees(gen_hyperstar(t, k)).sorted == (t,) + (1,) * (t * (k - 1))


def test_complete_examples():
    H = gen_complete(6, 3)
    assert H.m == comb(6, 3) == 20
    assert is_regular(H) == 10


@pytest.mark.parametrize("n, k", [(4, 2), (6, 3), (7, 4), (5, 5)])
def test_complete_regularity(n, k):
    assert is_regular(gen_complete(n, k)) == comb(n - 1, k - 1)


def test_disjoint_blocks_matching():
    H = gen_disjoint_blocks(3, 2)
    assert H.edges == ((1, 2), (3, 4), (5, 6))


@pytest.mark.parametrize("n, k", [(5, 2), (6, 3), (7, 4)])
def test_unrank_enumerates_lexicographically(n, k):
    assert [_unrank(r, n, k) for r in range(comb(n, k))] == list(combinations(range(1, n + 1), k))


def test_random_deterministic_and_distinct():
    a = gen_random(10, 15, 3, seed=7)
    b = gen_random(10, 15, 3, seed=7)
    assert write_uhg(a) == write_uhg(b)
    assert a.m == 15 and len(set(a.edges)) == 15
    assert gen_random(10, 15, 3, seed=8) != a


def test_random_full_and_empty():
    assert gen_random(6, 20, 3, seed=0) == gen_complete(6, 3)
    assert gen_random(6, 0, 3, seed=0).m == 0
    with pytest.raises(GenerationError):
        gen_random(6, 21, 3, seed=0)


def test_random_is_uniform_over_edge_sets():
    # 2-edge subsets of the 6 pairs on 4 vertices: 15 outcomes, chi-square-free sanity check
    counts = {}
    for s in range(3000):
        e = gen_random(4, 2, 2, seed=s).edges
        counts[e] = counts.get(e, 0) + 1
    assert len(counts) == comb(6, 2)
    freq = np.array(list(counts.values())) / 3000
    assert np.all(np.abs(freq - 1 / 15) < 0.03)


@pytest.mark.parametrize("n, d, k", [(6, 2, 3), (8, 3, 2), (9, 4, 3), (8, 3, 4), (12, 5, 3), (10, 6, 2)])
def test_random_regular(n, d, k):
    H = gen_random_regular(n, d, k, seed=3)
    assert is_regular(H) == d
    assert H.m == n * d // k
    assert gen_random_regular(n, d, k, seed=3) == H


@pytest.mark.parametrize("n, d, k", [(5, 1, 3), (4, 4, 2), (5, 7, 3)])
def test_random_regular_infeasible(n, d, k):
    with pytest.raises(GenerationError):
        gen_random_regular(n, d, k, seed=0)


def test_random_regular_budget_exhausted():
    with pytest.raises(GenerationError, match="restarts"):
        gen_random_regular(12, 5, 3, seed=1, max_restarts=1, swaps_per_restart=0)


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_random_regular_seeds(seed):
    assert is_regular(gen_random_regular(9, 3, 3, seed)) == 3
