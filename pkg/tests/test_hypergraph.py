from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperspectra.generators import gen_complete, gen_disjoint_blocks, gen_hyperstar, gen_random
from hyperspectra.hypergraph import (
    HypergraphError,
    blow_up,
    build,
    codegree,
    components,
    degrees,
    detect_blowup,
    is_connected,
    is_regular,
    m_value,
    star,
)

from oracles import brute_degrees, connected


@st.composite
def hypergraphs(draw, max_n=9):
    k = draw(st.integers(2, 4))
    n = draw(st.integers(k, max_n))
    m = draw(st.integers(0, min(12, comb(n, k))))
    seed = draw(st.integers(0, 2**32 - 1))
    return gen_random(n, m, k, seed)


def test_build_canonicalizes():
    H = build(3, 5, [(5, 3, 1), (2, 1, 4)])
    assert H.edges == ((1, 2, 4), (1, 3, 5))
    assert H == build(3, 5, [(1, 2, 4), (1, 3, 5)])


def test_build_smallest_and_hyperstar():
    assert build(2, 2, [{1, 2}]).edges == ((1, 2),)
    H = build(3, 9, [{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {1, 8, 9}])
    assert H == gen_hyperstar(4, 3)


@pytest.mark.parametrize("k, n, edges, msg", [
    (3, 4, [(1, 2, 3), (1, 2, 3)], "duplicate"),
    (3, 4, [(1, 2)], "size"),
    (3, 4, [(1, 2, 5)], "outside"),
    (3, 4, [(0, 1, 2)], "outside"),
    (2, 2, [(1, 1)], "repeats"),
    (1, 3, [], "uniformity"),
])
def test_build_rejects(k, n, edges, msg):
    with pytest.raises(HypergraphError, match=msg):
        build(k, n, edges)


def test_degrees_examples():
    deg = degrees(gen_hyperstar(4, 3))
    assert deg.of(1) == 4 and all(deg.of(v) == 1 for v in range(2, 10))
    assert deg.sorted == (4,) + (1,) * 8
    assert set(degrees(gen_complete(6, 3)).degree) == {comb(5, 2)}
    for k in (2, 3, 5):
        assert degrees(build(k, k, [range(1, k + 1)])).degree == (1,) * k


def test_codegree_examples():
    H = gen_hyperstar(4, 3)
    assert all(codegree(H, 1, v) == 1 for v in range(2, 10))
    assert codegree(H, 2, 3) == 1
    assert codegree(H, 2, 4) == 0
    K = gen_complete(6, 3)
    assert all(codegree(K, i, j) == 4 for i in range(1, 7) for j in range(i + 1, 7))
    with pytest.raises(HypergraphError):
        codegree(H, 2, 2)


def test_connectivity_examples():
    assert is_connected(gen_hyperstar(4, 3))
    assert not is_connected(gen_disjoint_blocks(3, 2))
    assert is_connected(blow_up(gen_disjoint_blocks(3, 2)))
    assert is_connected(build(3, 3, [(1, 2, 3)]))
    assert not is_connected(build(3, 4, [(1, 2, 3)]))
    assert is_connected(build(2, 1, []))
    assert not is_connected(build(2, 2, []))


def test_components_examples():
    H = gen_hyperstar(4, 3)
    assert components(H) == [H]
    parts = components(gen_disjoint_blocks(2, 2))
    assert [C.edges for C in parts] == [((1, 2),), ((1, 2),)]
    assert [C.origin for C in parts] == [(1, 2), (3, 4)]
    G = build(3, 10, gen_hyperstar(4, 3).edges)
    parts = components(G)
    assert len(parts) == 2
    assert parts[1].n == 1 and parts[1].m == 0 and parts[1].origin == (10,)


def test_is_regular_examples():
    assert is_regular(gen_complete(6, 3)) == 10
    assert is_regular(build(4, 4, [(1, 2, 3, 4)])) == 1
    for t in (2, 3, 5):
        assert is_regular(gen_hyperstar(t, 3)) is None


def test_detect_blowup_examples():
    assert detect_blowup(gen_hyperstar(4, 3)) == (1, 1)
    assert detect_blowup(gen_complete(6, 3)) is None
    assert detect_blowup(build(4, 4, [(1, 2, 3, 4)])) == (1, 1)


def test_detect_blowup_needs_full_cover():
    assert detect_blowup(build(3, 5, [(1, 2, 3), (1, 4, 5)])) == (1, 1)
    # vertex 6 is isolated: the base misses it, so it is not regular on n-1 vertices
    assert detect_blowup(build(3, 6, [(1, 2, 3), (1, 4, 5)])) is None


@pytest.mark.parametrize("t, k", [(2, 3), (3, 3), (4, 3), (2, 4), (5, 5), (7, 4)])
def test_detect_blowup_hyperstar_family(t, k):
    assert detect_blowup(gen_hyperstar(t, k)) == (1, 1)


def test_blow_up_examples():
    assert blow_up(gen_disjoint_blocks(4, 2)) == build(3, 9, [(1, 2, 9), (3, 4, 9), (5, 6, 9), (7, 8, 9)])
    assert blow_up(build(2, 2, [(1, 2)])) == build(3, 3, [(1, 2, 3)])
    G = blow_up(gen_complete(4, 2))
    deg = degrees(G)
    assert G.k == 3 and G.n == 5 and G.m == 6
    assert deg.of(5) == 6 and all(deg.of(v) == 3 for v in range(1, 5))
    assert detect_blowup(G) == (5, 3)
    with pytest.raises(HypergraphError):
        blow_up(build(2, 3, []))


def test_star_is_k2_blowup():
    S = star(3)
    assert S.edges == ((1, 4), (2, 4), (3, 4))
    assert detect_blowup(S) == (4, 1)


def test_m_value_examples():
    S = star(3)
    assert m_value(S, 4) == 1
    assert all(m_value(S, v) == 3 for v in (1, 2, 3))
    H = gen_hyperstar(4, 3)
    assert m_value(H, 1) == Fraction(1, 4)
    assert m_value(H, 2) == 4
    K = gen_complete(6, 3)
    assert all(m_value(K, v) == 10 for v in range(1, 7))
    with pytest.raises(HypergraphError):
        m_value(build(2, 3, [(1, 2)]), 3)


@given(hypergraphs())
@settings(max_examples=150, deadline=None)
def test_degree_and_codegree_invariants(H):
    deg = degrees(H)
    assert list(deg.degree) == brute_degrees(H.n, H.edges)
    assert sum(deg.degree) == H.k * H.m
    assert sorted(deg.degree, reverse=True) == list(deg.sorted)
    for i in range(1, H.n + 1):
        for j in range(i + 1, H.n + 1):
            c = codegree(H, i, j)
            assert c == sum(1 for e in H.edges if i in e and j in e)
            assert c <= min(deg.of(i), deg.of(j))


@given(hypergraphs())
@settings(max_examples=150, deadline=None)
def test_components_partition(H):
    parts = components(H)
    assert is_connected(H) == (len(parts) == 1)
    assert is_connected(H) == connected(H.n, H.edges)
    if len(parts) == 1:
        assert parts == [H]
        return
    verts = sorted(v for C in parts for v in C.origin)
    assert verts == list(range(1, H.n + 1))
    back = sorted(tuple(sorted(C.origin[v - 1] for v in e)) for C in parts for e in C.edges)
    assert back == list(H.edges)
    assert all(is_connected(C) for C in parts)


@given(st.integers(2, 6), st.integers(2, 5))
def test_blowup_of_blocks_detected(t, r):
    G = blow_up(gen_disjoint_blocks(t, r))
    assert detect_blowup(G) == (G.n, 1)
