import math
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperspectra.bounds import (
    BoundError,
    adj_upper_d1d2,
    adj_upper_maxdeg,
    adj_upper_sqrt_dd,
    adj_upper_sqrt_mm,
    b_prime,
    classify_equality,
    coedge_pairs,
    full_report,
    m_values,
    q_lower_d1,
    q_upper_d1d2,
    q_upper_m,
    q_upper_pairdeg,
    q_upper_weighted,
)
from hyperspectra.generators import gen_complete, gen_disjoint_blocks, gen_hyperstar, gen_random
from hyperspectra.hypergraph import build, degrees, is_connected, m_value, star
from hyperspectra.spectral import SolverOptions
from hyperspectra.tensor import WeightVector

HS = gen_hyperstar(4, 3)
K63 = gen_complete(6, 3)
PATH3 = build(2, 3, [(1, 2), (2, 3)])


def brute_b_prime(H, b):
    # straight from the definition, one edge at a time
    out = []
    for p in range(1, H.n + 1):
        total = 0.0
        for e in H.edges:
            if p in e:
                total += math.prod(b[u - 1] for u in e if u != p)
        out.append(total / b[p - 1] ** (H.k - 1))
    return np.array(out)


def test_maxdeg_examples():
    assert adj_upper_maxdeg(HS) == 4
    assert adj_upper_maxdeg(K63) == 10
    assert adj_upper_maxdeg(build(3, 3, [(1, 2, 3)])) == 1


def test_d1d2_examples():
    assert adj_upper_d1d2(HS) == pytest.approx(4 ** (1 / 3), rel=1e-15)
    assert adj_upper_d1d2(K63) == 10.0
    # degrees 5, 3, ... : vertex 1 in five edges, vertex 2 in three
    H = build(3, 8, [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 6, 7), (1, 7, 8)])
    assert degrees(H).sorted[:2] == (5, 3)
    value = adj_upper_d1d2(H)
    assert value == pytest.approx(3.5568933044900626, rel=1e-14)
    assert value <= adj_upper_maxdeg(H)
    with pytest.raises(BoundError):
        adj_upper_d1d2(build(2, 1, []))


def test_coedge_pairs_examples():
    assert coedge_pairs(build(3, 3, [(1, 2, 3)])) == {(1, 2), (1, 3), (2, 3)}
    pairs = coedge_pairs(HS)
    assert len(pairs) == 12
    assert sum(1 for p in pairs if 1 in p) == 8
    assert coedge_pairs(build(3, 4, [])) == set()


def test_b_prime_examples():
    np.testing.assert_array_equal(b_prime(HS, WeightVector.ones(9)), HS.degree_vector)
    H = build(3, 3, [(1, 2, 3)])
    np.testing.assert_allclose(b_prime(H, WeightVector([1.0, 2.0, 3.0])), [6.0, 3 / 4, 2 / 9],
                               rtol=1e-15)
    bp = b_prime(HS, WeightVector(HS.degree_vector))
    np.testing.assert_allclose(bp, [float(m_value(HS, v)) for v in range(1, 10)], rtol=1e-15)


@given(st.integers(0, 10_000), st.integers(2, 4))
@settings(max_examples=60, deadline=None)
def test_b_prime_matches_definition_and_log_path(seed, k):
    H = gen_random(8, 10, k, seed)
    b = np.random.default_rng(seed).uniform(0.2, 5.0, 8)
    direct = b_prime(H, WeightVector(b), log_domain=False)
    np.testing.assert_allclose(direct, brute_b_prime(H, b), rtol=1e-13)
    np.testing.assert_allclose(b_prime(H, WeightVector(b), log_domain=True), direct, rtol=1e-12)


def test_b_prime_extreme_weights_switch_to_logs():
    H = build(4, 5, [(1, 2, 3, 4), (2, 3, 4, 5)])
    b = WeightVector(np.full(5, 1e150))
    # every product of three weights is 1e450, yet each ratio is exactly 1 per edge
    auto = b_prime(H, b)
    np.testing.assert_allclose(auto, H.degree_vector, rtol=1e-12)
    with np.errstate(all="ignore"):
        naive = b_prime(H, b, log_domain=False)
    assert not np.any(np.isfinite(naive))


def test_b_prime_log_path_overflowing_result_is_inf():
    H = build(3, 3, [(1, 2, 3)])
    out = b_prime(H, WeightVector([1e-200, 1e200, 1e200]))
    assert out[0] == np.inf
    assert out[1] == pytest.approx(1e-200 / 1e200, rel=1e-12)


def test_m_values_exact():
    mv = m_values(HS)
    assert mv[1] == Fraction(1, 4) and mv[2] == 4
    assert m_values(build(3, 4, [(1, 2, 3)])).keys() == {1, 2, 3}


def test_weighted_examples():
    for H in (HS, K63, PATH3, gen_random(9, 15, 3, seed=1)):
        assert q_upper_weighted(H, WeightVector.ones(H.n)) == q_upper_pairdeg(H)
    S = star(3)
    assert q_upper_weighted(S, WeightVector(S.degree_vector)) == pytest.approx(4.0, rel=1e-15)
    assert q_upper_weighted(K63, WeightVector.ones(6)) == 20.0
    with pytest.raises(BoundError):
        q_upper_weighted(build(3, 4, []), WeightVector.ones(4))


def test_d1_q_bounds_examples():
    assert (q_lower_d1(K63), q_upper_d1d2(K63)) == (10.0, 20.0)
    assert q_lower_d1(HS) == 4.0
    assert q_upper_d1d2(HS) == pytest.approx(4 + 4 ** (1 / 3), rel=1e-15)
    H = build(3, 3, [(1, 2, 3)])
    assert (q_lower_d1(H), q_upper_d1d2(H)) == (1.0, 2.0)


def test_pair_bounds_hyperstar():
    assert q_upper_pairdeg(HS) == 5.0
    assert adj_upper_sqrt_dd(HS) == 2.0
    # centre-leaf pair gives (5 + sqrt(13)) / 2; leaf-leaf pairs give 5
    assert q_upper_m(HS) == 5.0
    assert adj_upper_sqrt_mm(HS) == 4.0


def test_pair_bounds_regular():
    d = 10
    assert q_upper_pairdeg(K63) == 2 * d
    assert adj_upper_sqrt_dd(K63) == d
    assert adj_upper_sqrt_mm(K63) == d
    assert q_upper_m(K63) == 2 * d


def test_pair_bounds_path():
    assert q_upper_pairdeg(PATH3) == 3.0
    assert adj_upper_sqrt_dd(PATH3) == math.sqrt(2)


def test_classification_examples():
    c = classify_equality(K63)
    assert (c.label, c.degree, c.predicted_adj, c.predicted_q) == ("regular", 10, 10.0, 20.0)
    c = classify_equality(HS)
    assert (c.label, c.apex, c.degree) == ("blowup", 1, 1)
    assert c.predicted_adj == pytest.approx(4 ** (1 / 3), rel=1e-15)
    assert c.predicted_q is None
    assert str(classify_equality(PATH3)) == "BlowupOfRegular(2,1)"
    assert classify_equality(build(2, 4, [(1, 2), (2, 3), (3, 4)])).label == "general"


def test_report_hyperstar():
    r = full_report(HS)
    assert r.passed
    assert abs(r.entries["adj_d1d2"].slack) <= 1e-8
    assert r.entries["adj_d1d2"].predicted_equality
    for e in r.entries.values():
        if e.direction == "upper" and e.name != "adj_d1d2":
            assert e.slack >= 0


def test_report_regular():
    r = full_report(K63)
    assert r.passed
    assert abs(r.entries["q_upper_d1d2"].slack) <= 1e-7
    assert abs(r.entries["adj_maxdeg"].slack) <= 1e-8
    assert {c.name for c in r.checks} >= {"adj_maxdeg:equality", "adj_d1d2:equality",
                                          "q_upper_d1d2:equality"}


def test_report_disconnected():
    r = full_report(gen_disjoint_blocks(2, 2))
    assert r.passed and not r.connected
    for name in ("q_upper_weighted[uniform]", "q_upper_weighted[degree]", "q_upper_pairdeg",
                 "q_upper_m", "adj_sqrt_dd", "adj_sqrt_mm"):
        e = r.entries[name]
        assert not e.applicable and e.component_value is not None
        assert "disconnected" in e.note
    assert r.entries["adj_d1d2"].applicable


def test_report_with_isolated_vertex_and_custom_weights():
    H = build(3, 10, HS.edges)
    b = WeightVector(np.linspace(0.5, 2.0, 10))
    r = full_report(H, weight_choices=["uniform", "degree", ("mine", b)])
    assert r.passed
    assert "q_upper_weighted[mine]" in r.entries
    assert r.entries["q_upper_weighted[mine]"].component_value is not None


def test_report_edgeless():
    r = full_report(build(3, 4, []))
    assert r.passed
    assert r.entries["adj_sqrt_dd"].value is None


def test_report_numeric_failure_does_not_raise():
    r = full_report(gen_hyperstar(4, 3), SolverOptions(max_iterations=2))
    assert not r.passed and r.numeric_failures
    assert all("not converged" in m for m in r.numeric_failures)


def test_strictness_monitor_for_general():
    H = build(2, 4, [(1, 2), (2, 3), (3, 4), (2, 4)])
    r = full_report(H)
    assert classify_equality(H).label == "general"
    mon = {c.name: c for c in r.monitors}
    assert mon["strict:adj_d1d2"].passed


@st.composite
def connected_cases(draw):
    k = draw(st.integers(2, 4))
    n = draw(st.integers(k + 1, 10))
    m = draw(st.integers(1, min(25, comb(n, k))))
    H = gen_random(n, m, k, draw(st.integers(0, 2**32 - 1)))
    return H


@given(connected_cases())
@settings(max_examples=150, deadline=None)
def test_report_invariants(H):
    r = full_report(H)
    assert r.passed, [c for c in r.failed_checks]
    e = r.entries
    assert e["adj_d1d2"].value <= e["adj_maxdeg"].value + 1e-12
    if is_connected(H):
        for name in ("adj_maxdeg", "adj_d1d2", "adj_sqrt_dd", "adj_sqrt_mm"):
            assert r.spectral_adj.hi <= e[name].value + 1e-9
        assert e["q_lower_d1"].value <= r.spectral_q.hi + 1e-9
        for name in ("q_upper_d1d2", "q_upper_weighted[uniform]", "q_upper_weighted[degree]",
                     "q_upper_pairdeg", "q_upper_m"):
            assert r.spectral_q.hi <= e[name].value + 1e-9
        assert abs(e["q_upper_weighted[uniform]"].value - e["q_upper_pairdeg"].value) <= 1e-12
        assert abs(e["q_upper_weighted[degree]"].value - e["q_upper_m"].value) <= 1e-12
    cls = r.classification
    if cls.label == "regular":
        assert abs(r.spectral_adj.estimate - cls.degree) <= 1e-8
        assert abs(r.spectral_q.estimate - 2 * cls.degree) <= 1e-7
    elif cls.label == "blowup":
        assert abs(r.spectral_adj.estimate - e["adj_d1d2"].value) <= 1e-8
    elif is_connected(H) and degrees(H).d1 > degrees(H).d2:
        assert e["adj_d1d2"].value - r.spectral_adj.estimate > 1e-9


@given(connected_cases(), st.floats(1e-6, 1e-2))
@settings(max_examples=30, deadline=None)
def test_loose_tolerance_same_verdicts(H, tol):
    tight = full_report(H)
    loose = full_report(H, SolverOptions(tolerance=tol))
    assert [(c.name, c.passed) for c in tight.checks] == [(c.name, c.passed) for c in loose.checks]
