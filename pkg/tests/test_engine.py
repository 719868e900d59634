import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import edge_set_complete, index_of, naive_step, tuple_of
from threshold_sds.engine import (
    CapExceededError,
    NotFixedPointError,
    ThresholdSds,
    all_ones,
    bitstring,
    forward_orbit,
    local_update,
    sds_map_array,
    sds_step,
    state_from_bits,
    state_to_bits,
    threshold_eval,
    transient_length,
)
from threshold_sds.graphs import circle_graph, complete_graph, line_graph, max_degree, star_graph


def graphs(max_n=7):
    return st.sampled_from(
        [complete_graph(n) for n in range(1, max_n)]
        + [star_graph(n) for n in range(1, max_n)]
        + [circle_graph(n) for n in range(3, max_n + 1)]
        + [line_graph(n) for n in range(2, max_n + 1)]
    )


@st.composite
def systems(draw, max_n=7, k_range=None):
    g = draw(graphs(max_n))
    order = tuple(draw(st.permutations(range(g.n_vertices))))
    lo, hi = k_range if k_range else (0, max_degree(g) + 2)
    return ThresholdSds(g, draw(st.integers(lo, hi)), order)


def test_threshold_eval():
    assert threshold_eval(2, (1, 0, 1)) == 1
    assert threshold_eval(1, (0, 0, 0)) == 0
    assert threshold_eval(0, (0, 0)) == 1


def test_state_encoding():
    assert state_from_bits((1, 1, 0, 0)) == 0b0011
    assert bitstring(0b0011, 4) == "1100"
    with pytest.raises(ValueError):
        state_from_bits((2, 0))
    with pytest.raises(ValueError):
        state_to_bits(16, 4)


@given(st.integers(1, 16).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1))))
def test_state_roundtrip(args):
    n, s = args
    assert state_from_bits(state_to_bits(s, n)) == s


def test_local_update_examples():
    sds = ThresholdSds.with_identity(circle_graph(4), 2)
    s = state_from_bits((1, 1, 0, 0))
    assert local_update(sds, s, 0) == s
    star = ThresholdSds.with_identity(star_graph(3), 3)
    after = local_update(star, state_from_bits((0, 1, 1, 1)), 0)
    assert state_to_bits(after, 4) == (1, 1, 1, 1)
    with pytest.raises(IndexError):
        local_update(sds, 0, 4)


def test_local_update_zero_fixed():
    for ctor, n in [(complete_graph, 5), (star_graph, 4), (circle_graph, 5), (line_graph, 5)]:
        g = ctor(n)
        for k in (1, 2, 3):
            sds = ThresholdSds.with_identity(g, k)
            assert all(local_update(sds, 0, v) == 0 for v in range(g.n_vertices))


def test_sds_step_examples():
    s = state_from_bits((1, 1, 0))
    for order in [(0, 1, 2), (2, 1, 0), (1, 2, 0)]:
        assert sds_step(ThresholdSds(complete_graph(3), 2, order), s) == all_ones(3)
    sds = ThresholdSds.with_identity(circle_graph(4), 1)
    one = sds_step(sds, state_from_bits((1, 0, 0, 0)))
    assert one & 0b11 == 0b11 and one != 0b11
    assert sds_step(sds, one) == all_ones(4)


@settings(max_examples=200, deadline=None)
@given(systems(), st.data())
def test_step_matches_naive_oracle(sds, data):
    n = sds.n
    s = data.draw(st.integers(0, 2**n - 1))
    edges = {frozenset((u, v)) for u in range(n) for v in sds.graph.adjacency[u]}
    assert sds_step(sds, s) == index_of(naive_step(n, edges, sds.k, sds.order, tuple_of(s, n)))


@settings(max_examples=60, deadline=None)
@given(systems())
def test_array_map_matches_scalar(sds):
    states = np.arange(2**sds.n, dtype=np.uint32)
    assert sds_map_array(sds, states).tolist() == [sds_step(sds, int(s)) for s in states]


@settings(max_examples=200, deadline=None)
@given(systems(), st.data())
def test_monotone(sds, data):
    n = sds.n
    a = data.draw(st.integers(0, 2**n - 1))
    b = a | data.draw(st.integers(0, 2**n - 1))
    fa, fb = sds_step(sds, a), sds_step(sds, b)
    assert fa & ~fb == 0


@settings(max_examples=100, deadline=None)
@given(systems(k_range=(1, 12)))
def test_zero_is_fixed(sds):
    assert sds_step(sds, 0) == 0


@settings(max_examples=100, deadline=None)
@given(systems(k_range=(1, 1)), st.data())
def test_ones_fixed_when_all_neighborhoods_large_enough(sds, data):
    min_closed = min(len(nbrs) for nbrs in sds.graph.adjacency) + 1
    sds = ThresholdSds(sds.graph, data.draw(st.integers(1, min_closed)), sds.order)
    assert sds_step(sds, all_ones(sds.n)) == all_ones(sds.n)


@settings(max_examples=100, deadline=None)
@given(systems(k_range=(1, 1)), st.data())
def test_one_threshold_spreading(sds, data):
    n = sds.n
    s = data.draw(st.integers(1, 2**n - 1))
    nxt = sds_step(sds, s)
    assert s & ~nxt == 0
    x = s
    for _ in range(n):
        x = sds_step(sds, x)
    assert x == all_ones(n)


@settings(max_examples=100, deadline=None)
@given(systems(k_range=(0, 0)), st.data())
def test_k_zero_collapses_to_ones(sds, data):
    s = data.draw(st.integers(0, 2**sds.n - 1))
    assert sds.out_of_regime
    assert sds_step(sds, s) == all_ones(sds.n)


@settings(max_examples=100, deadline=None)
@given(graphs(), st.data())
def test_k_above_degree_collapses_to_zero(g, data):
    sds = ThresholdSds.with_identity(g, max_degree(g) + 2)
    assert sds.out_of_regime
    assert sds_step(sds, data.draw(st.integers(0, 2**g.n_vertices - 1))) == 0


def test_forward_orbit_examples():
    sds = ThresholdSds.with_identity(complete_graph(4), 2)
    assert forward_orbit(sds, 0) == ([], [0])
    assert forward_orbit(sds, state_from_bits((1, 0, 0, 0))) == ([1], [0])
    circ = ThresholdSds.with_identity(circle_graph(5), 2)
    start = state_from_bits((1, 1, 0, 0, 0))
    transient, cycle = forward_orbit(circ, start)
    assert len(cycle) == 1 and len(transient) <= 1


def test_forward_orbit_cap():
    sds = ThresholdSds.with_identity(line_graph(5), 1)
    with pytest.raises(CapExceededError):
        forward_orbit(sds, 1 << 4, cap=2)
    with pytest.raises(ValueError):
        forward_orbit(sds, 0, cap=0)


def test_transient_length_examples():
    line = ThresholdSds.with_identity(line_graph(5), 1)
    assert transient_length(line, 0) == 0
    assert transient_length(line, state_from_bits((0, 0, 0, 0, 1))) == 4
    start = state_from_bits((0, 1, 1, 1, 0))
    rng = np.random.default_rng(3)
    for _ in range(10):
        sds = ThresholdSds(star_graph(4), 3, tuple(rng.permutation(5)))
        assert transient_length(sds, start) <= 2


def test_transient_length_rejects_cycles(monkeypatch):
    import threshold_sds.engine as engine

    sds = ThresholdSds.with_identity(line_graph(2), 1)
    monkeypatch.setattr(engine, "sds_step", lambda _sds, s: s ^ 1)
    with pytest.raises(NotFixedPointError):
        transient_length(sds, 0)


def test_order_validation_and_regime_flag():
    with pytest.raises(ValueError):
        ThresholdSds(line_graph(3), 1, (0, 0, 1))
    with pytest.raises(ValueError):
        ThresholdSds(line_graph(3), -1, (0, 1, 2))
    assert not ThresholdSds.with_identity(line_graph(3), 3).out_of_regime
    assert ThresholdSds.with_identity(line_graph(3), 4).out_of_regime


def test_width_cap():
    big = ThresholdSds.with_identity(line_graph(31), 1)
    with pytest.raises(CapExceededError):
        sds_step(big, 0)


def test_complete_oracle_sanity():
    edges = edge_set_complete(3)
    assert naive_step(3, edges, 2, (0, 1, 2), (1, 1, 0)) == (1, 1, 1)
