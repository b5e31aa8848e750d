import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mban.core import (
    Configuration,
    Digraph,
    MajorityNetwork,
    evolve,
    local_majority,
    network_metrics,
    step,
)
from mban.errors import BudgetExceeded, DimensionError, DomainError, ParameterError
from mban import families

from .conftest import digraphs
from .oracles import naive_step, stored_orbit


@pytest.mark.parametrize(
    "states, current, expected",
    [([1, 1, 0], 0, 1), ([1, 0], 0, 0), ([1, 0], 1, 1), ([], 1, 1), ([], 0, 0), ([0, 0, 1], 1, 0)],
)
def test_local_majority(states, current, expected):
    assert local_majority(states, current) == expected


def test_configuration_text_round_trip():
    x = Configuration.from_text("1100101")
    assert x.n == 7
    assert [x[v] for v in range(7)] == [1, 1, 0, 0, 1, 0, 1]
    assert x.to_text() == "1100101"
    assert x.ones() + x.zeros() == 7


@given(st.integers(1, 80).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_configuration_round_trip_property(nb):
    n, bits = nb
    x = Configuration(n, bits)
    assert Configuration.from_text(x.to_text()) == x
    assert x.ones() + x.zeros() == n


def test_configuration_rejects_bad_input():
    with pytest.raises(ParameterError):
        Configuration.from_text("10a")
    with pytest.raises(ParameterError):
        Configuration(3, 8)
    with pytest.raises(DomainError):
        Configuration.from_text("10").majority()


def test_digraph_validation():
    with pytest.raises(ParameterError):
        Digraph.from_arcs(2, [(0, 2)])
    g = Digraph.from_arcs(3, [(0, 1), (0, 1), (2, 2)])
    assert g.arc_count == 2
    assert g.arcs() == [(0, 1), (2, 2)]


def test_step_examples(k3, c3):
    assert step(k3, Configuration.from_text("110")).to_text() == "111"
    assert step(c3, Configuration.from_text("110")).to_text() == "011"
    assert step(k3, Configuration.from_text("000")).to_text() == "000"


def test_step_dimension_mismatch(k3):
    with pytest.raises(DimensionError):
        step(k3, Configuration.from_text("11"))


def test_step_is_synchronous():
    # 0 -> 1 -> 2 chain; a sequential update would let the 1 travel two hops
    g = Digraph.from_arcs(3, [(0, 0), (0, 1), (1, 2)])
    assert step(g, Configuration.from_text("100")).to_text() == "110"


def test_empty_neighbourhood_is_identity():
    g = Digraph.from_arcs(3, [])
    for text in ("000", "101", "011"):
        assert step(g, Configuration.from_text(text)).to_text() == text


def test_evolve_examples(k3, c3):
    out = evolve(k3, Configuration.from_text("110"), 10)
    assert (out.transient, out.cycle_length, out.entry_config.to_text()) == (1, 1, "111")
    out = evolve(c3, Configuration.from_text("110"), 10)
    assert (out.transient, out.cycle_length) == (0, 3)


def test_evolve_complete_cycle_seven():
    # Frozen from the stored-orbit oracle: 1110000 has three ones, majority 0
    g = families.complete_cycle(7)
    out = evolve(g, Configuration.from_text("1110000"), 100)
    assert (out.transient, out.cycle_length, out.entry_config.to_text()) == (7, 1, "0000000")
    assert stored_orbit(g, [1, 1, 1, 0, 0, 0, 0]) == (7, 1, [0] * 7)


def test_evolve_budget():
    c = families.directed_cycle(9)
    x = Configuration.from_text("100000000")
    with pytest.raises(BudgetExceeded) as err:
        evolve(c, x, max_steps=5)
    assert err.value.required in (None, 9)
    # exactly enough budget succeeds
    assert evolve(c, x, max_steps=9).cycle_length == 9
    with pytest.raises(ParameterError):
        evolve(c, x, max_steps=0)


def test_network_metrics_examples():
    m = network_metrics(families.complete(7))
    assert (m.edge_count, m.distinct_in_degrees, m.max_in_degree, m.non_omniscient) == (49, 1, 7, False)
    m = network_metrics(families.complementary_left_right(7))
    assert (m.edge_count, m.distinct_in_degrees, m.max_in_degree, m.non_omniscient) == (35, 1, 5, True)
    g = families.two_intersecting_cycles(7, 4)
    m = network_metrics(g)
    assert set(g.in_degrees()) == {1, 5}
    assert (m.distinct_in_degrees, m.non_omniscient) == (2, True)


@given(digraphs(max_n=9), st.sampled_from([0, 1]))
def test_uniform_configurations_are_fixed(g, b):
    x = Configuration.uniform(g.n, b)
    assert step(g, x) == x


@settings(max_examples=60)
@given(digraphs(max_n=8), st.data())
def test_step_matches_naive(g, data):
    bits = data.draw(st.integers(0, (1 << g.n) - 1))
    x = Configuration(g.n, bits)
    assert [step(g, x)[v] for v in range(g.n)] == naive_step(g, [x[v] for v in range(g.n)])


@settings(max_examples=60)
@given(digraphs(max_n=12), st.data())
def test_evolve_is_minimal(g, data):
    bits = data.draw(st.integers(0, (1 << g.n) - 1))
    x = Configuration(g.n, bits)
    out = evolve(g, x)
    mu, lam, entry = stored_orbit(g, [x[v] for v in range(g.n)])
    assert (out.transient, out.cycle_length) == (mu, lam)
    assert [out.entry_config[v] for v in range(g.n)] == entry
    assert (out.cycle_length == 1) == (step(g, out.entry_config) == out.entry_config)
    assert evolve(g, x) == out


@settings(max_examples=60)
@given(digraphs(max_n=8), st.data())
def test_odd_degrees_never_hit_the_tie_branch(g, data):
    # Make every in-degree odd by toggling self-loops on even-degree nodes
    arcs = set(g.arcs())
    for v, d in enumerate(g.in_degrees()):
        if d % 2 == 0:
            arcs ^= {(v, v)}
    odd = Digraph.from_arcs(g.n, arcs)
    assert all(d % 2 for d in odd.in_degrees())
    bits = data.draw(st.integers(0, (1 << g.n) - 1))
    x = Configuration(g.n, bits)
    y = step(odd, x)
    for v in range(g.n):
        nbrs = [x[u] for u in odd.in_neighbors[v]]
        assert y[v] == local_majority(nbrs, 1 - x[v])


def test_majority_network_is_hashable_and_deterministic(k3):
    a, b = MajorityNetwork(k3), MajorityNetwork(k3)
    assert a == b
    assert a.step_bits(3) == b.step_bits(3) == 7
