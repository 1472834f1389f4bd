import random
import pytest
import networkx as nx
from fractions import Fraction
from app.features.greedy.tools import (
    greedy_two_regular,
    general_bound,
    regular_bound,
    cubic_bound,
    graph_bound,
)
from app.features.greedy.core import executor
from app.features.families.tools import random_cubic_graph, fixture
from app.services.graph import Graph, is_two_regular_induced, max_degree
from app.services.graph_io import emit_graph6
from app.api.error_utilities import DomainError

def random_graphs(count, seed, low=6, high=16):
    rng = random.Random(seed)
    graphs = []
    while len(graphs) < count:
        n = rng.randint(low, high)
        g = Graph.from_networkx(nx.gnp_random_graph(n, rng.uniform(0.2, 0.5), seed=rng.randrange(10**6)))
        if max_degree(g) >= 3:
            graphs.append(g)
    return graphs

def test_forest_gives_empty_trace():
    tree = Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    certificate, trace = greedy_two_regular(tree)
    assert certificate.size == 0
    assert trace.cycles == ()
    assert trace.length == 0

def test_k4_takes_one_triangle():
    certificate, trace = greedy_two_regular(fixture("k4"))
    assert certificate.size == 3
    assert trace.cycles == ((0, 1, 2),)
    assert trace.removed_neighbors == 1

def test_bound_holds_on_random_graphs():
    for g in random_graphs(60, seed=31):
        certificate, trace = greedy_two_regular(g)
        assert is_two_regular_induced(g, certificate.vertices)
        assert Fraction(trace.length) >= general_bound(g.n, g.m, max_degree(g))
        assert trace.inequality_holds()

def test_trace_replay_reproduces_residuals():
    for g in random_graphs(20, seed=5):
        _, trace = greedy_two_regular(g)
        alive = set(range(g.n))
        for cycle, residual in zip(trace.cycles, trace.residuals):
            alive -= g.closed_neighborhood(cycle)
            assert tuple(sorted(alive)) == residual
        rest, _ = g.induced_subgraph(alive)
        assert nx.is_forest(rest.to_networkx()) or rest.n == 0

def test_cubic_graphs_beat_a_quarter():
    for seed in range(20):
        g = random_cubic_graph(2 * random.Random(seed).randint(2, 15), seed)
        certificate, _ = greedy_two_regular(g)
        assert Fraction(certificate.size) > Fraction(g.n, 4)

def test_general_bound_values():
    assert general_bound(4, 6, 3) == Fraction(3, 2)
    assert general_bound(7, 6, 3) == 0
    assert cubic_bound(20) == Fraction(20, 4) + Fraction(1, 2)

@pytest.mark.parametrize("max_deg", [0, 1, 2])
def test_general_bound_rejects_low_degree(max_deg):
    with pytest.raises(DomainError):
        general_bound(5, 5, max_deg)

def test_regular_bound_values():
    assert regular_bound(4, 3) == Fraction(3, 2)
    assert regular_bound(8, 4) == Fraction(3, 2)
    with pytest.raises(DomainError):
        regular_bound(10, 2)

def test_regular_bound_matches_general_bound():
    rng = random.Random(2)
    for _ in range(50):
        k = rng.randint(3, 9)
        n = 2 * rng.randint(k, 30)
        assert regular_bound(n, k) == general_bound(n, k * n // 2, k)

def test_graph_bound_uses_the_original_degree():
    assert graph_bound(fixture("prism")) == cubic_bound(6)

def test_executor_reports_the_reduced_bound():
    result = executor(graph=emit_graph6(fixture("k4")), format="graph6")
    assert result["size"] == 3
    assert (result["bound_numerator"], result["bound_denominator"]) == (3, 2)

def test_executor_leaves_the_bound_out_for_cycles():
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    result = executor(graph=emit_graph6(c6), format="graph6")
    assert result["size"] == 6
    assert result["bound_numerator"] is None
