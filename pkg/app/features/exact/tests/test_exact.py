import random
import pytest
import networkx as nx
from app.features.exact.tools import (
    SearchBudget,
    max_induced_two_regular,
    brute_force_oracle,
    independence_number,
)
from app.features.exact.core import executor
from app.features.families.tools import diamond_necklace, fixture, random_graph
from app.features.greedy.tools import greedy_two_regular, graph_bound
from app.services.graph import Graph, is_two_regular_induced, max_degree
from app.services.graph_io import emit_graph6
from app.api.error_utilities import DomainError, ToolExecutorError

@pytest.mark.parametrize("name, expected", [
    ("k4", 3),
    ("prism", 4),
    ("fig5_half_cubic", 6),
    ("fig2_two_towers", 10),
])
def test_fixture_values(name, expected):
    result = max_induced_two_regular(fixture(name))
    assert result.optimal
    assert result.certificate.size == expected

def test_complete_bipartite_four():
    assert max_induced_two_regular(fixture("complete_bipartite", 4)).certificate.size == 4
    assert brute_force_oracle(fixture("complete_bipartite", 4)) == 4

def test_three_towers_reach_eighteen():
    assert max_induced_two_regular(fixture("fig3_three_towers")).certificate.size >= 18

@pytest.mark.parametrize("k", [2, 3])
def test_necklaces_reach_three_quarters(k):
    g, _ = diamond_necklace(k)
    assert max_induced_two_regular(g).certificate.size == 3 * g.n // 4

def test_forest_gives_empty_optimal_certificate():
    tree = Graph.from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    result = max_induced_two_regular(tree)
    assert result.optimal
    assert result.certificate.size == 0
    assert brute_force_oracle(tree) == 0

def test_oracle_on_c5():
    assert brute_force_oracle(Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])) == 5

def test_oracle_equivalence_on_random_graphs():
    rng = random.Random(7)
    for _ in range(80):
        g = random_graph(rng.randint(3, 10), rng.uniform(0.2, 0.7), rng.randrange(10**6))
        result = max_induced_two_regular(g)
        assert result.optimal
        assert result.certificate.size == brute_force_oracle(g)
        assert is_two_regular_induced(g, result.certificate.vertices)

def test_components_add_up():
    g = random_graph(14, 0.25, 99)
    whole = max_induced_two_regular(g).certificate.size
    parts = 0
    for component in nx.connected_components(g.to_networkx()):
        sub, _ = g.induced_subgraph(component)
        parts += max_induced_two_regular(sub).certificate.size
    assert whole == parts

def test_exact_is_at_least_greedy_and_the_bound():
    rng = random.Random(12)
    for _ in range(30):
        g = random_graph(rng.randint(6, 12), 0.4, rng.randrange(10**6))
        if max_degree(g) < 3:
            continue
        exact = max_induced_two_regular(g).certificate.size
        greedy, _ = greedy_two_regular(g)
        assert exact >= greedy.size >= graph_bound(g)

def test_exhausted_budget_keeps_a_valid_certificate():
    g = fixture("k4")
    result = max_induced_two_regular(g, SearchBudget(node_limit=1))
    assert not result.optimal
    assert result.certificate.size == 3
    assert is_two_regular_induced(g, result.certificate.vertices)

def test_search_is_deterministic():
    g = random_graph(12, 0.35, 4)
    first = max_induced_two_regular(g)
    second = max_induced_two_regular(g)
    assert first == second

@pytest.mark.parametrize("field", ["node_limit", "time_limit"])
def test_budget_limits_must_be_positive(field):
    with pytest.raises(ValueError):
        SearchBudget(**{field: 0})

def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("CIND_EXACT_NODE_LIMIT", "500")
    monkeypatch.delenv("CIND_EXACT_TIME_LIMIT", raising=False)
    assert SearchBudget.from_env() == SearchBudget(node_limit=500)

def test_oracle_size_limit():
    with pytest.raises(DomainError):
        brute_force_oracle(random_graph(21, 0.1, 1))
    with pytest.raises(DomainError):
        independence_number(random_graph(21, 0.1, 1))

def test_independence_numbers():
    assert independence_number(fixture("k4")) == 1
    assert independence_number(fixture("prism")) == 2
    assert independence_number(fixture("complete_bipartite", 3)) == 3

def test_executor_payload():
    result = executor(graph=emit_graph6(fixture("prism")), format="graph6", node_limit=0, time_limit=0)
    assert result["size"] == 4
    assert result["optimal"] is True
    assert sum(len(c) for c in result["cycles"]) == 4

def test_executor_wraps_parse_errors():
    with pytest.raises(ToolExecutorError):
        executor(graph="C~~", format="graph6")
