import pytest
import networkx as nx
from app.features.families.tools import (
    diamond_necklace,
    tightness_graph,
    fixture,
    random_clawfree_cubic,
    truncate_multigraph,
    random_cubic_graph,
    random_cubic_multigraph,
    generate_family,
    TOWER_ATTACHMENTS,
)
from app.features.families.core import executor
from app.services.graph import (
    Multigraph,
    is_cubic,
    is_claw_free,
    is_two_regular_induced,
    connected_components,
    biconnected_decomposition,
)
from app.services.graph_io import parse_graph6, parse_edgelist
from app.api.error_utilities import DomainError, GenerationError, ToolExecutorError

def is_connected(g):
    return len(connected_components(g)) == 1

@pytest.mark.parametrize("k", [2, 3, 8])
def test_necklace_is_connected_cubic_claw_free(k):
    g, layout = diamond_necklace(k)
    assert g.n == 4 * k
    assert is_cubic(g)
    assert is_claw_free(g)
    assert is_connected(g)
    assert len(layout.diamonds) == k

def test_necklace_admits_three_vertices_per_diamond():
    g, layout = diamond_necklace(5)
    s = [v for a, b, c, d in layout.diamonds for v in (a, c, d)]
    result = is_two_regular_induced(g, s)
    assert result
    assert result.size == 15

def test_necklace_rejects_one_diamond():
    with pytest.raises(DomainError):
        diamond_necklace(1)

@pytest.mark.parametrize("k", [1, 2, 3])
def test_tightness_graph_order_and_shape(k):
    g = tightness_graph(k)
    assert g.n == 20 * k + 34
    assert is_cubic(g)
    assert is_claw_free(g)
    assert is_connected(g)

def test_tightness_graph_rejects_zero():
    with pytest.raises(DomainError):
        tightness_graph(0)

@pytest.mark.parametrize("name, order", [
    ("k4", 4),
    ("prism", 6),
    ("tower", 10),
    ("fig2_two_towers", 14),
    ("fig3_three_towers", 24),
    ("fig5_half_cubic", 12),
])
def test_fixture_orders(name, order):
    assert fixture(name).n == order

@pytest.mark.parametrize("name", ["k4", "prism", "fig2_two_towers", "fig3_three_towers", "fig5_half_cubic"])
def test_cubic_fixtures(name):
    g = fixture(name)
    assert is_cubic(g)
    assert is_connected(g)

@pytest.mark.parametrize("name", ["k4", "prism", "fig2_two_towers", "fig3_three_towers"])
def test_claw_free_fixtures(name):
    assert is_claw_free(fixture(name))

def test_half_cubic_fixture_is_not_claw_free():
    assert not is_claw_free(fixture("fig5_half_cubic"))

def test_tower_fixture_exposes_two_attachments():
    g = fixture("tower")
    assert [v for v in range(g.n) if g.degree(v) == 2] == list(TOWER_ATTACHMENTS)
    assert all(g.degree(v) == 3 for v in range(g.n) if v not in TOWER_ATTACHMENTS)

def test_complete_bipartite_fixture():
    g = fixture("complete_bipartite", 4)
    assert g.n == 8
    assert g.m == 16

def test_unknown_fixture():
    with pytest.raises(DomainError):
        fixture("petersen")

@pytest.mark.parametrize("t, d, seed", [(2, 0, 1), (4, 1, 2), (6, 3, 3), (10, 5, 4), (0, 4, 5), (20, 10, 6)])
def test_random_clawfree_cubic_predicates(t, d, seed):
    g = random_clawfree_cubic(t, d, seed)
    assert g.n == 3 * t + 4 * d
    assert is_cubic(g)
    assert is_claw_free(g)
    assert is_connected(g)

def test_random_clawfree_cubic_is_deterministic():
    assert random_clawfree_cubic(8, 2, 42) == random_clawfree_cubic(8, 2, 42)

def test_all_diamond_generation_is_a_necklace():
    g = random_clawfree_cubic(0, 3, 9)
    assert nx.is_isomorphic(g.to_networkx(), diamond_necklace(3)[0].to_networkx())

def test_two_triangles_give_the_prism():
    g = random_clawfree_cubic(2, 0, 13)
    assert nx.is_isomorphic(g.to_networkx(), fixture("prism").to_networkx())

@pytest.mark.parametrize("t, d", [(3, 1), (0, 1), (0, 0)])
def test_infeasible_unit_counts(t, d):
    with pytest.raises(GenerationError):
        random_clawfree_cubic(t, d, 0)

def test_truncating_a_theta_graph_gives_the_prism():
    theta = Multigraph(n=2, edges=((0, 0, 1), (1, 0, 1), (2, 0, 1)))
    g = truncate_multigraph(theta)
    assert nx.is_isomorphic(g.to_networkx(), fixture("prism").to_networkx())

def test_truncation_with_towers():
    # vertices 1 and 3 have degree 2 and become towers
    square = Multigraph(n=4, edges=((0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 0), (4, 0, 2)))
    g = truncate_multigraph(square, towers=True)
    assert g.n == 3 + 10 + 3 + 10
    assert is_cubic(g)
    assert is_claw_free(g)

def test_truncation_rejects_degree_two_without_towers():
    with pytest.raises(DomainError):
        truncate_multigraph(Multigraph(n=2, edges=((0, 0, 1), (1, 0, 1))))

def test_random_cubic_graph():
    g = random_cubic_graph(12, 3)
    assert g.n == 12
    assert is_cubic(g)

def test_random_cubic_multigraph_is_two_connected():
    for seed in range(10):
        mg = random_cubic_multigraph(8, seed)
        assert all(mg.degree(v) == 3 for v in range(mg.n))
        assert len(biconnected_decomposition(mg).blocks) == 1

def test_generate_family_dispatch():
    assert generate_family("necklace", ["2"], 7).n == 8
    assert generate_family("fixture", ["prism"], 7).n == 6
    with pytest.raises(DomainError):
        generate_family("necklace", ["two"], 7)
    with pytest.raises(DomainError):
        generate_family("wheel", ["5"], 7)

def test_executor_emits_graph6():
    result = executor(family="necklace", params="8", format="graph6", seed=7)
    assert result["format"] == "graph6"
    assert parse_graph6(result["graph"]).n == 32

def test_executor_emits_edgelist():
    result = executor(family="tightness", params="1", format="edgelist", seed=7)
    assert parse_edgelist(result["graph"]).n == 54

def test_executor_wraps_domain_errors():
    with pytest.raises(ToolExecutorError):
        executor(family="necklace", params="1", format="graph6", seed=7)

def test_executor_refuses_graph6_multigraphs():
    with pytest.raises(ToolExecutorError):
        executor(family="multigraph", params="4", format="graph6", seed=7)
