import random
import pytest
from app.features.matching.tools import (
    Matching,
    is_matching,
    is_perfect,
    maximum_matching,
    perfect_matching_containing,
    perfect_matching_avoiding,
    tutte_violator,
    all_perfect_matchings,
    diamond_gadget_substitute,
)
from app.features.families.tools import random_cubic_multigraph, random_cubic_graph
from app.services.graph import Graph, Multigraph, biconnected_decomposition
from app.api.error_utilities import DomainError

def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)]).to_multigraph()

def random_multigraph(rng, n):
    edges = []
    for i in range(rng.randint(0, 2 * n)):
        u, v = rng.sample(range(n), 2)
        edges.append((i, u, v))
    return Multigraph(n=n, edges=tuple(edges))

def brute_maximum(g):
    best = 0
    def grow(start, covered, size):
        nonlocal best
        best = max(best, size)
        for index in range(start, len(g.edges)):
            _, u, v = g.edges[index]
            if u not in covered and v not in covered:
                grow(index + 1, covered | {u, v}, size + 1)
    grow(0, frozenset(), 0)
    return best

DOUBLED_EDGE = Multigraph(n=2, edges=((0, 0, 1), (1, 0, 1)))

def test_even_cycle_has_a_perfect_matching():
    matching = maximum_matching(cycle(6))
    assert len(matching) == 3
    assert is_perfect(cycle(6), matching.edge_ids)

def test_odd_cycle():
    assert len(maximum_matching(cycle(5))) == 2

def test_maximum_matching_agrees_with_enumeration():
    rng = random.Random(21)
    for _ in range(60):
        g = random_multigraph(rng, rng.randint(2, 8))
        matching = maximum_matching(g)
        assert is_matching(g, matching.edge_ids)
        assert len(matching) == brute_maximum(g)

def test_parallel_bundle_reports_its_smallest_id():
    assert maximum_matching(DOUBLED_EDGE).edge_ids == (0,)

def test_containing_on_a_doubled_edge():
    assert perfect_matching_containing(DOUBLED_EDGE, 1).edge_ids == (1,)

def test_avoiding_on_square_and_single_edge():
    square = cycle(4)
    for edge_id in square.edge_ids():
        matching = perfect_matching_avoiding(square, edge_id)
        assert matching is not None
        assert edge_id not in matching
    single = Graph.from_edges(2, [(0, 1)]).to_multigraph()
    assert perfect_matching_avoiding(single, 0) is None

def test_unknown_edge_id():
    with pytest.raises(DomainError):
        perfect_matching_containing(cycle(4), 9)

def test_cubic_multigraphs_are_one_extendable():
    for seed in range(25):
        g = random_cubic_multigraph(2 * random.Random(seed).randint(1, 6), seed)
        for edge_id in g.edge_ids():
            containing = perfect_matching_containing(g, edge_id)
            assert containing is not None
            assert edge_id in containing
            assert is_perfect(g, containing.edge_ids)
            avoiding = perfect_matching_avoiding(g, edge_id)
            assert avoiding is not None
            assert edge_id not in avoiding
            assert is_perfect(g, avoiding.edge_ids)

def test_bridgeless_cubic_graphs_are_one_extendable():
    checked = 0
    for seed in range(30):
        g = random_cubic_graph(12, seed).to_multigraph()
        if biconnected_decomposition(g).bridges:
            continue
        checked += 1
        assert all(perfect_matching_containing(g, e) is not None for e in g.edge_ids())
    assert checked > 0

def test_avoiding_agrees_with_enumeration():
    for seed in range(10):
        g = random_cubic_multigraph(8, seed)
        matchings = all_perfect_matchings(g)
        for edge_id in g.edge_ids():
            exists = any(edge_id not in m for m in matchings)
            assert (perfect_matching_avoiding(g, edge_id) is not None) == exists

def test_tutte_on_cycles():
    assert tutte_violator(cycle(5)) == ()
    assert tutte_violator(cycle(6)) is None

def test_tutte_agrees_with_matching_perfection():
    rng = random.Random(4)
    for _ in range(60):
        g = random_multigraph(rng, rng.randint(2, 9))
        perfect = 2 * len(maximum_matching(g)) == g.n
        assert (tutte_violator(g) is None) == perfect

def test_tutte_size_limit():
    with pytest.raises(DomainError):
        tutte_violator(cycle(21))

def test_gadget_on_a_doubled_edge():
    gadget, mapping = diamond_gadget_substitute(DOUBLED_EDGE, 0)
    assert gadget.n == 6
    assert all(gadget.degree(v) == 3 for v in range(2, 6))
    matchings = all_perfect_matchings(gadget)
    assert len(matchings) == 3
    for matching in matchings:
        lifted = mapping.lift(matching)
        assert is_perfect(DOUBLED_EDGE, lifted.edge_ids)
        if mapping.e1 in matching:
            assert mapping.e2 in matching and mapping.e3 in matching
            assert lifted.edge_ids == (0,)
        else:
            assert lifted.edge_ids == (1,)

def test_gadget_needs_a_parallel_edge():
    with pytest.raises(DomainError):
        diamond_gadget_substitute(cycle(4), 0)

def test_matching_model():
    matching = Matching(edge_ids=(1, 4))
    assert 4 in matching
    assert len(matching) == 2
