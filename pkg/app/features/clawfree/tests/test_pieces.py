import pytest
import random
from fractions import Fraction
from app.features.clawfree.tools import reduce_step, IRREDUCIBLE
from app.features.clawfree.pieces import (
    build_contraction,
    build_pieces,
    construct_from_pieces,
    lift_cycle,
    contribution,
    ledger_value,
    RED,
    YELLOW,
    UNCOLORED,
    CYCLE,
    NONTRIVIAL,
)
from app.features.clawfree.construction import construct_large_two_regular
from app.features.families.tools import fixture, random_cubic_graph, truncate_multigraph
from app.services.graph import Multigraph, is_two_regular_induced

def k4_with(first, offset, extra):
    """K4 on offset..offset+3 whose edge offset+1, offset+3 is subdivided by `extra`."""
    a, b, c, d = range(offset, offset + 4)
    ends = [(a, b), (a, c), (a, d), (b, c), (c, d), (b, extra), (extra, d)]
    return tuple((first + i, u, v) for i, (u, v) in enumerate(ends))

def bridged_k4_pair():
    # nodes 8 and 9 subdivide one edge of each K4 and are joined by a bridge
    edges = k4_with(0, 0, 8) + k4_with(7, 4, 9) + ((14, 8, 9),)
    return truncate_multigraph(Multigraph(n=10, edges=edges))

def k4_with_tower():
    mg = Multigraph(n=5, edges=((0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 1, 2), (4, 1, 4), (5, 3, 4), (6, 2, 3)))
    return truncate_multigraph(mg, towers=True)

def tower_ring(length):
    edges = tuple((i, i, (i + 1) % length) for i in range(length))
    return truncate_multigraph(Multigraph(n=length, edges=edges), towers=True)

def decompose(g):
    outcome = reduce_step(g)
    assert outcome.kind == IRREDUCIBLE
    h = build_contraction(g, outcome.partition, outcome.towers)
    return h, build_pieces(h)

def test_contraction_of_a_tower_subdivision():
    h, pieces = decompose(k4_with_tower())
    assert len(h.nodes) == 5
    assert [h.color(node) for node in range(5)] == [UNCOLORED] * 4 + [RED]
    assert h.graph.degree(4) == 2
    assert h.block_kinds == [NONTRIVIAL]
    assert len(pieces.blocks) == 1
    assert [cactus.nodes for cactus in pieces.cacti] == [(4,)]
    assert pieces.order == [("B", 0), ("C", 0)]

def test_block_piece_replaces_colored_paths_by_edges():
    _, pieces = decompose(k4_with_tower())
    block = pieces.blocks[0]
    assert block.nodes == (0, 1, 2, 3)
    assert [edge.inner for edge in block.edges if edge.inner] == [(4,)]
    assert all(block.graph.degree(v) == 3 for v in range(4))

def test_bridged_pair_has_two_block_pieces():
    h, pieces = decompose(bridged_k4_pair())
    assert h.color(8) == YELLOW
    assert h.color(9) == YELLOW
    assert len(pieces.blocks) == 2
    assert [cactus.nodes for cactus in pieces.cacti] == [(8, 9)]
    assert pieces.order == [("B", 0), ("C", 0), ("B", 1)]
    assert pieces.parent[("B", 1)] == ("C", 0)

def test_bridged_pair_construction():
    g = bridged_k4_pair()
    _, pieces = decompose(g)
    chosen, summaries = construct_from_pieces(g, pieces)
    assert is_two_regular_induced(g, chosen).size == 21

    cactus = next(summary for summary in summaries if summary.kind == "C")
    assert cactus.ledger_total == "11/10"
    assert cactus.cases[9] == "6c"
    assert cactus.cases[8] in ("1", "1 covered")

    # the child block piece follows the choice made for node 9
    child = next(summary for summary in summaries if summary.kind == "B" and summary.index == 1)
    assert child.chosen.split()[0] in ("contain", "avoid")

def test_ring_of_towers_is_one_cycle_block():
    h, pieces = decompose(tower_ring(3))
    assert h.block_kinds == [CYCLE]
    assert pieces.blocks == []
    assert pieces.root == ("C", 0)
    start, walk = pieces.cacti[0].cycles[0]
    cycle = lift_cycle(h, start, walk)
    assert len(cycle) == 6
    assert is_two_regular_induced(tower_ring(3), cycle).size == 6

def test_tower_subdivision_beats_the_threshold():
    result = construct_large_two_regular(k4_with_tower())
    assert result.threshold == 15
    assert result.certificate.size >= 15
    assert [piece.kind for piece in result.pieces] == ["B", "C"]

def test_truncated_k4_construction():
    k4 = Multigraph(n=4, edges=((0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 1, 2), (4, 1, 3), (5, 2, 3)))
    result = construct_large_two_regular(truncate_multigraph(k4))
    assert result.certificate.size == 8
    assert result.threshold == 8

@pytest.mark.parametrize("color, label, picked, count", [
    (YELLOW, "3", True, 3),
    (YELLOW, "3", False, 0),
    (RED, "4", True, 8),
    (RED, "4", False, 5),
    (YELLOW, "1 covered", False, 2),
    (RED, "2 covered", True, 7),
    (YELLOW, "6c", True, 3),
    (YELLOW, "6c", False, 2),
    (RED, "6b", False, 7),
    (YELLOW, "5a", False, 2),
])
def test_contribution_counts(color, label, picked, count):
    assert contribution(color, label, picked) == count

def test_ledger_values_average_out():
    assert ledger_value(YELLOW, "3", True) + ledger_value(YELLOW, "3", False) == Fraction(-9, 10)
    assert ledger_value(RED, "4", True) + ledger_value(RED, "4", False) == 0
    assert ledger_value(RED, "5", False) == Fraction(1, 2)
    assert ledger_value(YELLOW, "1 covered", False) == Fraction(1, 20)

class HubBuilder:
    """Multigraph whose degree-3 vertices become triangles and degree-2 vertices towers."""

    def __init__(self):
        self.n = 0
        self.edges = []

    def vertex(self):
        self.n += 1
        return self.n - 1

    def edge(self, u, v):
        self.edges.append((len(self.edges), u, v))

    def cycle(self, vertices):
        for u, v in zip(vertices, vertices[1:] + vertices[:1]):
            self.edge(u, v)

    def block(self, base, inner_count):
        """Copies `base` with its first edge subdivided by `inner_count` new vertices, returned in path order."""
        offset = self.n
        self.n += base.n
        (u, v), *rest = base.edges()
        for x, y in rest:
            self.edge(offset + x, offset + y)
        inner = [self.vertex() for _ in range(inner_count)]
        path = [offset + u] + inner + [offset + v]
        for x, y in zip(path, path[1:]):
            self.edge(x, y)
        return inner

    def ring(self, anchor):
        # one triangle and two towers
        r = self.vertex()
        self.cycle([r, self.vertex(), self.vertex()])
        self.edge(anchor, r)

    def junction(self, anchor):
        j = self.vertex()
        self.edge(anchor, j)
        self.ring(j)
        self.ring(j)

    def build(self):
        return truncate_multigraph(Multigraph(n=self.n, edges=tuple(self.edges)), towers=True)

def hub_graph():
    # a ring of four triangles, each bridged to a K4 block; two blocks carry a
    # second bridged triangle on their path, the other two a tower
    builder = HubBuilder()
    hub = [builder.vertex() for _ in range(4)]
    builder.cycle(hub)
    for anchor in hub[:2]:
        x, y = builder.block(fixture("k4"), 2)
        builder.edge(anchor, x)
        builder.junction(y)
    for anchor in hub[2:]:
        z, _ = builder.block(fixture("k4"), 2)
        builder.edge(anchor, z)
    return builder.build()

def random_hub_graph(seed):
    rng = random.Random(seed)
    builder = HubBuilder()
    hub = [builder.vertex() for _ in range(rng.randint(3, 5))]
    builder.cycle(hub)
    for anchor in hub:
        roll = rng.random()
        if roll < 0.2:
            # left with degree 2, so it becomes a tower on the ring
            continue
        if roll < 0.4:
            (builder.ring if rng.random() < 0.5 else builder.junction)(anchor)
            continue
        kinds = ["yellow"] + [rng.choice(("yellow", "tower")) for _ in range(rng.randint(0, 2))]
        rng.shuffle(kinds)
        base = random_cubic_graph(rng.choice((4, 6)), rng.randrange(2 ** 32))
        inner = builder.block(base, len(kinds))
        attached = False
        for v, kind in zip(inner, kinds):
            if kind == "tower":
                continue
            if not attached:
                builder.edge(anchor, v)
                attached = True
            else:
                (builder.ring if rng.random() < 0.5 else builder.junction)(v)
    return builder.build()

def cactus_summaries(result):
    return [piece for piece in result.pieces if piece.kind == "C"]

def test_hub_graph_reaches_every_cactus_case():
    result = construct_large_two_regular(hub_graph())
    assert result.surgeries == ()
    assert result.certificate.size >= result.threshold

    cacti = cactus_summaries(result)
    assert len(cacti) == 1
    labels = set(cacti[0].cases.values())
    assert {"3", "5a", "5b", "6a", "6b"} <= labels
    assert Fraction(cacti[0].ledger_total) >= 0

def test_cactus_ledgers_are_never_negative():
    seen = set()
    for seed in range(60):
        g = random_hub_graph(seed)
        result = construct_large_two_regular(g)
        assert result.certificate.size >= result.threshold
        for piece in cactus_summaries(result):
            assert Fraction(piece.ledger_total) >= 0, f"seed {seed}, cactus {piece.index}"
            seen.update(piece.cases.values())
    assert {"5b", "6a", "6b"} <= seen
