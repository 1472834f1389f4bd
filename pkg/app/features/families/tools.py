import os
import random
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict

from app.api.error_utilities import DomainError, GenerationError
from app.services.graph import Graph, Multigraph, biconnected_decomposition
from app.services.graph_io import parse_edgelist
from app.services.logger import setup_logger

logger = setup_logger(__name__)

MAX_GENERATION_ATTEMPTS = 1000

# Standalone tower fixture: a, b, c, d, m1, m2, m3, t1 and the two base attachments.
TOWER_ORDER = 10
TOWER_ATTACHMENTS = (8, 9)
DOUBLE_TOWER_ORDER = 17
DOUBLE_TOWER_FREE_VERTEX = 16

FIXTURE_FILES = {
    "k4": "fixtures/k4.el",
    "prism": "fixtures/prism.el",
    "tower": "fixtures/tower.el",
    "fig2_two_towers": "fixtures/fig2_two_towers.el",
    "fig3_three_towers": "fixtures/fig3_three_towers.el",
    "fig5_half_cubic": "fixtures/fig5_half_cubic.el",
}
COMPLETE_BIPARTITE = "complete_bipartite"


class NecklaceLayout(BaseModel):
    """Vertex ids (a_i, b_i, c_i, d_i) of every diamond of a necklace; a_i b_i is the missing edge."""
    model_config = ConfigDict(frozen=True)

    k: int
    diamonds: Tuple[Tuple[int, int, int, int], ...]


def read_text_file(file_path):
    # Paths are relative to this feature package
    script_dir = os.path.dirname(os.path.abspath(__file__))
    absolute_file_path = os.path.join(script_dir, file_path)

    with open(absolute_file_path, 'r', encoding='utf-8') as file:
        return file.read()


def _diamond_edges(a: int, b: int, c: int, d: int) -> List[Tuple[int, int]]:
    return [(a, c), (a, d), (b, c), (b, d), (c, d)]


def _triangle_edges(x: int, y: int, z: int) -> List[Tuple[int, int]]:
    return [(x, y), (x, z), (y, z)]


def _tower_top(offset: int, base_vertex: int) -> List[Tuple[int, int]]:
    """Diamond at offset..offset+3 and its middle triangle offset+4..offset+6, hung from `base_vertex`."""
    a, b, c, d = offset, offset + 1, offset + 2, offset + 3
    m1, m2, m3 = offset + 4, offset + 5, offset + 6
    edges = _diamond_edges(a, b, c, d)
    edges += [(a, m1), (b, m2)]
    edges += _triangle_edges(m1, m2, m3)
    edges.append((m3, base_vertex))
    return edges


def tower_edges(offset: int) -> List[Tuple[int, int]]:
    t1, t2, t3 = offset + 7, offset + 8, offset + 9
    return _tower_top(offset, t1) + _triangle_edges(t1, t2, t3)


def double_tower_edges(offset: int) -> List[Tuple[int, int]]:
    """Two towers sharing the base triangle offset+14..offset+16; offset+16 is left with a free stub."""
    base = (offset + 14, offset + 15, offset + 16)
    return _tower_top(offset, base[0]) + _tower_top(offset + 7, base[1]) + _triangle_edges(*base)


def diamond_necklace(k: int) -> Tuple[Graph, NecklaceLayout]:
    if k < 2:
        logger.error(f"Necklace requested with k={k}")
        raise DomainError(f"a diamond-necklace needs at least 2 diamonds, got k={k}")

    diamonds = tuple((4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3) for i in range(k))
    edges = []
    for i, (a, b, c, d) in enumerate(diamonds):
        edges += _diamond_edges(a, b, c, d)
        edges.append((a, diamonds[(i + 1) % k][1]))

    return Graph.from_edges(4 * k, edges), NecklaceLayout(k=k, diamonds=diamonds)


def tightness_graph(k: int) -> Graph:
    """
    Two end double-towers joined by a path whose 2k internal vertices are
    replaced by towers. The order is 20k + 34.
    """
    if k < 1:
        logger.error(f"Tightness graph requested with k={k}")
        raise DomainError(f"the tightness family starts at k=1, got k={k}")

    path_towers = [DOUBLE_TOWER_ORDER + TOWER_ORDER * j for j in range(2 * k)]
    right = DOUBLE_TOWER_ORDER + TOWER_ORDER * 2 * k
    n = right + DOUBLE_TOWER_ORDER

    edges = double_tower_edges(0) + double_tower_edges(right)
    for offset in path_towers:
        edges += tower_edges(offset)

    t2, t3 = TOWER_ATTACHMENTS
    previous = DOUBLE_TOWER_FREE_VERTEX
    for offset in path_towers:
        edges.append((previous, offset + t2))
        previous = offset + t3
    edges.append((previous, right + DOUBLE_TOWER_FREE_VERTEX))

    return Graph.from_edges(n, edges)


def complete_bipartite(k: int) -> Graph:
    if k < 1:
        raise DomainError(f"K_{{k,k}} needs k >= 1, got k={k}")
    return Graph.from_edges(2 * k, [(u, k + v) for u in range(k) for v in range(k)])


def fixture(name: str, k: Optional[int] = None) -> Graph:
    if name == COMPLETE_BIPARTITE:
        return complete_bipartite(4 if k is None else k)
    if name not in FIXTURE_FILES:
        logger.error(f"Unknown fixture: {name}")
        raise DomainError(f"unknown fixture '{name}'; expected one of {sorted(FIXTURE_FILES) + [COMPLETE_BIPARTITE]}")
    return parse_edgelist(read_text_file(FIXTURE_FILES[name]))


def relabel(g: Graph, permutation: Sequence[int]) -> Graph:
    return g.relabel(permutation)


def random_permutation(n: int, rng: random.Random) -> List[int]:
    permutation = list(range(n))
    rng.shuffle(permutation)
    return permutation


def random_clawfree_cubic(t: int, d: int, seed: int) -> Graph:
    """
    Stub-matching generator over triangle and diamond units.

    Every triangle vertex and the two degree-2 vertices of every diamond carry
    one stub; a uniformly shuffled pairing of the stubs becomes the inter-unit
    edges. Pairings joining a unit to itself, and disconnected results, are
    rejected. The vertices of the accepted graph are shuffled with the same
    generator so unit membership is not readable from the ids.
    """
    if t < 0 or d < 0 or t + d == 0:
        raise GenerationError(f"need at least one unit, got t={t}, d={d}")
    if t % 2:
        raise GenerationError(f"an odd number of triangle units ({t}) leaves an unpaired stub")
    if t == 0 and d < 2:
        raise GenerationError("a single diamond cannot be closed into a cubic graph")

    n = 3 * t + 4 * d
    unit_edges: List[Tuple[int, int]] = []
    stubs: List[Tuple[int, int]] = []
    for i in range(t):
        x = 3 * i
        unit_edges += _triangle_edges(x, x + 1, x + 2)
        stubs += [(i, x), (i, x + 1), (i, x + 2)]
    for j in range(d):
        a = 3 * t + 4 * j
        unit_edges += _diamond_edges(a, a + 1, a + 2, a + 3)
        stubs += [(t + j, a), (t + j, a + 1)]

    rng = random.Random(seed)
    for attempt in range(1, MAX_GENERATION_ATTEMPTS + 1):
        rng.shuffle(stubs)
        pairs = list(zip(stubs[::2], stubs[1::2]))
        if any(first[0] == second[0] for first, second in pairs):
            continue
        graph = Graph.from_edges(n, unit_edges + [(first[1], second[1]) for first, second in pairs])
        if not nx.is_connected(graph.to_networkx()):
            continue
        logger.debug(f"Claw-free cubic graph with t={t}, d={d} accepted after {attempt} attempts")
        return graph.relabel(random_permutation(n, rng))

    logger.error(f"No connected stub pairing for t={t}, d={d} after {MAX_GENERATION_ATTEMPTS} attempts")
    raise GenerationError(
        f"no connected pairing found for t={t}, d={d}",
        attempts=MAX_GENERATION_ATTEMPTS,
    )


def truncate_multigraph(mg: Multigraph, towers: bool = False) -> Graph:
    """
    Replaces every degree-3 vertex by a triangle and, with `towers`, every
    degree-2 vertex by a tower hung from its two base attachments. Each edge
    of `mg` becomes one edge between the corresponding port vertices, so the
    unit-contraction graph of the result is `mg` itself.
    """
    ports: Dict[Tuple[int, int], int] = {}
    edges: List[Tuple[int, int]] = []
    offset = 0
    for v in range(mg.n):
        incident = mg.incident(v)
        if len(incident) == 3:
            edges += _triangle_edges(offset, offset + 1, offset + 2)
            for i, edge_id in enumerate(incident):
                ports[(v, edge_id)] = offset + i
            offset += 3
        elif len(incident) == 2 and towers:
            edges += tower_edges(offset)
            for attachment, edge_id in zip(TOWER_ATTACHMENTS, incident):
                ports[(v, edge_id)] = offset + attachment
            offset += TOWER_ORDER
        else:
            raise DomainError(f"vertex {v} has degree {len(incident)}; cannot truncate it")

    for edge_id, u, v in mg.edges:
        edges.append((ports[(u, edge_id)], ports[(v, edge_id)]))
    return Graph.from_edges(offset, edges)


def random_cubic_graph(n: int, seed: int) -> Graph:
    if n < 4 or n % 2:
        raise DomainError(f"a simple cubic graph needs an even order >= 4, got n={n}")
    return Graph.from_networkx(nx.random_regular_graph(3, n, seed=seed))


def random_cubic_multigraph(n: int, seed: int) -> Multigraph:
    """Loop-free 2-connected cubic multigraph from the configuration model, with rejection."""
    if n < 2 or n % 2:
        raise DomainError(f"a cubic multigraph needs an even order >= 2, got n={n}")

    rng = random.Random(seed)
    for attempt in range(1, MAX_GENERATION_ATTEMPTS + 1):
        model = nx.configuration_model([3] * n, seed=rng.randrange(2 ** 32))
        if nx.number_of_selfloops(model):
            continue
        pairs = sorted((min(u, v), max(u, v)) for u, v in model.edges())
        mg = Multigraph(n=n, edges=tuple((i, u, v) for i, (u, v) in enumerate(pairs)))
        if len(biconnected_decomposition(mg).blocks) != 1:
            continue
        logger.debug(f"Cubic multigraph on {n} vertices accepted after {attempt} attempts")
        return mg

    raise GenerationError(f"no 2-connected loop-free cubic multigraph on {n} vertices", attempts=MAX_GENERATION_ATTEMPTS)


def random_graph(n: int, p: float, seed: int) -> Graph:
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def _int_args(family: str, args: Sequence[str], count: int) -> List[int]:
    if len(args) != count:
        raise DomainError(f"family '{family}' takes {count} integer parameter(s), got {len(args)}")
    try:
        return [int(arg) for arg in args]
    except ValueError:
        raise DomainError(f"family '{family}' parameters must be integers, got {list(args)}")


def generate_family(family: str, args: Sequence[str], seed: int) -> Union[Graph, Multigraph]:
    """Shared entry point of the `gen` tool and subcommand."""
    if family == "necklace":
        return diamond_necklace(*_int_args(family, args, 1))[0]
    if family == "tightness":
        return tightness_graph(*_int_args(family, args, 1))
    if family == "fixture":
        if not args or len(args) > 2:
            raise DomainError("family 'fixture' takes a name and an optional k")
        k = _int_args(family, args[1:], 1)[0] if len(args) == 2 else None
        return fixture(args[0], k)
    if family == "clawfree":
        t, d = _int_args(family, args, 2)
        return random_clawfree_cubic(t, d, seed)
    if family == "cubic":
        return random_cubic_graph(*_int_args(family, args, 1), seed)
    if family == "multigraph":
        return random_cubic_multigraph(*_int_args(family, args, 1), seed)

    logger.error(f"Unknown family: {family}")
    raise DomainError(f"unknown family '{family}'")
