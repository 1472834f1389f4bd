from itertools import combinations
from typing import Dict, Iterable, List, Optional, Set, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict

from app.api.error_utilities import DomainError
from app.services.graph import Multigraph
from app.services.logger import setup_logger

logger = setup_logger(__name__)

TUTTE_LIMIT = 20
ENUMERATION_LIMIT = 12


class Matching(BaseModel):
    """Pairwise vertex-disjoint edge ids of a multigraph, ascending."""
    model_config = ConfigDict(frozen=True)

    edge_ids: Tuple[int, ...] = ()

    def __contains__(self, edge_id: int) -> bool:
        return edge_id in self.edge_ids

    def __len__(self) -> int:
        return len(self.edge_ids)


def _matching(edge_ids: Iterable[int]) -> Matching:
    return Matching(edge_ids=tuple(sorted(edge_ids)))


def is_matching(g: Multigraph, edge_ids: Iterable[int]) -> bool:
    covered: Set[int] = set()
    for edge_id in edge_ids:
        if not g.has_edge_id(edge_id):
            return False
        u, v = g.endpoints(edge_id)
        if u in covered or v in covered:
            return False
        covered.update((u, v))
    return True


def is_perfect(g: Multigraph, edge_ids: Iterable[int]) -> bool:
    edge_ids = list(edge_ids)
    return is_matching(g, edge_ids) and 2 * len(edge_ids) == g.n


def maximum_matching(g: Multigraph) -> Matching:
    """
    Maximum-cardinality matching by blossom search on the collapsed simple graph.

    Each parallel bundle is represented by its smallest edge id, which is the
    id reported when the bundle is used.
    """
    representative: Dict[Tuple[int, int], int] = {}
    for edge_id, u, v in sorted(g.edges):
        representative.setdefault((min(u, v), max(u, v)), edge_id)

    simple = nx.Graph()
    simple.add_nodes_from(range(g.n))
    simple.add_edges_from(sorted(representative))
    pairs = nx.max_weight_matching(simple, maxcardinality=True)
    return _matching(representative[(min(u, v), max(u, v))] for u, v in pairs)


def perfect_matching_containing(g: Multigraph, edge_id: int) -> Optional[Matching]:
    u, v = g.endpoints(edge_id)
    rest = maximum_matching(g.without_vertices([u, v]))
    if 2 * (len(rest) + 1) != g.n:
        logger.debug(f"No perfect matching contains edge {edge_id}")
        return None
    return _matching(rest.edge_ids + (edge_id,))


def perfect_matching_avoiding(g: Multigraph, edge_id: int) -> Optional[Matching]:
    """Forces each other edge at an end of `edge_id` in turn, ascending by id."""
    u, v = g.endpoints(edge_id)
    for forced in sorted(set(g.incident(u)) | set(g.incident(v))):
        if forced == edge_id:
            continue
        matching = perfect_matching_containing(g, forced)
        if matching is not None and edge_id not in matching:
            return matching
    return None


def _odd_components(g: Multigraph, removed: Set[int]) -> int:
    neighbors: List[List[int]] = [[] for _ in range(g.n)]
    for _, u, v in g.edges:
        if u not in removed and v not in removed:
            neighbors[u].append(v)
            neighbors[v].append(u)

    seen = set(removed)
    odd = 0
    for start in range(g.n):
        if start in seen:
            continue
        seen.add(start)
        stack, size = [start], 0
        while stack:
            x = stack.pop()
            size += 1
            for y in neighbors[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        odd += size % 2
    return odd


def tutte_violator(g: Multigraph) -> Optional[Tuple[int, ...]]:
    """A set S with more odd components in g - S than |S|, smallest first; None when none exists."""
    if g.n > TUTTE_LIMIT:
        logger.error(f"Tutte search requested on n={g.n}")
        raise DomainError(f"the Tutte search is limited to {TUTTE_LIMIT} vertices, got n={g.n}")
    for size in range(g.n + 1):
        for subset in combinations(range(g.n), size):
            if _odd_components(g, set(subset)) > size:
                return subset
    return None


def all_perfect_matchings(g: Multigraph) -> List[Matching]:
    if g.n > ENUMERATION_LIMIT:
        raise DomainError(f"perfect matching enumeration is limited to {ENUMERATION_LIMIT} vertices, got n={g.n}")

    found: List[Matching] = []

    def extend(covered: Set[int], chosen: List[int]):
        free = next((v for v in range(g.n) if v not in covered), None)
        if free is None:
            found.append(_matching(chosen))
            return
        for edge_id in g.incident(free):
            other = g.other_end(edge_id, free)
            if other in covered:
                continue
            extend(covered | {free, other}, chosen + [edge_id])

    extend(set(), [])
    return sorted(found, key=lambda m: m.edge_ids)


class GadgetMap(BaseModel):
    """
    Links a multigraph and its diamond substitution.

    `edge` is the replaced parallel edge; `e1` joins the diamond to its first
    end, `e2` to its second end and `e3` is the diamond's middle edge.
    """
    model_config = ConfigDict(frozen=True)

    edge: int
    e1: int
    e2: int
    e3: int
    original_ids: Tuple[int, ...]

    def lift(self, matching: Matching) -> Matching:
        kept = [e for e in matching.edge_ids if e in self.original_ids]
        if self.e1 in matching:
            kept.append(self.edge)
        return _matching(kept)


def diamond_gadget_substitute(g: Multigraph, edge_id: int) -> Tuple[Multigraph, GadgetMap]:
    if not g.parallel_to(edge_id):
        logger.error(f"Edge {edge_id} has no parallel edge")
        raise DomainError(f"edge {edge_id} is not part of a parallel pair")

    u, v = g.endpoints(edge_id)
    a, b, c, d = g.n, g.n + 1, g.n + 2, g.n + 3
    first = max(g.edge_ids()) + 1
    e1, e2, e3 = first, first + 1, first + 6
    spliced = [
        (e1, a, u), (e2, b, v),
        (first + 2, a, c), (first + 3, a, d), (first + 4, b, c), (first + 5, b, d),
        (e3, c, d),
    ]
    edges = tuple(edge for edge in g.edges if edge[0] != edge_id) + tuple(spliced)
    mapping = GadgetMap(
        edge=edge_id, e1=e1, e2=e2, e3=e3,
        original_ids=tuple(e for e in g.edge_ids() if e != edge_id),
    )
    return Multigraph(n=g.n + 4, edges=edges), mapping
