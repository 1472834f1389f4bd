from collections import deque
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator

from app.api.error_utilities import DomainError, InvariantError
from app.services.logger import setup_logger

logger = setup_logger(__name__)

class Graph(BaseModel):
    """Simple undirected graph on the vertex ids 0..n-1 with sorted adjacency lists."""
    model_config = ConfigDict(frozen=True)

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]

    _neighbor_sets: Tuple[FrozenSet[int], ...] = PrivateAttr(default=())

    @model_validator(mode="after")
    def _check_adjacency(self):
        if self.n < 0 or len(self.adjacency) != self.n:
            raise ValueError(f"adjacency has {len(self.adjacency)} rows for n={self.n}")
        sets = tuple(frozenset(row) for row in self.adjacency)
        for v, row in enumerate(self.adjacency):
            if list(row) != sorted(sets[v]):
                raise ValueError(f"adjacency of {v} is not strictly increasing")
            for u in row:
                if u == v:
                    raise ValueError(f"loop at vertex {v}")
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} is out of range")
                if v not in sets[u]:
                    raise ValueError(f"adjacency is not symmetric on {{{u}, {v}}}")
        return self

    def model_post_init(self, __context) -> None:
        self._neighbor_sets = tuple(frozenset(row) for row in self.adjacency)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows: List[Set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge {{{u}, {v}}} leaves the vertex range 0..{n - 1}")
            if v in rows[u]:
                raise DomainError(f"duplicate edge {{{u}, {v}}}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n=n, adjacency=tuple(tuple(sorted(row)) for row in rows))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        order = sorted(graph.nodes())
        index = {v: i for i, v in enumerate(order)}
        return cls.from_edges(len(order), ((index[u], index[v]) for u, v in graph.edges() if u != v))

    @property
    def m(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def closed_neighborhood(self, vertices: Iterable[int]) -> Set[int]:
        closed: Set[int] = set()
        for v in vertices:
            closed.add(v)
            closed.update(self.adjacency[v])
        return closed

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", List[int]]:
        """Returns the subgraph induced by `vertices`, relabelled to 0..k-1, and the new-to-old id list."""
        old_ids = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old_ids)}
        rows = tuple(
            tuple(sorted(index[u] for u in self.adjacency[v] if u in index))
            for v in old_ids
        )
        return Graph(n=len(old_ids), adjacency=rows), old_ids

    def relabel(self, permutation: Sequence[int]) -> "Graph":
        """Vertex v of this graph becomes vertex permutation[v]."""
        if sorted(permutation) != list(range(self.n)):
            raise DomainError("relabelling must be a permutation of the vertex ids")
        return Graph.from_edges(self.n, ((permutation[u], permutation[v]) for u, v in self.edges()))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def to_multigraph(self) -> "Multigraph":
        return Multigraph(n=self.n, edges=tuple((i, u, v) for i, (u, v) in enumerate(self.edges())))


class Multigraph(BaseModel):
    """Undirected loop-free multigraph; parallel edges are told apart by their edge ids."""
    model_config = ConfigDict(frozen=True)

    n: int
    edges: Tuple[Tuple[int, int, int], ...]

    _ends: Dict[int, Tuple[int, int]] = PrivateAttr(default_factory=dict)
    _incidence: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())

    @model_validator(mode="after")
    def _check_edges(self):
        seen = set()
        for edge_id, u, v in self.edges:
            if u == v:
                raise ValueError(f"edge {edge_id} is a loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {edge_id} leaves the vertex range")
            if edge_id in seen:
                raise ValueError(f"edge id {edge_id} is used twice")
            seen.add(edge_id)
        return self

    def model_post_init(self, __context) -> None:
        incidence: List[List[int]] = [[] for _ in range(self.n)]
        for edge_id, u, v in self.edges:
            self._ends[edge_id] = (u, v)
            incidence[u].append(edge_id)
            incidence[v].append(edge_id)
        self._incidence = tuple(tuple(sorted(ids)) for ids in incidence)

    def edge_ids(self) -> List[int]:
        return sorted(self._ends)

    def has_edge_id(self, edge_id: int) -> bool:
        return edge_id in self._ends

    def endpoints(self, edge_id: int) -> Tuple[int, int]:
        if edge_id not in self._ends:
            raise DomainError(f"unknown edge id {edge_id}")
        return self._ends[edge_id]

    def other_end(self, edge_id: int, v: int) -> int:
        u, w = self.endpoints(edge_id)
        return w if u == v else u

    def incident(self, v: int) -> Tuple[int, ...]:
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def parallel_to(self, edge_id: int) -> List[int]:
        u, v = self.endpoints(edge_id)
        pair = {u, v}
        return [e for e in self._incidence[u] if e != edge_id and set(self._ends[e]) == pair]

    def without_vertices(self, vertices: Iterable[int]) -> "Multigraph":
        removed = set(vertices)
        return Multigraph(
            n=self.n,
            edges=tuple(e for e in self.edges if e[1] not in removed and e[2] not in removed),
        )

    def collapse(self) -> Graph:
        """Explicit conversion to a simple graph; parallel edges merge."""
        pairs = {(min(u, v), max(u, v)) for _, u, v in self.edges}
        return Graph.from_edges(self.n, sorted(pairs))


class TwoRegularCertificate(BaseModel):
    """A vertex set S together with its decomposition into induced cycles of the host graph."""
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...]
    cycles: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.vertices)


class InducedCheckFailure(BaseModel):
    """A vertex whose number of neighbours inside the tested set is not two."""
    model_config = ConfigDict(frozen=True)

    vertex: int
    in_degree: int

    def __bool__(self) -> bool:
        return False


class ClawCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    claw_free: bool
    center: Optional[int] = None
    leaves: Tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.claw_free


class BlockDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    blocks: Tuple[Tuple[int, ...], ...]
    cut_vertices: Tuple[int, ...]
    bridges: Tuple[int, ...]


def empty_certificate() -> TwoRegularCertificate:
    return TwoRegularCertificate(vertices=(), cycles=())


def is_two_regular_induced(g: Graph, s: Iterable[int]):
    """
    Checks whether every vertex of `s` has exactly two neighbours inside `s`.

    Returns a TwoRegularCertificate whose cycles partition `s` on success, or
    an InducedCheckFailure naming the smallest offending vertex.
    """
    members = set(s)
    for v in members:
        if not 0 <= v < g.n:
            raise DomainError(f"vertex {v} is not a vertex of the graph")

    for v in sorted(members):
        in_degree = sum(1 for u in g.adjacency[v] if u in members)
        if in_degree != 2:
            return InducedCheckFailure(vertex=v, in_degree=in_degree)

    cycles = []
    visited: Set[int] = set()
    for start in sorted(members):
        if start in visited:
            continue
        cycle = [start]
        visited.add(start)
        previous, current = start, min(u for u in g.adjacency[start] if u in members)
        while current != start:
            cycle.append(current)
            visited.add(current)
            following = next(u for u in g.adjacency[current] if u in members and u != previous)
            previous, current = current, following
        cycles.append(tuple(cycle))

    return TwoRegularCertificate(vertices=tuple(sorted(members)), cycles=tuple(cycles))


def certify(g: Graph, s: Iterable[int]) -> TwoRegularCertificate:
    """Like is_two_regular_induced but raises InvariantError instead of returning a failure."""
    result = is_two_regular_induced(g, s)
    if not result:
        logger.error(f"Set is not induced 2-regular at vertex {result.vertex} (in-degree {result.in_degree})")
        raise InvariantError(
            f"vertex {result.vertex} has {result.in_degree} neighbours inside the constructed set"
        )
    return result


def is_claw_free(g: Graph) -> ClawCheck:
    for center in range(g.n):
        for leaves in combinations(g.adjacency[center], 3):
            if not any(g.has_edge(x, y) for x, y in combinations(leaves, 2)):
                return ClawCheck(claw_free=False, center=center, leaves=leaves)
    return ClawCheck(claw_free=True)


def is_cubic(g: Graph) -> bool:
    return all(len(row) == 3 for row in g.adjacency)


def max_degree(g: Graph) -> int:
    return max((len(row) for row in g.adjacency), default=0)


def connected_components(g: Graph) -> List[Tuple[int, ...]]:
    components = [tuple(sorted(c)) for c in nx.connected_components(g.to_networkx())]
    return sorted(components, key=lambda c: c[0])


def biconnected_decomposition(g: Multigraph) -> BlockDecomposition:
    """
    Splits the edges of a multigraph into blocks.

    Parallel bundles are collapsed for the networkx block search and expanded
    afterwards, so a bundle of two or more parallel edges between the two
    ends of a simple bridge is a block of its own (a digon), never a bridge.
    """
    bundles: Dict[Tuple[int, int], List[int]] = {}
    for edge_id, u, v in g.edges:
        bundles.setdefault((min(u, v), max(u, v)), []).append(edge_id)

    simple = nx.Graph()
    simple.add_nodes_from(range(g.n))
    simple.add_edges_from(bundles)

    blocks = []
    bridges = []
    for component in nx.biconnected_component_edges(simple):
        ids = sorted(
            edge_id
            for u, v in component
            for edge_id in bundles[(min(u, v), max(u, v))]
        )
        if len(ids) == 1:
            bridges.append(ids[0])
        blocks.append(tuple(ids))

    blocks.sort(key=lambda block: block[0])
    cut_vertices = tuple(sorted(nx.articulation_points(simple)))
    return BlockDecomposition(blocks=tuple(blocks), cut_vertices=cut_vertices, bridges=tuple(sorted(bridges)))


def _girth(adjacency: Sequence[Sequence[int]], alive: Set[int]) -> Optional[int]:
    best: Optional[int] = None
    for s in sorted(alive):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in adjacency[u]:
                if w not in alive:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and parent[w] != u:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def _distances(adjacency: Sequence[Sequence[int]], allowed: Set[int], source: int) -> Dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if w in allowed and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _shortest_cycle(adjacency: Sequence[Sequence[int]], alive: Iterable[int]) -> Optional[List[int]]:
    """
    Lexicographically smallest shortest cycle of the subgraph induced by `alive`.

    The sequence starts at its smallest vertex and the direction is the one
    giving the smaller second vertex.
    """
    alive = set(alive)
    length = _girth(adjacency, alive)
    if length is None:
        return None

    for s in sorted(alive):
        allowed = {v for v in alive if v >= s}
        dist = _distances(adjacency, allowed, s)
        path = [s]
        on_path = {s}

        def extend(v: int) -> bool:
            if len(path) == length:
                return s in adjacency[v]
            for w in adjacency[v]:
                if w not in allowed or w in on_path:
                    continue
                if w not in dist or dist[w] > length - len(path):
                    continue
                path.append(w)
                on_path.add(w)
                if extend(w):
                    return True
                path.pop()
                on_path.discard(w)
            return False

        if extend(s):
            return path

    return None


def shortest_cycle(g: Graph, alive: Optional[Iterable[int]] = None) -> Optional[List[int]]:
    """Shortest cycle of g, or of the subgraph induced by `alive` when given."""
    return _shortest_cycle(g.adjacency, range(g.n) if alive is None else alive)


def girth(g: Graph) -> Optional[int]:
    return _girth(g.adjacency, set(range(g.n)))


def has_chord(g: Graph, cycle: Sequence[int]) -> bool:
    position = {v: i for i, v in enumerate(cycle)}
    size = len(cycle)
    for i, v in enumerate(cycle):
        for u in g.adjacency[v]:
            j = position.get(u)
            if j is not None and (i - j) % size not in (1, size - 1):
                return True
    return False
