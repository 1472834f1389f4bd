from typing import Dict, Iterable, List, Tuple, Union

from pydantic import BaseModel, ConfigDict

from app.api.error_utilities import DomainError
from app.services.graph import Graph, TwoRegularCertificate, certify, is_cubic, max_degree
from app.services.logger import setup_logger

logger = setup_logger(__name__)


class ReductionMap(BaseModel):
    """
    Gadget graph of a cubic graph. Vertex v of the source keeps its id in the
    target; `subdivisions[v]` is the vertex v' on the chosen edge next to v and
    `cycles[v]` lists v, its path and v' in cycle order.
    """
    model_config = ConfigDict(frozen=True)

    source: Graph
    target: Graph
    chosen_edges: Tuple[Tuple[int, int], ...]
    subdivisions: Tuple[int, ...]
    double_subdivided: Tuple[int, ...]
    cycles: Tuple[Tuple[int, ...], ...]

    def vertex_of_cycle(self) -> Dict[int, int]:
        return {x: v for v, cycle in enumerate(self.cycles) for x in cycle}


class ExtractionFailure(BaseModel):
    """A certificate that is not a union of whole gadget cycles."""
    model_config = ConfigDict(frozen=True)

    vertex: int
    reason: str

    def __bool__(self) -> bool:
        return False


def path_order(n: int) -> int:
    return 3 * n - 2


def reduce_independent_set(g: Graph) -> ReductionMap:
    """
    Builds the maximum-degree-4 target graph. Every vertex v picks its
    incident edge with the smallest id, that edge is subdivided next to v by
    v', and a path of order 3n-2 joins v to v'. An edge picked by both ends
    is subdivided twice.
    """
    if not is_cubic(g):
        logger.error(f"Reduction called on a non-cubic graph (n={g.n})")
        raise DomainError("the independent set reduction needs a cubic graph")

    n = g.n
    edges = g.edges()
    edge_index = {edge: i for i, edge in enumerate(edges)}
    chosen = [
        min(edge_index[(min(v, u), max(v, u))] for u in g.neighbors(v))
        for v in range(n)
    ]
    choosers: Dict[int, List[int]] = {}
    for v, edge_id in enumerate(chosen):
        choosers.setdefault(edge_id, []).append(v)

    subdivisions = tuple(n + v for v in range(n))
    length = path_order(n)
    target_edges = []
    for edge_id, (u, w) in enumerate(edges):
        ends = choosers.get(edge_id)
        if ends is None:
            target_edges.append((u, w))
        elif len(ends) == 1:
            target_edges += [(u, subdivisions[ends[0]]), (subdivisions[ends[0]], w)]
        else:
            target_edges += [(u, subdivisions[u]), (subdivisions[u], subdivisions[w]), (subdivisions[w], w)]

    cycles = []
    for v in range(n):
        path = [2 * n + v * length + i for i in range(length)]
        target_edges += list(zip(path, path[1:]))
        target_edges += [(v, path[0]), (path[-1], subdivisions[v])]
        cycles.append(tuple([v] + path + [subdivisions[v]]))

    target = Graph.from_edges(3 * n * n, target_edges)
    double = tuple(sorted(v for ends in choosers.values() if len(ends) == 2 for v in ends))
    logger.debug(f"Reduction: n={n} -> {target.n}, max degree {max_degree(target)}, {len(double) // 2} doubly subdivided edges")
    return ReductionMap(
        source=g,
        target=target,
        chosen_edges=tuple(edges[edge_id] for edge_id in chosen),
        subdivisions=subdivisions,
        double_subdivided=double,
        cycles=tuple(cycles),
    )


def embed_independent_set(reduction: ReductionMap, independent: Iterable[int]) -> TwoRegularCertificate:
    members = sorted(set(independent))
    for v in members:
        if not 0 <= v < reduction.source.n:
            raise DomainError(f"vertex {v} is not a vertex of the source graph")
        for u in reduction.source.neighbors(v):
            if u > v and u in members:
                logger.error(f"Set is not independent: edge ({v}, {u})")
                raise DomainError(f"the set is not independent: it contains the edge ({v}, {u})")

    return certify(reduction.target, (x for v in members for x in reduction.cycles[v]))


def extract_independent_set(
    reduction: ReductionMap, certificate: TwoRegularCertificate
) -> Union[Tuple[int, ...], ExtractionFailure]:
    """Source vertices whose gadget cycles make up the certificate, or the first vertex breaking that form."""
    members = set(certificate.vertices)
    owner = reduction.vertex_of_cycle()
    picked = sorted({owner[x] for x in members})

    for v in picked:
        missing = [x for x in reduction.cycles[v] if x not in members]
        if missing:
            return ExtractionFailure(vertex=missing[0], reason=f"gadget cycle of vertex {v} is only partly used")

    return tuple(picked)
