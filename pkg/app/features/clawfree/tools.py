from collections import defaultdict
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Set, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict

from app.api.error_utilities import DomainError, StructureError
from app.features.families.tools import fixture
from app.services.graph import (
    Graph,
    Multigraph,
    TwoRegularCertificate,
    certify,
    connected_components,
    is_claw_free,
    is_cubic,
)
from app.services.logger import setup_logger

logger = setup_logger(__name__)

TRIANGLE, DIAMOND = "triangle", "diamond"
TERMINAL, SURGERY, IRREDUCIBLE = "terminal", "surgery", "irreducible"


class Unit(BaseModel):
    """A triangle (x, y, z) or a diamond (a, b, c, d) where ab is the missing edge, a < b and c < d."""
    model_config = ConfigDict(frozen=True)

    kind: str
    vertices: Tuple[int, ...]


class UnitPartition(BaseModel):
    model_config = ConfigDict(frozen=True)

    units: Tuple[Unit, ...]
    unit_of: Tuple[int, ...]
    # Vertices are unit indices; edge ids are positions in Graph.edges()
    adjacency: Multigraph

    def count(self, kind: str) -> int:
        return sum(1 for unit in self.units if unit.kind == kind)


class Tower(BaseModel):
    """
    A diamond, the triangle both its degree-2 vertices attach to, and the
    base triangle that triangle's third vertex m3 attaches to at t1. The two
    other base vertices are the attachments leading out of the tower.
    """
    model_config = ConfigDict(frozen=True)

    diamond_unit: int
    middle_unit: int
    base_unit: int
    diamond: Tuple[int, int, int, int]
    middle: Tuple[int, int, int]
    t1: int
    attachments: Tuple[int, int]

    @property
    def base(self) -> Tuple[int, int, int]:
        return (self.t1,) + self.attachments

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.diamond + self.middle + self.base))

    @property
    def five_cycle(self) -> Tuple[int, ...]:
        a, b, c, d = self.diamond
        m1, m2, _ = self.middle
        return (a, min(c, d), b, m2, m1)


def _check_partition_input(g: Graph):
    if not is_cubic(g):
        raise DomainError("triangle-diamond partition needs a cubic graph")
    claw = is_claw_free(g)
    if not claw:
        raise DomainError(f"graph is not claw-free: claw at {claw.center} with leaves {list(claw.leaves)}")
    if len(connected_components(g)) != 1:
        raise DomainError("triangle-diamond partition needs a connected graph")
    if g.n == 4:
        raise DomainError("K4 has no triangle-diamond partition")


def triangle_diamond_partition(g: Graph, strict: bool = True) -> UnitPartition:
    """
    Splits a connected cubic claw-free graph other than K4 into triangles and diamonds.

    An edge with two common neighbours is the middle edge cd of a diamond;
    every other vertex lies in exactly one triangle. With `strict=False` the
    input checks are skipped so partial structures such as a standalone tower
    can be partitioned too.
    """
    if strict:
        _check_partition_input(g)

    unit_of = [-1] * g.n
    found: List[Unit] = []

    def take(unit: Unit):
        for v in unit.vertices:
            unit_of[v] = len(found)
        found.append(unit)

    for c, d in g.edges():
        common = sorted(set(g.neighbors(c)) & set(g.neighbors(d)))
        if len(common) != 2 or unit_of[c] != -1:
            continue
        a, b = common
        if g.has_edge(a, b):
            raise DomainError(f"vertices {[a, b, c, d]} induce K4")
        take(Unit(kind=DIAMOND, vertices=(a, b, c, d)))

    for v in range(g.n):
        if unit_of[v] != -1:
            continue
        pair = next(
            ((x, y) for x, y in combinations(g.neighbors(v), 2)
             if g.has_edge(x, y) and unit_of[x] == -1 and unit_of[y] == -1),
            None,
        )
        if pair is None:
            raise DomainError(f"vertex {v} lies in no triangle or diamond")
        take(Unit(kind=TRIANGLE, vertices=tuple(sorted((v,) + pair))))

    order = sorted(range(len(found)), key=lambda i: min(found[i].vertices))
    position = {old: new for new, old in enumerate(order)}
    units = tuple(found[i] for i in order)
    unit_of = tuple(position[i] for i in unit_of)

    crossing = tuple(
        (edge_id, unit_of[u], unit_of[v])
        for edge_id, (u, v) in enumerate(g.edges())
        if unit_of[u] != unit_of[v]
    )
    return UnitPartition(units=units, unit_of=unit_of, adjacency=Multigraph(n=len(units), edges=crossing))


def outside_neighbor(g: Graph, p: UnitPartition, v: int) -> Optional[int]:
    return next((u for u in g.neighbors(v) if p.unit_of[u] != p.unit_of[v]), None)


def find_towers(g: Graph, p: UnitPartition) -> List[Tower]:
    towers = []
    for index, unit in enumerate(p.units):
        if unit.kind != DIAMOND:
            continue
        a, b, _, _ = unit.vertices
        m1, m2 = outside_neighbor(g, p, a), outside_neighbor(g, p, b)
        if m1 is None or m2 is None:
            continue
        middle = p.unit_of[m1]
        if p.unit_of[m2] != middle or p.units[middle].kind != TRIANGLE:
            continue
        m3 = next(x for x in p.units[middle].vertices if x not in (m1, m2))
        t1 = outside_neighbor(g, p, m3)
        if t1 is None:
            continue
        base = p.unit_of[t1]
        if p.units[base].kind != TRIANGLE:
            continue
        towers.append(Tower(
            diamond_unit=index,
            middle_unit=middle,
            base_unit=base,
            diamond=unit.vertices,
            middle=(m1, m2, m3),
            t1=t1,
            attachments=tuple(sorted(x for x in p.units[base].vertices if x != t1)),
        ))
    return towers


class Surgery(BaseModel):
    """
    A reduction deleting `deleted` and joining `added_edge`; `kept[i]` is the
    parent id of child vertex i.
    """
    model_config = ConfigDict(frozen=True)

    rule: str
    kept: Tuple[int, ...]
    deleted: Tuple[int, ...]
    added_edge: Tuple[int, int]

    def to_parent(self, child_vertices: Iterable[int]) -> Set[int]:
        return {self.kept[v] for v in child_vertices}

    def extend(self, child_vertices: Iterable[int]) -> Set[int]:
        raise NotImplementedError


class DiamondRemoval(Surgery):
    rule: str = "diamond"
    diamond: Tuple[int, int, int, int]

    def extend(self, child_vertices: Iterable[int]) -> Set[int]:
        s = self.to_parent(child_vertices)
        a, b, c, d = self.diamond
        v1, v2 = self.added_edge
        if v1 in s and v2 in s:
            return s | {a, b, c}
        if v1 not in s:
            return s | {a, c, d}
        return s | {b, c, d}


class TrianglePairRemoval(Surgery):
    rule: str = "triangle_pair"
    first: Tuple[int, int, int]
    second: Tuple[int, int, int]

    def extend(self, child_vertices: Iterable[int]) -> Set[int]:
        # first = (u1, w1, x1), second = (u2, w2, x2) with w1w2 and x1x2 edges
        s = self.to_parent(child_vertices)
        (u1, w1, x1), (u2, w2, x2) = self.first, self.second
        v1, v2 = self.added_edge
        if v1 in s and v2 in s:
            return s | {u1, w1, w2, u2}
        return s | {w1, w2, x2, x1}


class TowerPairRemoval(Surgery):
    rule: str = "tower_pair"
    five_cycles: Tuple[Tuple[int, ...], Tuple[int, ...]]
    base: Tuple[int, int, int]
    bridge: Tuple[int, int]

    def extend(self, child_vertices: Iterable[int]) -> Set[int]:
        s = self.to_parent(child_vertices)
        s2, s3 = self.added_edge
        both = s2 in s and s3 in s
        s |= set(self.five_cycles[0]) | set(self.five_cycles[1]) | set(self.base)
        if both:
            s |= set(self.bridge)
        return s


class ReductionOutcome(BaseModel):
    kind: str
    base_case: Optional[str] = None
    certificate: Optional[TwoRegularCertificate] = None
    child: Optional[Graph] = None
    surgery: Optional[Surgery] = None
    partition: Optional[UnitPartition] = None
    towers: Tuple[Tower, ...] = ()


def _terminal(g: Graph, name: str, vertices: Iterable[int]) -> ReductionOutcome:
    logger.debug(f"Terminal case {name} on n={g.n}")
    return ReductionOutcome(kind=TERMINAL, base_case=name, certificate=certify(g, vertices))


def _contract(g: Graph, deleted: Iterable[int], edge: Tuple[int, int]) -> Tuple[Graph, Tuple[int, ...]]:
    removed = set(deleted)
    kept = tuple(v for v in range(g.n) if v not in removed)
    index = {v: i for i, v in enumerate(kept)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    edges.append((index[edge[0]], index[edge[1]]))
    return Graph.from_edges(len(kept), edges), kept


def _surgery(g: Graph, record_type, deleted: Iterable[int], edge: Tuple[int, int], **fields) -> ReductionOutcome:
    deleted = tuple(sorted(set(deleted)))
    child, kept = _contract(g, deleted, edge)
    surgery = record_type(kept=kept, deleted=deleted, added_edge=edge, **fields)
    logger.debug(f"Surgery {surgery.rule}: n={g.n} -> {child.n}, new edge {edge}")
    return ReductionOutcome(kind=SURGERY, child=child, surgery=surgery)


def _necklace_set(g: Graph, p: UnitPartition) -> List[int]:
    """Walks the ring of diamonds, taking one end and the middle edge of each."""
    chosen = []
    index = 0
    x, y = p.units[0].vertices[:2]
    for _ in range(len(p.units)):
        unit = p.units[index]
        chosen += [x, unit.vertices[2], unit.vertices[3]]
        x = outside_neighbor(g, p, y)
        index = p.unit_of[x]
        a, b = p.units[index].vertices[:2]
        y = b if x == a else a
    return chosen


def _unit_links(p: UnitPartition) -> Dict[Tuple[int, int], List[int]]:
    links: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for edge_id, x, y in p.adjacency.edges:
        links[(min(x, y), max(x, y))].append(edge_id)
    return links


def _diamond_between_units(g: Graph, p: UnitPartition) -> Optional[ReductionOutcome]:
    for unit in p.units:
        if unit.kind != DIAMOND:
            continue
        a, b, _, _ = unit.vertices
        v1, v2 = outside_neighbor(g, p, a), outside_neighbor(g, p, b)
        if p.unit_of[v1] != p.unit_of[v2]:
            return _surgery(g, DiamondRemoval, unit.vertices, (v1, v2), diamond=unit.vertices)
    return None


def _cross_pairs(g: Graph, first: Unit, second: Unit) -> List[Tuple[int, int]]:
    members = set(second.vertices)
    return [(x, y) for x in first.vertices for y in g.neighbors(x) if y in members]


def _prism(g: Graph, p: UnitPartition, links) -> Optional[ReductionOutcome]:
    for (i, j), edge_ids in sorted(links.items()):
        if len(edge_ids) < 3:
            continue
        if g.n != 6:
            logger.error(f"Triangles {i} and {j} are joined by three edges in a graph of order {g.n}")
            raise StructureError(f"triangles joined by three edges must form the prism, got n={g.n}")
        (x1, x2), (y1, y2) = _cross_pairs(g, p.units[i], p.units[j])[:2]
        return _terminal(g, "prism", (x1, y1, y2, x2))
    return None


def _triangle_pair(g: Graph, p: UnitPartition, links) -> Optional[ReductionOutcome]:
    for (i, j), edge_ids in sorted(links.items()):
        first, second = p.units[i], p.units[j]
        if len(edge_ids) != 2 or first.kind != TRIANGLE or second.kind != TRIANGLE:
            continue
        pairs = sorted(_cross_pairs(g, first, second))
        crossing = {x for x, _ in pairs} | {y for _, y in pairs}
        u1 = next(x for x in first.vertices if x not in crossing)
        u2 = next(y for y in second.vertices if y not in crossing)
        v1, v2 = outside_neighbor(g, p, u1), outside_neighbor(g, p, u2)
        if p.unit_of[v1] == p.unit_of[v2]:
            continue
        (w1, w2), (x1, x2) = pairs
        return _surgery(
            g, TrianglePairRemoval, first.vertices + second.vertices, (v1, v2),
            first=(u1, w1, x1), second=(u2, w2, x2),
        )
    return None


def _matches_fixture(g: Graph, name: str) -> bool:
    return nx.is_isomorphic(g.to_networkx(), fixture(name).to_networkx())


def _tower_configurations(g: Graph, p: UnitPartition, towers: List[Tower]) -> Optional[ReductionOutcome]:
    for first, second in combinations(towers, 2):
        if first.base_unit != second.base_unit and set(first.vertices) & set(second.vertices):
            if not _matches_fixture(g, "fig2_two_towers"):
                raise StructureError("overlapping towers without a common base do not form the two-tower graph")
            return _terminal(g, "two_towers", first.five_cycle + second.five_cycle)

    by_base: Dict[int, List[Tower]] = defaultdict(list)
    for tower in towers:
        by_base[tower.base_unit].append(tower)

    for base_unit, group in sorted(by_base.items()):
        if len(group) >= 3:
            if not _matches_fixture(g, "fig3_three_towers"):
                raise StructureError("three towers on one base do not form the three-tower graph")
            chosen = [v for tower in group for v in tower.five_cycle] + list(p.units[base_unit].vertices)
            return _terminal(g, "three_towers", chosen)

    for base_unit, group in sorted(by_base.items()):
        if len(group) != 2:
            continue
        first, second = group
        base = p.units[base_unit].vertices
        v = next(x for x in base if x not in (first.t1, second.t1))
        r1 = outside_neighbor(g, p, v)
        star = p.unit_of[r1]
        if p.units[star].kind != TRIANGLE:
            raise StructureError(f"the neighbour {r1} of a shared base lies in a diamond")
        r2, r3 = sorted(x for x in p.units[star].vertices if x != r1)
        s2, s3 = outside_neighbor(g, p, r2), outside_neighbor(g, p, r3)
        if s2 == s3 or g.has_edge(s2, s3) or p.unit_of[s2] == p.unit_of[s3]:
            raise StructureError(f"vertices {s2} and {s3} beyond triangle {star} share a unit")
        deleted = first.vertices + second.vertices + p.units[star].vertices
        return _surgery(
            g, TowerPairRemoval, deleted, (s2, s3),
            five_cycles=(first.five_cycle, second.five_cycle), base=base, bridge=(r2, r3),
        )
    return None


def reduce_step(g: Graph) -> ReductionOutcome:
    """
    One step of the claw-free reduction on a connected cubic claw-free graph.

    The checks run in a fixed order: K4, diamond-necklace, a diamond touching
    two units, two triangles joined by three edges, two triangles joined by
    two edges with no common neighbour unit, and finally the tower
    configurations. A graph passing all of them is irreducible and comes back
    with its partition and towers.
    """
    if g.n == 4 and g.m == 6:
        return _terminal(g, "k4", (0, 1, 2))

    p = triangle_diamond_partition(g)
    if p.count(TRIANGLE) == 0:
        return _terminal(g, "necklace", _necklace_set(g, p))

    outcome = _diamond_between_units(g, p)
    if outcome is not None:
        return outcome

    links = _unit_links(p)
    outcome = _prism(g, p, links) or _triangle_pair(g, p, links)
    if outcome is not None:
        return outcome

    towers = find_towers(g, p)
    outcome = _tower_configurations(g, p, towers)
    if outcome is not None:
        return outcome

    return ReductionOutcome(kind=IRREDUCIBLE, partition=p, towers=tuple(towers))
