from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from app.api.error_utilities import InvariantError
from app.features.clawfree.tools import Tower, UnitPartition
from app.features.matching.tools import (
    Matching,
    is_perfect,
    maximum_matching,
    perfect_matching_avoiding,
    perfect_matching_containing,
)
from app.services.graph import Graph, Multigraph, biconnected_decomposition
from app.services.logger import setup_logger
from app.services.schemas import PieceSummary

logger = setup_logger(__name__)

RED, YELLOW, UNCOLORED = "red", "yellow", "uncolored"
BRIDGE, CYCLE, NONTRIVIAL = "bridge", "cycle", "nontrivial"
BLOCK_PIECE, CACTUS_PIECE = "B", "C"

THRESHOLD_RATIO = Fraction(13, 20)
NODE_ORDER = {YELLOW: 3, RED: 10}

# Vertices a node contributes once covered by a lifted cycle
COVERED_COUNT = {YELLOW: 2, RED: 7}


class ContractionNode:
    def __init__(self, index: int, vertices: Sequence[int], tower: Optional[Tower] = None):
        self.index = index
        self.vertices = tuple(sorted(vertices))
        self.tower = tower
        self.color = RED if tower is not None else UNCOLORED

    @property
    def full_set(self) -> Tuple[int, ...]:
        """Vertices added when the node is picked on its own: the triangle, or the base of a tower."""
        return self.tower.base if self.tower is not None else self.vertices


class UnitContraction:
    """
    The multigraph obtained by contracting every tower and every triangle
    outside a tower to one node. Edge ids are positions in Graph.edges(), and
    every edge remembers the graph vertex it leaves each node from.
    """

    def __init__(self, g: Graph, partition: UnitPartition, towers: Sequence[Tower]):
        groups: List[Tuple[Tuple[int, ...], Optional[Tower]]] = []
        in_tower: Set[int] = set()
        for tower in towers:
            groups.append((tower.vertices, tower))
            in_tower.update((tower.diamond_unit, tower.middle_unit, tower.base_unit))
        for index, unit in enumerate(partition.units):
            if index in in_tower:
                continue
            if unit.kind != "triangle":
                raise InvariantError(f"diamond unit {index} lies in no tower of an irreducible graph")
            groups.append((unit.vertices, None))

        groups.sort(key=lambda group: min(group[0]))
        self.nodes = [ContractionNode(i, vertices, tower) for i, (vertices, tower) in enumerate(groups)]
        node_of = [0] * g.n
        for node in self.nodes:
            for v in node.vertices:
                node_of[v] = node.index

        edges = []
        self._ports: Dict[Tuple[int, int], int] = {}
        for edge_id, (u, v) in enumerate(g.edges()):
            x, y = node_of[u], node_of[v]
            if x == y:
                continue
            edges.append((edge_id, x, y))
            self._ports[(edge_id, x)] = u
            self._ports[(edge_id, y)] = v
        self.graph = Multigraph(n=len(self.nodes), edges=tuple(edges))

        self.decomposition = biconnected_decomposition(self.graph)
        self.block_of: Dict[int, int] = {}
        self.block_kinds: List[str] = []
        for index, block in enumerate(self.decomposition.blocks):
            for edge_id in block:
                self.block_of[edge_id] = index
            self.block_kinds.append(self._classify(block))

        bridges = set(self.decomposition.bridges)
        for node in self.nodes:
            if node.color == RED:
                continue
            if any(edge_id in bridges for edge_id in self.graph.incident(node.index)):
                node.color = YELLOW
            elif len({self.block_of[e] for e in self.graph.incident(node.index)}) != 1:
                raise InvariantError(f"uncolored node {node.index} spans several blocks")

    def _classify(self, block: Sequence[int]) -> str:
        if len(block) == 1:
            return BRIDGE
        degree: Dict[int, int] = {}
        for edge_id in block:
            for end in self.graph.endpoints(edge_id):
                degree[end] = degree.get(end, 0) + 1
        return CYCLE if all(d == 2 for d in degree.values()) else NONTRIVIAL

    def port(self, edge_id: int, node: int) -> int:
        return self._ports[(edge_id, node)]

    def color(self, node: int) -> str:
        return self.nodes[node].color

    def blocks_of_kind(self, kind: str) -> List[Tuple[int, ...]]:
        return [block for block, k in zip(self.decomposition.blocks, self.block_kinds) if k == kind]


class ColoredEdge:
    """An edge of a block piece: a single contraction edge or a path through colored nodes."""

    def __init__(self, ends: Tuple[int, int], path: Sequence[int], inner: Sequence[int]):
        self.id = min(path)
        self.ends = ends
        self.path = tuple(path)
        self.inner = tuple(inner)

    def walk_from(self, node: int) -> Tuple[Tuple[int, ...], int]:
        if node == self.ends[0]:
            return self.path, self.ends[1]
        return tuple(reversed(self.path)), self.ends[0]


class BlockPiece:
    """The uncolored nodes of one non-trivial block with its colored paths as single edges."""

    def __init__(self, index: int, nodes: Sequence[int], edges: Sequence[ColoredEdge]):
        self.index = index
        self.nodes = tuple(nodes)
        self.edges = list(edges)
        self.by_id = {edge.id: edge for edge in self.edges}
        position = {node: i for i, node in enumerate(self.nodes)}
        self.graph = Multigraph(
            n=len(self.nodes),
            edges=tuple((edge.id, position[edge.ends[0]], position[edge.ends[1]]) for edge in self.edges),
        )

    def colored_nodes(self) -> Set[int]:
        return {node for edge in self.edges for node in edge.inner}


class CactusPiece:
    def __init__(self, index: int, nodes: Sequence[int]):
        self.index = index
        self.nodes = tuple(sorted(nodes))
        # (start node, contraction edge ids in walking order)
        self.cycles: List[Tuple[int, Tuple[int, ...]]] = []


class PieceDecomposition:
    def __init__(self, contraction: UnitContraction, blocks: List[BlockPiece], cacti: List[CactusPiece], tree: nx.Graph):
        self.contraction = contraction
        self.blocks = blocks
        self.cacti = cacti
        self.tree = tree
        self.root = (BLOCK_PIECE, 0) if blocks else (CACTUS_PIECE, 0)
        bfs = list(nx.bfs_edges(tree, self.root, sort_neighbors=sorted))
        self.order = [self.root] + [child for _, child in bfs]
        self.parent = {child: parent for parent, child in bfs}

    def children(self, piece: Tuple[str, int]) -> List[Tuple[str, int]]:
        return sorted(child for child, parent in self.parent.items() if parent == piece)


def build_contraction(g: Graph, partition: UnitPartition, towers: Sequence[Tower]) -> UnitContraction:
    return UnitContraction(g, partition, towers)


def _block_piece(h: UnitContraction, index: int, block: Sequence[int]) -> BlockPiece:
    block_ids = set(block)
    nodes = sorted({
        end for edge_id in block for end in h.graph.endpoints(edge_id) if h.color(end) == UNCOLORED
    })
    edges: List[ColoredEdge] = []
    seen: Set[frozenset] = set()
    for start in nodes:
        for first in h.graph.incident(start):
            path, inner = [first], []
            current = h.graph.other_end(first, start)
            while h.color(current) != UNCOLORED:
                inner.append(current)
                onward = [e for e in h.graph.incident(current) if e in block_ids and e != path[-1]]
                if len(onward) != 1:
                    raise InvariantError(f"colored node {current} is not a path node of block {index}")
                path.append(onward[0])
                current = h.graph.other_end(onward[0], current)
            key = frozenset(path)
            if key in seen:
                continue
            if current == start:
                raise InvariantError(f"colored path from node {start} closes a loop in block {index}")
            seen.add(key)
            edges.append(ColoredEdge((start, current), path, inner))

    piece = BlockPiece(index, nodes, edges)
    if any(piece.graph.degree(v) != 3 for v in range(piece.graph.n)):
        raise InvariantError(f"block piece {index} is not cubic")
    return piece


def _ordered_cycle(h: UnitContraction, block: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    block_ids = set(block)
    start = min(end for edge_id in block for end in h.graph.endpoints(edge_id))
    walk: List[int] = []
    current = start
    while len(walk) < len(block):
        edge_id = min(e for e in h.graph.incident(current) if e in block_ids and e not in walk)
        walk.append(edge_id)
        current = h.graph.other_end(edge_id, current)
    return start, tuple(walk)


def build_pieces(h: UnitContraction) -> PieceDecomposition:
    """
    Splits the contraction graph into block pieces and cactus pieces and
    links them into a tree; the root is the first block piece, or the single
    cactus when every block is a bridge or a cycle.
    """
    blocks = [_block_piece(h, i, block) for i, block in enumerate(h.blocks_of_kind(NONTRIVIAL))]

    colored = nx.Graph()
    colored.add_nodes_from(node.index for node in h.nodes if node.color != UNCOLORED)
    colored.add_edges_from(
        (x, y) for _, x, y in h.graph.edges if h.color(x) != UNCOLORED and h.color(y) != UNCOLORED
    )
    components = sorted((sorted(c) for c in nx.connected_components(colored)), key=lambda c: c[0])
    cacti = [CactusPiece(j, component) for j, component in enumerate(components)]
    cactus_of = {node: cactus.index for cactus in cacti for node in cactus.nodes}

    for block in h.blocks_of_kind(CYCLE):
        start, walk = _ordered_cycle(h, block)
        cacti[cactus_of[start]].cycles.append((start, walk))

    covered = [node for piece in blocks for node in piece.nodes] + list(cactus_of)
    if sorted(covered) != list(range(len(h.nodes))):
        raise InvariantError("pieces do not partition the contraction graph")

    tree = nx.Graph()
    tree.add_nodes_from((BLOCK_PIECE, piece.index) for piece in blocks)
    tree.add_nodes_from((CACTUS_PIECE, cactus.index) for cactus in cacti)
    for piece in blocks:
        for node in piece.colored_nodes():
            tree.add_edge((BLOCK_PIECE, piece.index), (CACTUS_PIECE, cactus_of[node]))
    if tree.number_of_nodes() == 0 or not nx.is_tree(tree):
        raise InvariantError("block and cactus pieces do not form a tree")

    logger.debug(f"Contraction graph on {len(h.nodes)} nodes: {len(blocks)} block pieces, {len(cacti)} cactus pieces")
    return PieceDecomposition(h, blocks, cacti, tree)


def lift_cycle(h: UnitContraction, start: int, walk: Sequence[int]) -> List[int]:
    """Graph cycle through the port vertices a closed walk of the contraction graph enters and leaves by."""
    nodes = [start]
    for edge_id in walk[:-1]:
        nodes.append(h.graph.other_end(edge_id, nodes[-1]))
    if h.graph.other_end(walk[-1], nodes[-1]) != start:
        raise InvariantError(f"walk from node {start} does not close")

    cycle = []
    for i, node in enumerate(nodes):
        cycle += [h.port(walk[i - 1], node), h.port(walk[i], node)]
    return cycle


def _two_factor_walks(piece: BlockPiece, matching: Matching) -> List[Tuple[int, Tuple[int, ...]]]:
    remaining = [edge for edge in piece.edges if edge.id not in matching]
    at: Dict[int, List[ColoredEdge]] = {node: [] for node in piece.nodes}
    for edge in sorted(remaining, key=lambda e: e.id):
        at[edge.ends[0]].append(edge)
        at[edge.ends[1]].append(edge)

    used: Set[int] = set()
    walks = []
    for start in piece.nodes:
        current = start
        walk: List[int] = []
        while True:
            edge = next((e for e in at[current] if e.id not in used), None)
            if edge is None:
                break
            used.add(edge.id)
            path, current = edge.walk_from(current)
            walk += path
            if current == start:
                break
        if walk:
            walks.append((start, tuple(walk)))
    return walks


def contribution(color: str, label: str, picked: bool) -> int:
    """Vertices of one contraction node's unit that end up in the set."""
    if label.endswith("covered") or label.startswith("5") or label in ("6a", "6b"):
        return COVERED_COUNT[color]
    if label == "6c":
        return 3 if picked else 2
    if color == YELLOW:
        return 3 if picked else 0
    return 8 if picked else 5


def ledger_value(color: str, label: str, picked: bool) -> Fraction:
    return contribution(color, label, picked) - THRESHOLD_RATIO * NODE_ORDER[color]


class _PieceBuilder:
    def __init__(self, g: Graph, decomposition: PieceDecomposition):
        self.g = g
        self.d = decomposition
        self.h = decomposition.contraction
        self.chosen: Set[int] = set()
        self.matchings: Dict[int, Matching] = {}
        # block piece -> (edge id, must contain)
        self.constraints: Dict[int, Tuple[int, bool]] = {}
        self.summaries: List[PieceSummary] = []

    def run(self) -> Set[int]:
        for kind, index in self.d.order:
            if kind == BLOCK_PIECE:
                self._block(index)
            else:
                self._cactus(index)
        return self.chosen

    def _block(self, index: int):
        piece = self.d.blocks[index]
        constraint = self.constraints.get(index)
        if constraint is None:
            matching = maximum_matching(piece.graph)
            if not is_perfect(piece.graph, matching.edge_ids):
                matching = None
            note = None
        else:
            edge_id, contain = constraint
            find = perfect_matching_containing if contain else perfect_matching_avoiding
            matching = find(piece.graph, edge_id)
            note = f"{'contain' if contain else 'avoid'} {edge_id}"
        if matching is None:
            logger.error(f"Block piece {index} has no suitable perfect matching ({note})")
            raise InvariantError(f"block piece {index} has no perfect matching honoring {note}")

        self.matchings[index] = matching
        for start, walk in _two_factor_walks(piece, matching):
            self.chosen.update(lift_cycle(self.h, start, walk))
        self.summaries.append(PieceSummary(kind=BLOCK_PIECE, index=index, nodes=len(piece.nodes), chosen=note))

    def _path_into(self, block_index: int, members: Set[int]) -> ColoredEdge:
        return next(edge for edge in self.d.blocks[block_index].edges if set(edge.inner) & members)

    def _cactus(self, index: int):
        cactus = self.d.cacti[index]
        members = set(cactus.nodes)
        for node in cactus.nodes:
            if self.h.nodes[node].tower is not None:
                self.chosen.update(self.h.nodes[node].tower.five_cycle)

        labels: Dict[int, str] = {}
        for start, walk in cactus.cycles:
            self.chosen.update(lift_cycle(self.h, start, walk))
            current = start
            on_cycle = []
            for edge_id in walk:
                on_cycle.append(current)
                current = self.h.graph.other_end(edge_id, current)
            yellow = sum(1 for node in on_cycle if self.h.color(node) == YELLOW)
            label = "5a" if yellow == 1 else "5b" if yellow > 1 else "5"
            for node in on_cycle:
                labels[node] = label

        parent = self.d.parent.get((CACTUS_PIECE, index))
        if parent is not None:
            path = self._path_into(parent[1], members)
            covered = path.id not in self.matchings[parent[1]]
            for node in path.inner:
                case = "1" if self.h.color(node) == YELLOW else "2"
                labels[node] = f"{case} covered" if covered else case

        deferred: List[Tuple[int, ColoredEdge, int]] = []
        for _, child in self.d.children((CACTUS_PIECE, index)):
            path = self._path_into(child, members)
            yellow = sum(1 for node in path.inner if self.h.color(node) == YELLOW)
            if yellow == 1 and len(path.inner) == 1:
                labels[path.inner[0]] = "6c"
                deferred.append((child, path, path.inner[0]))
                continue
            for node in path.inner:
                labels[node] = "6a" if yellow >= 2 else "6b"
            self.constraints[child] = (path.id, False)

        for node in cactus.nodes:
            labels.setdefault(node, "3" if self.h.color(node) == YELLOW else "4")

        forest = nx.Graph()
        free = [node for node in cactus.nodes if not labels[node].startswith("5")]
        forest.add_nodes_from(free)
        free_set = set(free)
        forest.add_edges_from((x, y) for _, x, y in self.h.graph.edges if x in free_set and y in free_set)
        side = nx.bipartite.color(forest)

        totals = [
            sum(
                (ledger_value(self.h.color(node), labels[node], side.get(node) == p) for node in cactus.nodes),
                Fraction(0),
            )
            for p in (0, 1)
        ]
        best = 0 if totals[0] >= totals[1] else 1
        if totals[best] < 0:
            logger.error(f"Cactus piece {index} has a negative ledger total {totals[best]}")
            raise InvariantError(f"cactus piece {index}: best ledger total {totals[best]} is negative")

        for node in free:
            label = labels[node]
            picked = side[node] == best
            if label in ("1", "2", "3", "4", "6c") and picked:
                self.chosen.update(self.h.nodes[node].full_set)
        for child, path, node in deferred:
            self.constraints[child] = (path.id, side[node] == best)

        self.summaries.append(PieceSummary(
            kind=CACTUS_PIECE,
            index=index,
            nodes=len(cactus.nodes),
            chosen=f"I{best + 1}",
            ledger_total=str(totals[best]),
            cases={node: labels[node] for node in cactus.nodes},
        ))


def construct_from_pieces(g: Graph, decomposition: PieceDecomposition) -> Tuple[Set[int], List[PieceSummary]]:
    """
    Builds an induced 2-regular set of an irreducible graph piece by piece:
    block pieces from perfect matchings, cactus pieces from their cycles, the
    towers' 5-cycles and the better of two independent classes.
    """
    builder = _PieceBuilder(g, decomposition)
    chosen = builder.run()
    return chosen, builder.summaries
