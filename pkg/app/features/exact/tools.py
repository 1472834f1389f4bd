import os
import time
from itertools import combinations
from typing import List, Optional, Sequence, Set

from pydantic import BaseModel, ConfigDict, field_validator

from app.api.error_utilities import DomainError
from app.features.greedy.tools import greedy_two_regular
from app.services.graph import Graph, TwoRegularCertificate, certify, connected_components
from app.services.logger import setup_logger

logger = setup_logger(__name__)

ORACLE_LIMIT = 20

UNDECIDED, IN, OUT = 0, 1, 2


class SearchBudget(BaseModel):
    model_config = ConfigDict(frozen=True)

    node_limit: Optional[int] = None
    time_limit: Optional[float] = None

    @field_validator("node_limit", "time_limit")
    @classmethod
    def _positive(cls, value):
        if value is not None and value <= 0:
            raise ValueError("search limits must be positive when present")
        return value

    @classmethod
    def from_env(cls) -> "SearchBudget":
        node_limit = os.environ.get("CIND_EXACT_NODE_LIMIT")
        time_limit = os.environ.get("CIND_EXACT_TIME_LIMIT")
        return cls(
            node_limit=int(node_limit) if node_limit else None,
            time_limit=float(time_limit) if time_limit else None,
        )


class ExactResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    certificate: TwoRegularCertificate
    optimal: bool
    nodes_explored: int


class _BranchAndBound:
    """Depth-first search over in/out/undecided labellings of one connected graph."""

    def __init__(self, g: Graph, incumbent: Sequence[int], budget: SearchBudget, deadline: Optional[float], nodes: int):
        self.adjacency = g.adjacency
        self.n = g.n
        self.best: List[int] = sorted(incumbent)
        self.node_limit = budget.node_limit
        self.deadline = deadline
        self.nodes = nodes
        self.exhausted = False

    def _out_of_budget(self) -> bool:
        if self.node_limit is not None and self.nodes >= self.node_limit:
            return True
        return self.deadline is not None and time.monotonic() > self.deadline

    def _propagate(self, labels: List[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for v in range(self.n):
                if labels[v] == OUT:
                    continue
                inside = undecided = 0
                for u in self.adjacency[v]:
                    if labels[u] == IN:
                        inside += 1
                    elif labels[u] == UNDECIDED:
                        undecided += 1

                if labels[v] == IN:
                    if inside > 2 or inside + undecided < 2:
                        return False
                    if undecided and (inside == 2 or inside + undecided == 2):
                        forced = OUT if inside == 2 else IN
                        for u in self.adjacency[v]:
                            if labels[u] == UNDECIDED:
                                labels[u] = forced
                        changed = True
                elif inside >= 3 or inside + undecided < 2:
                    labels[v] = OUT
                    changed = True
        return True

    def search(self, labels: List[int]):
        if self.exhausted or self._out_of_budget():
            self.exhausted = True
            return
        self.nodes += 1

        if not self._propagate(labels):
            return

        chosen = [v for v in range(self.n) if labels[v] == IN]
        open_vertices = [v for v in range(self.n) if labels[v] == UNDECIDED]
        if len(chosen) + len(open_vertices) <= len(self.best):
            return
        if not open_vertices:
            self.best = chosen
            return

        branch = max(open_vertices, key=lambda v: (sum(1 for u in self.adjacency[v] if labels[u] == IN), -v))
        for label in (IN, OUT):
            child = list(labels)
            child[branch] = label
            self.search(child)


def max_induced_two_regular(g: Graph, budget: Optional[SearchBudget] = None) -> ExactResult:
    """
    Largest induced 2-regular vertex set of g.

    Components are searched one after the other with a shared budget; each
    search starts from the greedy set of its component. When the budget runs
    out the best set found so far is returned with optimal=False.
    """
    budget = budget or SearchBudget()
    deadline = time.monotonic() + budget.time_limit if budget.time_limit is not None else None

    vertices: Set[int] = set()
    nodes = 0
    optimal = True
    for component in connected_components(g):
        sub, old_ids = g.induced_subgraph(component)
        greedy_certificate, _ = greedy_two_regular(sub)
        solver = _BranchAndBound(sub, greedy_certificate.vertices, budget, deadline, nodes)
        solver.search([UNDECIDED] * sub.n)
        nodes = solver.nodes
        optimal = optimal and not solver.exhausted
        vertices.update(old_ids[v] for v in solver.best)

    if not optimal:
        logger.info(f"Search budget exhausted after {nodes} nodes; best size {len(vertices)}")
    logger.debug(f"Exact search explored {nodes} nodes, size {len(vertices)}")
    return ExactResult(certificate=certify(g, vertices), optimal=optimal, nodes_explored=nodes)


def _neighbor_masks(g: Graph) -> List[int]:
    return [sum(1 << u for u in g.adjacency[v]) for v in range(g.n)]


def _check_oracle_size(g: Graph):
    if g.n > ORACLE_LIMIT:
        logger.error(f"Brute force requested on n={g.n}")
        raise DomainError(f"brute force is limited to {ORACLE_LIMIT} vertices, got n={g.n}")


def brute_force_oracle(g: Graph) -> int:
    """Size of the largest subset whose every vertex has exactly two neighbours inside it; 0 if none."""
    _check_oracle_size(g)
    masks = _neighbor_masks(g)
    for size in range(g.n, 2, -1):
        for subset in combinations(range(g.n), size):
            s = sum(1 << v for v in subset)
            if all(bin(masks[v] & s).count("1") == 2 for v in subset):
                return size
    return 0


def independence_number(g: Graph) -> int:
    _check_oracle_size(g)
    masks = _neighbor_masks(g)
    for size in range(g.n, 0, -1):
        for subset in combinations(range(g.n), size):
            s = sum(1 << v for v in subset)
            if not any(masks[v] & s for v in subset):
                return size
    return 0
