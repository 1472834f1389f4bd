from fractions import Fraction
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict

from app.api.error_utilities import DomainError
from app.services.graph import Graph, TwoRegularCertificate, certify, max_degree, shortest_cycle
from app.services.logger import setup_logger

logger = setup_logger(__name__)


class GreedyTrace(BaseModel):
    """
    Record of one greedy run.

    `cycles` are the chosen cycles in order, `length` is the total number of
    cycle vertices and `removed_neighbors` counts the vertices deleted with a
    cycle without being on it. `residuals[i]` is the vertex set left after the
    i-th deletion.
    """
    model_config = ConfigDict(frozen=True)

    cycles: Tuple[Tuple[int, ...], ...] = ()
    removed_neighbors: int = 0
    length: int = 0
    max_degree: int = 0
    residuals: Tuple[Tuple[int, ...], ...] = ()

    def inequality_holds(self) -> bool:
        return self.removed_neighbors <= self.length * (self.max_degree - 2)


def greedy_two_regular(g: Graph) -> Tuple[TwoRegularCertificate, GreedyTrace]:
    """Deletes the closed neighbourhood of a shortest cycle of the residual graph until it is a forest."""
    alive = set(range(g.n))
    cycles: List[Tuple[int, ...]] = []
    residuals: List[Tuple[int, ...]] = []
    removed_neighbors = 0

    while True:
        cycle = shortest_cycle(g, alive)
        if cycle is None:
            break
        closed = g.closed_neighborhood(cycle) & alive
        removed_neighbors += len(closed) - len(cycle)
        alive -= closed
        cycles.append(tuple(cycle))
        residuals.append(tuple(sorted(alive)))
        logger.debug(f"Greedy picked a {len(cycle)}-cycle, {len(alive)} vertices left")

    chosen = [v for cycle in cycles for v in cycle]
    trace = GreedyTrace(
        cycles=tuple(cycles),
        removed_neighbors=removed_neighbors,
        length=len(chosen),
        max_degree=max_degree(g),
        residuals=tuple(residuals),
    )
    return certify(g, chosen), trace


def general_bound(n: int, m: int, max_deg: int) -> Fraction:
    if max_deg <= 2:
        raise DomainError(f"the bound needs maximum degree at least 3, got {max_deg}")
    return Fraction(m - n + 1, (max_deg - 2) * (max_deg - 1))


def regular_bound(n: int, k: int) -> Fraction:
    if k < 3:
        raise DomainError(f"the regular bound needs k >= 3, got k={k}")
    return Fraction(n, 2 * (k - 1)) + Fraction(1, (k - 2) * (k - 1))


def cubic_bound(n: int) -> Fraction:
    return general_bound(n, Fraction(3 * n, 2), 3)


def graph_bound(g: Graph) -> Fraction:
    return general_bound(g.n, g.m, max_degree(g))
