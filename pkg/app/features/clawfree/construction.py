from typing import List, Set, Tuple

from pydantic import BaseModel, ConfigDict

from app.api.error_utilities import DomainError, InvariantError
from app.features.clawfree.pieces import build_contraction, build_pieces, construct_from_pieces
from app.features.clawfree.tools import IRREDUCIBLE, SURGERY, reduce_step
from app.services.graph import Graph, TwoRegularCertificate, certify, connected_components, is_claw_free, is_cubic
from app.services.logger import setup_logger
from app.services.schemas import PieceSummary

logger = setup_logger(__name__)


def threshold(n: int) -> int:
    """Smallest size strictly above 13n/20."""
    return 13 * n // 20 + 1


class ClawFreeResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    certificate: TwoRegularCertificate
    threshold: int
    surgeries: Tuple[str, ...]
    base_cases: Tuple[str, ...]
    pieces: Tuple[PieceSummary, ...]


class _RunLog:
    def __init__(self):
        self.surgeries: List[str] = []
        self.base_cases: List[str] = []
        self.pieces: List[PieceSummary] = []


def _construct(g: Graph, log: _RunLog) -> Set[int]:
    chosen: Set[int] = set()
    for component in connected_components(g):
        sub, old_ids = g.induced_subgraph(component)
        chosen.update(old_ids[v] for v in _construct_connected(sub, log))
    return chosen


def _construct_connected(g: Graph, log: _RunLog) -> Set[int]:
    outcome = reduce_step(g)
    if outcome.kind == SURGERY:
        log.surgeries.append(outcome.surgery.rule)
        extended = outcome.surgery.extend(_construct(outcome.child, log))
        certify(g, extended)
        return extended
    if outcome.kind == IRREDUCIBLE:
        decomposition = build_pieces(build_contraction(g, outcome.partition, outcome.towers))
        chosen, summaries = construct_from_pieces(g, decomposition)
        log.pieces += summaries
        certify(g, chosen)
        return chosen
    log.base_cases.append(outcome.base_case)
    return set(outcome.certificate.vertices)


def construct_large_two_regular(g: Graph) -> ClawFreeResult:
    """
    Induced 2-regular set of a cubic claw-free graph with more than 13n/20
    vertices in every connected component.

    Reducible components are shrunk by a surgery, solved recursively and the
    result extended back; irreducible ones are built from their pieces.
    """
    if not is_cubic(g):
        logger.error(f"Claw-free construction called on a non-cubic graph (n={g.n})")
        raise DomainError("the claw-free construction needs a cubic graph")
    claw = is_claw_free(g)
    if not claw:
        logger.error(f"Claw at vertex {claw.center}")
        raise DomainError(f"graph is not claw-free: claw at {claw.center} with leaves {list(claw.leaves)}")

    log = _RunLog()
    chosen = _construct(g, log)
    certificate = certify(g, chosen)

    for component in connected_components(g):
        inside = sum(1 for v in component if v in chosen)
        if inside < threshold(len(component)):
            logger.error(f"Component of order {len(component)} got {inside} vertices, below {threshold(len(component))}")
            raise InvariantError(
                f"component of order {len(component)} got {inside} vertices, needs {threshold(len(component))}"
            )

    logger.info(f"Claw-free construction: n={g.n}, size={certificate.size}, surgeries={len(log.surgeries)}")
    return ClawFreeResult(
        certificate=certificate,
        threshold=sum(threshold(len(component)) for component in connected_components(g)),
        surgeries=tuple(log.surgeries),
        base_cases=tuple(log.base_cases),
        pieces=tuple(log.pieces),
    )
