from app.services.logger import setup_logger
from app.services.graph_io import parse_graph_input
from app.services.schemas import ClawFreePayload
from app.features.clawfree.construction import ClawFreeResult, construct_large_two_regular
from app.api.error_utilities import DomainError, GraphParseError, ToolExecutorError

logger = setup_logger(__name__)

def clawfree_payload(result: ClawFreeResult) -> ClawFreePayload:
    return ClawFreePayload(
        size=result.certificate.size,
        threshold=result.threshold,
        cycles=[list(c) for c in result.certificate.cycles],
        surgeries_applied=list(result.surgeries),
        pieces=list(result.pieces),
    )

def executor(graph: str, format: str = "graph6", verbose=False):
    try:
        g = parse_graph_input(graph, format)
        result = construct_large_two_regular(g)

        if verbose:
            logger.info(f"Claw-free construction on n={g.n}: size {result.certificate.size}, threshold {result.threshold}")

        return clawfree_payload(result).model_dump()

    except (DomainError, GraphParseError) as e:
        logger.error(f"Error in clawfree executor: {e}")
        raise ToolExecutorError(str(e))
