from app.services.logger import setup_logger
from app.services.graph import max_degree
from app.services.graph_io import parse_graph_input
from app.services.schemas import GreedyPayload
from app.features.greedy.tools import greedy_two_regular, graph_bound
from app.api.error_utilities import DomainError, GraphParseError, InvariantError, ToolExecutorError

logger = setup_logger(__name__)

def greedy_payload(g) -> GreedyPayload:
    certificate, trace = greedy_two_regular(g)
    payload = GreedyPayload(size=certificate.size, cycles=[list(c) for c in trace.cycles])

    if max_degree(g) >= 3:
        bound = graph_bound(g)
        if certificate.size < bound:
            logger.error(f"Greedy size {certificate.size} is below the bound {bound}")
            raise InvariantError(f"greedy size {certificate.size} is below the certified bound {bound}")
        payload.bound_numerator = bound.numerator
        payload.bound_denominator = bound.denominator

    return payload

def executor(graph: str, format: str = "graph6", verbose=False):
    try:
        g = parse_graph_input(graph, format)
        payload = greedy_payload(g)

        if verbose:
            logger.info(f"Greedy on n={g.n}, m={g.m}: size {payload.size}")

        return payload.model_dump()

    except (DomainError, GraphParseError) as e:
        logger.error(f"Error in greedy executor: {e}")
        raise ToolExecutorError(str(e))
