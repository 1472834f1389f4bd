from app.services.logger import setup_logger
from app.services.graph_io import parse_graph_input
from app.services.schemas import ExactPayload
from app.features.exact.tools import ExactResult, SearchBudget, max_induced_two_regular
from app.api.error_utilities import DomainError, GraphParseError, ToolExecutorError

logger = setup_logger(__name__)

def build_budget(node_limit=0, time_limit=0) -> SearchBudget:
    # 0 means no limit; with neither limit given the environment decides
    if not node_limit and not time_limit:
        return SearchBudget.from_env()
    return SearchBudget(
        node_limit=int(node_limit) if node_limit else None,
        time_limit=float(time_limit) if time_limit else None,
    )

def exact_payload(result: ExactResult) -> ExactPayload:
    return ExactPayload(
        size=result.certificate.size,
        optimal=result.optimal,
        cycles=[list(c) for c in result.certificate.cycles],
        nodes=result.nodes_explored,
    )

def executor(graph: str, format: str = "graph6", node_limit=0, time_limit=0, verbose=False):
    try:
        g = parse_graph_input(graph, format)
        result = max_induced_two_regular(g, build_budget(node_limit, time_limit))

        if verbose:
            logger.info(f"Exact search on n={g.n}: size {result.certificate.size}, optimal={result.optimal}")

        return exact_payload(result).model_dump()

    except (DomainError, GraphParseError) as e:
        logger.error(f"Error in exact executor: {e}")
        raise ToolExecutorError(str(e))
