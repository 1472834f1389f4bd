from app.services.logger import setup_logger
from app.services.graph_io import parse_graph_input
from app.features.verify.tools import parse_vertex_list, verify_set
from app.api.error_utilities import DomainError, GraphParseError, ToolExecutorError

logger = setup_logger(__name__)

def executor(graph: str, vertices: str, format: str = "graph6", verbose=False):
    try:
        g = parse_graph_input(graph, format)
        payload = verify_set(g, parse_vertex_list(vertices))

        if verbose:
            logger.info(f"Verified a set of {payload.size} vertices: valid={payload.valid}")

        return payload.model_dump()

    except (DomainError, GraphParseError) as e:
        logger.error(f"Error in verify executor: {e}")
        raise ToolExecutorError(str(e))
