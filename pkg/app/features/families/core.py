from app.services.logger import setup_logger
from app.services.graph import Multigraph
from app.services.graph_io import emit_graph, emit_multigraph_edgelist, resolve_format
from app.services.schemas import GenPayload
from app.features.families.tools import generate_family
from app.utils.allowed_file_extensions import GraphFormat
from app.api.error_utilities import DomainError, GenerationError, ToolExecutorError

logger = setup_logger(__name__)

def split_params(params: str):
    return [p.strip() for p in str(params).split(",") if p.strip()]

def render_graph(graph, fmt: GraphFormat) -> str:
    if isinstance(graph, Multigraph):
        if fmt is not GraphFormat.EDGELIST:
            raise DomainError("multigraphs can only be written as edge lists")
        return emit_multigraph_edgelist(graph)
    return emit_graph(graph, fmt)

def executor(family: str, params: str, format: str = "graph6", seed: int = 7, verbose=False):
    try:
        fmt = resolve_format(format)
        graph = generate_family(family, split_params(params), int(seed))
        text = render_graph(graph, fmt)

        if verbose:
            logger.info(f"Generated {family}({params}) with n={graph.n} [{fmt.value}]")

        return GenPayload(format=fmt.value, graph=text).model_dump()

    except (DomainError, GenerationError) as e:
        logger.error(f"Error in gen executor: {e}")
        raise ToolExecutorError(str(e))
