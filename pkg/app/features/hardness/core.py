from app.services.logger import setup_logger
from app.services.graph import max_degree
from app.services.graph_io import emit_graph, parse_graph_input, resolve_format
from app.services.schemas import ReducePayload
from app.features.hardness.tools import ReductionMap, reduce_independent_set
from app.api.error_utilities import DomainError, GraphParseError, ToolExecutorError

logger = setup_logger(__name__)

def reduce_payload(reduction: ReductionMap) -> ReducePayload:
    return ReducePayload(
        source_order=reduction.source.n,
        target_order=reduction.target.n,
        max_degree=max_degree(reduction.target),
        chosen_edges={v: list(edge) for v, edge in enumerate(reduction.chosen_edges)},
        cycles={v: list(cycle) for v, cycle in enumerate(reduction.cycles)},
    )

def executor(graph: str, format: str = "graph6", verbose=False):
    try:
        g = parse_graph_input(graph, format)
        reduction = reduce_independent_set(g)
        payload = reduce_payload(reduction)
        payload.graph = emit_graph(reduction.target, resolve_format(format))

        if verbose:
            logger.info(f"Reduction of n={g.n}: target order {payload.target_order}")

        return payload.model_dump()

    except (DomainError, GraphParseError) as e:
        logger.error(f"Error in hardness executor: {e}")
        raise ToolExecutorError(str(e))
