from typing import List

from app.api.error_utilities import DomainError
from app.services.graph import Graph, is_two_regular_induced
from app.services.logger import setup_logger
from app.services.schemas import VerifyPayload

logger = setup_logger(__name__)


def parse_vertex_list(text: str) -> List[int]:
    """Reads a comma-separated vertex list; blanks around ids and an empty list are allowed."""
    fields = [field.strip() for field in text.split(",")]
    if fields == [""]:
        return []
    try:
        return [int(field) for field in fields]
    except ValueError:
        logger.error(f"Malformed vertex list: {text!r}")
        raise DomainError(f"vertex list must be comma-separated integers, got {text!r}")


def verify_set(g: Graph, vertices: List[int]) -> VerifyPayload:
    result = is_two_regular_induced(g, vertices)
    if not result:
        return VerifyPayload(valid=False, size=len(set(vertices)), vertex=result.vertex, in_degree=result.in_degree)
    return VerifyPayload(valid=True, size=result.size, cycles=[list(c) for c in result.cycles])
