from pydantic import BaseModel
from typing import Optional, List, Any, Dict
from enum import Enum
from app.services.tool_registry import BaseTool


class User(BaseModel):
    id: str
    fullName: str
    email: str

class RequestType(str, Enum):
    tool = "tool"

class GenericRequest(BaseModel):
    user: User
    type: RequestType

class ToolRequest(GenericRequest):
    tool_data: BaseTool

class ToolResponse(BaseModel):
    data: Any

class GenPayload(BaseModel):
    format: str
    graph: str

class ExactPayload(BaseModel):
    size: int
    optimal: bool
    cycles: List[List[int]]
    nodes: int

class GreedyPayload(BaseModel):
    size: int
    # Both None when the maximum degree is at most 2
    bound_numerator: Optional[int] = None
    bound_denominator: Optional[int] = None
    cycles: List[List[int]]

class PieceSummary(BaseModel):
    """One processed piece of the unit-contraction graph and its accounting."""
    kind: str
    index: int
    nodes: int
    chosen: Optional[str] = None
    ledger_total: Optional[str] = None
    cases: Dict[int, str] = {}

class ClawFreePayload(BaseModel):
    size: int
    threshold: int
    cycles: List[List[int]]
    surgeries_applied: List[str]
    pieces: List[PieceSummary]

class ReducePayload(BaseModel):
    source_order: int
    target_order: int
    max_degree: int
    chosen_edges: Dict[int, List[int]]
    cycles: Dict[int, List[int]]
    # Target graph text; the command line prints it on its own line instead
    graph: Optional[str] = None

class VerifyPayload(BaseModel):
    valid: bool
    size: int
    cycles: List[List[int]] = []
    vertex: Optional[int] = None
    in_degree: Optional[int] = None

class RunReport(BaseModel):
    input: str
    operation: str
    payload: Any
    wall_ms: int
    seed: Optional[int] = None

class BenchRow(BaseModel):
    suite: str
    check: str
    passed: bool
    detail: str = ""

class BenchReport(BaseModel):
    seed: int
    rows: List[BenchRow]
    passed: bool
