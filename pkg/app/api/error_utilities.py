from pydantic import BaseModel
from typing import Any, Optional

class GraphParseError(Exception):
    """Raised when a graph6 string or an edge list cannot be decoded."""
    def __init__(self, message: str, offset: Optional[int] = None, line: Optional[int] = None):
        self.offset = offset
        self.line = line
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        elif line is not None:
            message = f"{message} (line {line})"
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return f"{self.message}"

class DomainError(Exception):
    """Raised when an operation is called outside its declared domain."""
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)

class GenerationError(Exception):
    """Raised when a random generator cannot produce a graph within its retry bound."""
    def __init__(self, message: str, attempts: int = 0):
        self.message = message
        self.attempts = attempts
        super().__init__(self.message)

class StructureError(Exception):
    """Raised when a claw-free configuration meets a precondition but not its determined shape."""
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)

class InvariantError(Exception):
    """Raised when an internal certificate, ledger or threshold check fails."""
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)

class InputValidationError(Exception):
    """Raised when an input validation error occurs."""
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)

class ToolExecutorError(Exception):
    """Raised when a tool executor encounters an error."""
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)

class ErrorResponse(BaseModel):
    """Base model for error responses."""
    status: int
    message: Any

    model_config = {
        "arbitrary_types_allowed": True
    }
