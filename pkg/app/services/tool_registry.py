from pydantic import BaseModel
from typing import List, Any

class ToolInput(BaseModel):
    # One named value per input declared in the tool's metadata.json
    name: str
    value: Any

# Base model for all tools
class BaseTool(BaseModel):
    tool_id: int  # Key into app/api/tools_config.json
    inputs: List[ToolInput]
