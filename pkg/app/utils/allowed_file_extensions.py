from enum import Enum

class GraphFormat(Enum):
    GRAPH6 = 'graph6'
    EDGELIST = 'edgelist'

    @property
    def extension(self) -> str:
        return FILE_EXTENSIONS[self]

    @classmethod
    def from_name(cls, name: str) -> "GraphFormat":
        lowered = name.lower().lstrip('.')
        for fmt, extension in FILE_EXTENSIONS.items():
            if lowered in (fmt.value, extension):
                return fmt
        raise ValueError(f"Unsupported graph format: {name}")

FILE_EXTENSIONS = {
    GraphFormat.GRAPH6: 'g6',
    GraphFormat.EDGELIST: 'el',
}
