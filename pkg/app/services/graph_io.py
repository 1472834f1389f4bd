import os
from typing import List, Tuple

import networkx as nx

from app.api.error_utilities import DomainError, GraphParseError
from app.services.graph import Graph, Multigraph
from app.services.logger import setup_logger
from app.utils.allowed_file_extensions import GraphFormat

logger = setup_logger(__name__)

GRAPH6_HEADER = b">>graph6<<"
_LOW, _HIGH = 63, 126


def _check_printable(data: bytes, start: int, end: int):
    for offset in range(start, end):
        if not _LOW <= data[offset] <= _HIGH:
            raise GraphParseError(f"byte {data[offset]!r} is outside the graph6 range 63..126", offset=offset)


def _graph6_order(data: bytes, start: int) -> Tuple[int, int]:
    """Decodes N(n) at `start`; returns (n, offset of the first edge byte)."""
    if start >= len(data):
        raise GraphParseError("missing order byte", offset=start)
    if data[start] != _HIGH:
        _check_printable(data, start, start + 1)
        return data[start] - _LOW, start + 1

    width = 3
    begin = start + 1
    if begin < len(data) and data[begin] == _HIGH:
        width = 6
        begin += 1
    if begin + width > len(data):
        raise GraphParseError("truncated extended order field", offset=len(data))
    _check_printable(data, begin, begin + width)
    n = 0
    for byte in data[begin:begin + width]:
        n = (n << 6) | (byte - _LOW)
    return n, begin + width


def parse_graph6(text: str) -> Graph:
    data = text.encode("utf-8").rstrip(b"\r\n")
    start = len(GRAPH6_HEADER) if data.startswith(GRAPH6_HEADER) else 0
    n, body = _graph6_order(data, start)

    bit_count = n * (n - 1) // 2
    byte_count = (bit_count + 5) // 6
    end = body + byte_count
    if end > len(data):
        raise GraphParseError(f"expected {byte_count} edge bytes for n={n}", offset=len(data))
    _check_printable(data, body, end)
    if end < len(data):
        raise GraphParseError("trailing data after the edge bytes", offset=end)

    padding = byte_count * 6 - bit_count
    if padding and (data[end - 1] - _LOW) & ((1 << padding) - 1):
        raise GraphParseError("non-zero padding bits", offset=end - 1)

    graph = nx.from_graph6_bytes(data[start:end])
    return Graph.from_networkx(graph)


def emit_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").rstrip("\n")


def _edgelist_rows(text: str) -> List[Tuple[int, List[str]]]:
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            rows.append((number, stripped.split()))
    return rows


def _read_pair(number: int, fields: List[str], n: int) -> Tuple[int, int]:
    if len(fields) != 2:
        raise GraphParseError(f"expected two vertex ids, got {len(fields)} fields", line=number)
    try:
        u, v = int(fields[0]), int(fields[1])
    except ValueError:
        raise GraphParseError("vertex ids must be integers", line=number)
    if not (0 <= u < n and 0 <= v < n):
        raise GraphParseError(f"vertex id out of range 0..{n - 1}", line=number)
    if u == v:
        raise GraphParseError(f"loop at vertex {u}", line=number)
    return u, v


def _read_header(rows) -> Tuple[int, int]:
    if not rows:
        raise GraphParseError("missing 'n m' header", line=1)
    number, fields = rows[0]
    try:
        n, m = (int(x) for x in fields)
    except ValueError:
        raise GraphParseError("header must be two integers 'n m'", line=number)
    if n < 0 or m < 0:
        raise GraphParseError("header values must be non-negative", line=number)
    if len(rows) - 1 != m:
        raise GraphParseError(f"header announces {m} edges but {len(rows) - 1} follow", line=number)
    return n, m


def parse_edgelist(text: str) -> Graph:
    rows = _edgelist_rows(text)
    n, _ = _read_header(rows)
    seen = set()
    edges = []
    for number, fields in rows[1:]:
        u, v = _read_pair(number, fields, n)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {{{key[0]}, {key[1]}}}", line=number)
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def emit_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_multigraph_edgelist(text: str) -> Multigraph:
    """Edge-list reader for multigraphs: parallel lines are kept and numbered in file order."""
    rows = _edgelist_rows(text)
    n, _ = _read_header(rows)
    edges = tuple((i, *_read_pair(number, fields, n)) for i, (number, fields) in enumerate(rows[1:]))
    return Multigraph(n=n, edges=edges)


def emit_multigraph_edgelist(g: Multigraph) -> str:
    lines = [f"{g.n} {len(g.edges)}"]
    lines.extend(f"{u} {v}" for _, u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_graph(text: str, fmt: GraphFormat) -> Graph:
    if fmt is GraphFormat.GRAPH6:
        return parse_graph6(text)
    return parse_edgelist(text)


def emit_graph(g: Graph, fmt: GraphFormat) -> str:
    if fmt is GraphFormat.GRAPH6:
        return emit_graph6(g) + "\n"
    return emit_edgelist(g)


def format_for_path(path: str) -> GraphFormat:
    extension = os.path.splitext(path)[1]
    try:
        return GraphFormat.from_name(extension)
    except ValueError:
        raise DomainError(f"cannot infer graph format from '{path}'; use a .g6 or .el file")


def read_graph_file(path: str) -> Graph:
    fmt = format_for_path(path)
    logger.debug(f"Reading {fmt.value} graph from {path}")
    with open(path, "r", encoding="utf-8") as f:
        return parse_graph(f.read(), fmt)


def resolve_format(name: str) -> GraphFormat:
    try:
        return GraphFormat.from_name(name)
    except ValueError:
        logger.error(f"Unknown graph format: {name}")
        raise DomainError(f"unknown graph format '{name}'; use graph6 or edgelist")


def parse_graph_input(text: str, format_name: str) -> Graph:
    """Decodes the `graph` input of a tool request."""
    return parse_graph(text, resolve_format(format_name))
