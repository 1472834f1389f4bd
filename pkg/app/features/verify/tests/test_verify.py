import pytest
from app.features.verify.tools import parse_vertex_list, verify_set
from app.features.verify.core import executor
from app.features.families.tools import fixture
from app.services.graph_io import emit_edgelist, emit_graph6
from app.api.error_utilities import DomainError, ToolExecutorError

def test_parse_vertex_list():
    assert parse_vertex_list("0, 1,2") == [0, 1, 2]
    assert parse_vertex_list("") == []

def test_parse_vertex_list_rejects_garbage():
    with pytest.raises(DomainError):
        parse_vertex_list("0,one")

def test_valid_set():
    payload = verify_set(fixture("prism"), [0, 1, 4, 3])
    assert payload.valid
    assert payload.size == 4
    assert payload.cycles == [[0, 1, 4, 3]]

def test_invalid_set_names_the_vertex():
    payload = verify_set(fixture("prism"), [0, 1, 2, 3])
    assert not payload.valid
    assert payload.vertex == 0
    assert payload.in_degree == 3

def test_executor_with_edge_list():
    result = executor(graph=emit_edgelist(fixture("k4")), vertices="0,1,2", format="edgelist")
    assert result["valid"] is True
    assert result["size"] == 3

def test_executor_rejects_unknown_vertices():
    with pytest.raises(ToolExecutorError):
        executor(graph=emit_graph6(fixture("k4")), vertices="0,1,9", format="graph6")
