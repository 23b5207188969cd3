import json

import pytest
from hypothesis import given

from conftest import FIXTURE_NAMES, FIXTURES, graphs
from sft2d.graph import Direction, Graph2D, InputError, load_graph, swap_condition
from sft2d.matrices import bool_product


def test_fixtures_load_and_roundtrip():
    for name in FIXTURE_NAMES:
        g = load_graph(FIXTURES / f"{name}.json")
        assert Graph2D.from_dict(json.loads(json.dumps(g.to_dict()))) == g


@pytest.mark.parametrize(
    "data, message",
    [
        ([], "object"),
        ({"H": [], "V": []}, "symbols"),
        ({"symbols": [], "H": [], "V": []}, "empty"),
        ({"symbols": ["a", "a"], "H": [[1, 1], [1, 1]], "V": [[1, 1], [1, 1]]}, "distinct"),
        ({"symbols": ["a", "b"], "H": [[1, 1]], "V": [[1, 1], [1, 1]]}, "rows"),
        ({"symbols": ["a", "b"], "H": [[1, 1], [1]], "V": [[1, 1], [1, 1]]}, "square"),
        ({"symbols": ["a"], "H": [[2]], "V": [[1]]}, "0 or 1"),
        ({"symbols": ["a"], "H": [[True]], "V": [[1]]}, "integers"),
    ],
)
def test_malformed_graphs_rejected(data, message):
    with pytest.raises(InputError, match=message):
        Graph2D.from_dict(data)


def test_load_graph_reports_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(InputError, match="malformed JSON"):
        load_graph(p)
    with pytest.raises(InputError, match="cannot read"):
        load_graph(tmp_path / "missing.json")


def test_direction_parsing():
    assert Direction.parse("1,-1") == Direction(1, -1)
    assert Direction.parse(" -2 , 3 ") == Direction(-2, 3)
    assert str(Direction(3, 0)) == "3,0"
    for bad in ("0,0", "1", "a,b", "1;2"):
        with pytest.raises(InputError):
            Direction.parse(bad)


@given(graphs())
def test_swap_condition_matches_supports(g):
    v = swap_condition(g)
    same = bool_product(g.H, g.V) == bool_product(g.V, g.H)
    assert v.is_yes == same
    if v.is_no:
        i, j = v.certificate["pair"]
        assert bool_product(g.H, g.V)[i, j] != bool_product(g.V, g.H)[i, j]


def test_swap_condition_on_fixtures(fx):
    expected = {"ex1": False, "ex2": False, "ex3": False, "ex4": True, "ex5": True, "ex6": True, "ex7": False}
    for name, ok in expected.items():
        assert swap_condition(fx[name]).is_yes == ok, name
