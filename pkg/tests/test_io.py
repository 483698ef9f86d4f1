import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convnormal.io import (
    DocumentError,
    PolytopeDocument,
    document_to_dict,
    parse_document,
    pretty,
    print_document,
)
from convnormal.paperlab import rectangle_07, simplex2

from conftest import DATA, polytopes, rationals


@pytest.mark.parametrize("path", sorted(DATA.glob("*.json")), ids=lambda p: p.name)
def test_corpus_round_trip(path):
    text = path.read_text()
    doc = parse_document(text, str(path))
    assert print_document(doc) == text
    assert parse_document(print_document(doc)) == doc
    doc.to_polytope()


def test_decimal_input_is_exact():
    doc = parse_document('{"dim": 2, "vertices": [["0","0"],[1,0],["0","0.7"],[1, 0.7]]}')
    assert doc.to_polytope() == rectangle_07()
    assert document_to_dict(doc)["vertices"][2] == ["0", "7/10"]


def test_inequality_only_document():
    doc = parse_document('{"dim": 2, "inequalities": [{"a": [-1, 0], "b": "0"}, {"a": [0, -1], "b": 0},'
                         ' {"a": [2, 2], "b": "2"}]}')
    assert doc.to_polytope() == simplex2()


def test_from_polytope():
    doc = PolytopeDocument.from_polytope(simplex2(), "t", inequalities=True)
    assert doc.to_polytope() == simplex2()
    assert json.loads(print_document(doc))["inequalities"][2] == {"a": [1, 1], "b": "1"}


def test_syntax_errors_report_line_and_column():
    with pytest.raises(DocumentError, match=r"x\.json:3:5:"):
        parse_document('{\n "dim": 2,\n    ]\n}', "x.json")


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("[1]", "JSON object"),
        ('{"dim": 0, "vertices": []}', "positive integer"),
        ('{"dim": 2}', "need 'vertices'"),
        ('{"dim": 2, "vertices": [["0"]]}', "vertices[0]"),
        ('{"dim": 2, "vertices": [["0", true]]}', "vertices[0][1]"),
        ('{"dim": 2, "vertices": [["0", "1/0"]]}', "vertices[0][1]"),
        ('{"dim": 2, "inequalities": [{"a": [1.5, 0], "b": "1"}]}', "integers"),
        ('{"dim": 2, "inequalities": [{"a": [1, 0]}]}', "keys 'a' and 'b'"),
        ('{"dim": 2, "vertices": [], "colour": "red"}', "unknown keys"),
    ],
)
def test_semantic_errors(text, fragment):
    with pytest.raises(DocumentError) as exc:
        parse_document(text)
    assert fragment in str(exc.value)


def test_inconsistent_descriptions_rejected():
    doc = parse_document('{"dim": 1, "vertices": [["0"], ["1"]], "inequalities": [{"a": [1], "b": "2"},'
                         ' {"a": [-1], "b": "0"}]}')
    with pytest.raises(DocumentError, match="different polytopes"):
        doc.to_polytope()


@given(polytopes(), st.booleans(), st.one_of(st.none(), st.text(max_size=8)))
def test_round_trip_property(P, ineq, name):
    doc = PolytopeDocument.from_polytope(P, name, inequalities=ineq)
    text = print_document(doc)
    again = parse_document(text)
    assert again == doc
    assert print_document(again) == text
    assert again.to_polytope() == P


@given(st.lists(rationals(-5, 5, 12), min_size=1, max_size=6))
def test_rationals_survive_serialization(xs):
    doc = PolytopeDocument(1, tuple((x,) for x in xs))
    assert [v[0] for v in parse_document(print_document(doc)).vertices] == xs


def test_pretty_rendering():
    text = pretty({"a": {"witness": ["1", "2/3"], "ok": False, "none": None}, "list": [{"x": 1}]})
    assert "witness: (1, 2/3)" in text and "ok: no" in text and "none: -" in text
