import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus_algebra
from homolog.corpus import corpus, lookup
from homolog.errors import (BadMatrixShape, DuplicateName, FieldMismatch, InputError, NonComposablePath,
                            ParseError, ParseSyntaxError, UnknownArrow)
from homolog.io import document_from_algebra, emit_report, parse_document, serialize_document
from homolog.modules import standard_module
from homolog.syzygy import Beyond

A2_DOC = """\
field F 2
name a2
quiver
  vertex 1
  vertex 2
  arrow a 1 2
module P1
  dim 1=1 2=1
  map a [[1]]
"""


def test_valid_document():
    doc = parse_document(A2_DOC)
    assert doc.name == "a2"
    assert doc.vertices == ["1", "2"]
    assert len(doc.modules) == 1
    A = doc.algebra()
    assert A.dimension == 3
    M = doc.module("P1", A)
    assert M.dims == (1, 1)


def _error(text):
    with pytest.raises(ParseError) as info:
        parse_document(text)
    return info.value


def test_noncomposable_relation_position():
    err = _error(A2_DOC.replace("module P1", "relations\n  a.a\nmodule P1"))
    assert isinstance(err, NonComposablePath)
    assert (err.line, err.col) == (8, 5)


def test_bad_matrix_shape():
    err = _error(A2_DOC.replace("[[1]]", "[[1,0]]"))
    assert isinstance(err, BadMatrixShape)
    assert err.line == 9


@pytest.mark.parametrize("text, kind", [
    ("quiver\n  vertex 1\n", ParseSyntaxError),
    ("field F 4\nquiver\n  vertex 1\n", FieldMismatch),
    ("field F 2\nquiver\n  vertex 1\n  vertex 1\n", DuplicateName),
    (A2_DOC.replace("map a", "map b"), UnknownArrow),
    (A2_DOC + "module P1\n", DuplicateName),
    ("field F 2\nquiver\n  vertex 1\n  arrow a 1 3\n", ParseSyntaxError),
])
def test_error_kinds(text, kind):
    assert isinstance(_error(text), kind)


def test_comments_and_rationals():
    doc = parse_document("# header\nfield Q\nquiver  # the quiver\n  vertex 1\n  arrow x 1 1\n"
                         "relations\n  x.x.x\nmodule M\n  dim 1=1\n  map x [[0]]\n")
    assert doc.field_kind == "Q"
    assert doc.algebra().dimension == 3


@pytest.mark.parametrize("entry", [e.name for e in corpus()])
def test_corpus_round_trip(entry):
    d1 = lookup(entry).document()
    d2 = parse_document(serialize_document(d1))
    assert d1.structure() == d2.structure()


def test_algebra_to_document_round_trip():
    A = corpus_algebra("exterior-2")
    P = standard_module(A, "P", "1")
    doc = document_from_algebra(A, {"P": P})
    back = parse_document(serialize_document(doc))
    B = back.algebra()
    assert B.dimension == A.dimension
    Q = back.module("P", B)
    assert Q.dims == P.dims
    assert all((x == y).all() for x, y in zip(Q.mats, P.mats))


def test_rational_entries_serialize():
    text = A2_DOC.replace("field F 2", "field Q").replace("[[1]]", "[[-3/4]]")
    doc = parse_document(text)
    assert doc.modules[0].maps["a"] == [[Fraction(-3, 4)]]
    assert "-3/4" in serialize_document(doc)


TOKENS = ["field", "F", "Q", "2", "3", "4", "quiver", "vertex", "arrow", "relations", "module", "dim",
          "map", "a", "b", "1", "1=1", "2=2", "[[1]]", "[[1,0]]", "[", "]", "a.b", "+", "-", "*", "#", "\n",
          "  ", "meta", "name", "x.x", "1/0", "=", "max_length"]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from(TOKENS), max_size=40))
def test_fuzz_only_input_errors(tokens):
    text = "field F 2\n" + " ".join(tokens)
    try:
        doc = parse_document(text)
        doc.algebra()
        for m in doc.modules:
            doc.module(m.name)
    except InputError:
        pass


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=80))
def test_fuzz_arbitrary_text(text):
    try:
        parse_document(text)
    except InputError:
        pass


def test_emit_report_is_canonical():
    data = {"b": 1, "a": [Fraction(1, 2), Beyond(32)], "c": {"x": True}}
    text = emit_report(data)
    assert text == emit_report(data)
    assert text.endswith("\n")
    assert list(json.loads(text)) == ["b", "a", "c"]
    assert json.loads(text)["a"] == ["1/2", ">32"]


def test_emit_report_rejects_floats():
    with pytest.raises(TypeError):
        emit_report({"x": 0.5})
