import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from opemodel import generators as gen
from opemodel.categories import slice_from_cat
from opemodel.corpus import build_corpus
from opemodel.errors import ParseError, SemanticError
from opemodel.factorization import factor_cof_trivfib, factor_trivcof_fib
from opemodel.lifting import LiftingSquare
from opemodel.presented import bv_presentation
from opemodel.serialize import load_path, normalize, parse_document, serialize_document

DATA = Path(__file__).parent / "data"


def test_star_roundtrip():
    S = gen.star()
    assert parse_document(serialize_document(S)) == S


def test_walking_iso_golden():
    golden = (DATA / "walking_iso.golden.json").read_text()
    assert serialize_document(gen.walking_iso()) == golden
    assert normalize((DATA / "walking_iso.unordered.json").read_text()) == golden
    assert normalize(golden) == golden


def test_missing_identity_names_color():
    d = json.loads(serialize_document(gen.walking_iso()))
    del d["identities"]["b"]
    with pytest.raises(SemanticError) as e:
        parse_document(json.dumps(d))
    assert "'b'" in str(e.value) and e.value.witness == "b"


def test_partial_table_is_semantic_error():
    d = json.loads(serialize_document(gen.walking_iso()))
    d["composition"] = [c for c in d["composition"] if not (c["outer"] == "2/u_inv" and c["inners"] == ["1/u"])]
    with pytest.raises(SemanticError, match="totality"):
        parse_document(json.dumps(d))


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_document('{\n  "colors": [\n    "a",,\n  ]\n}')
    assert e.value.line == 3 and e.value.column == 9


def test_unknown_reference():
    d = json.loads(serialize_document(gen.walking_iso()))
    d["composition"][0]["result"] = "9/id"
    with pytest.raises(SemanticError):
        parse_document(json.dumps(d))


def test_symmetric_needs_symmetry_table():
    d = json.loads(serialize_document(gen.ar(2, True)))
    del d["symmetry"]
    with pytest.raises(SemanticError, match="symmetry"):
        parse_document(json.dumps(d))


CORPUS = build_corpus()


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(range(len(CORPUS.functors))))
def test_functor_roundtrip(i):
    F = CORPUS.functors[i]
    text = serialize_document(F)
    G = parse_document(text)
    assert G == F and serialize_document(G) == text


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(range(len(CORPUS.functors))))
def test_tuple_named_roundtrip(i):
    F = CORPUS.functors[i]
    for fac in (factor_trivcof_fib(F), factor_cof_trivfib(F)):
        for G in (fac.first, fac.second):
            text = serialize_document(G)
            assert parse_document(text) == G
            assert normalize(text) == text


def test_category_and_presentation_roundtrip():
    for C in CORPUS.categories.values():
        text = serialize_document(C)
        assert parse_document(text) == C and normalize(text) == text
    pres = bv_presentation(gen.walking_iso(True), gen.ar(2, True))
    text = serialize_document(pres)
    back = parse_document(text)
    assert back.relations == pres.relations and back.labels == pres.labels
    assert serialize_document(back) == text


def test_square_with_file_references(tmp_path):
    s2h, h2s = gen.star_to_h(), gen.h_to_star()
    (tmp_path / "left.json").write_text(serialize_document(s2h))
    (tmp_path / "right.json").write_text(serialize_document(h2s))
    doc = {"kind": "square", "left": {"file": "left.json"}, "right": {"file": "right.json"},
           "top": {"file": "left.json"}, "bottom": {"file": "right.json"}}
    (tmp_path / "sq.json").write_text(json.dumps(doc))
    sq = load_path(str(tmp_path / "sq.json"))
    assert sq == LiftingSquare(s2h, h2s, s2h, h2s)


def test_functor_operads_by_file(tmp_path):
    F = slice_from_cat(CORPUS.categories["z2"])
    (tmp_path / "src.json").write_text(serialize_document(F.source))
    d = json.loads(serialize_document(F))
    d["source"] = {"file": "src.json"}
    (tmp_path / "f.json").write_text(json.dumps(d))
    assert load_path(str(tmp_path / "f.json")) == F
