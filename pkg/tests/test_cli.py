import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from opemodel import generators as gen
from opemodel.categories import walking_iso_category
from opemodel.cli import run
from opemodel.functors import classify, compose_functors, identity_functor
from opemodel.lifting import LiftingSquare
from opemodel.presented import bv_presentation, left_gen, right_gen
from opemodel.presented.terms import Leaf, Node
from opemodel.serialize import parse_document, serialize_document, term_to_json, to_json
from opemodel.categories import j_lower, walking_arrow

DATA = Path(__file__).parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, json.loads(out.getvalue()), err.getvalue()


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(serialize_document(obj) if not isinstance(obj, (dict, list)) else json.dumps(obj))
    return p


def test_classify_builtin_and_file(tmp_path):
    code, report, err = call("classify", "star-to-H")
    assert code == 0
    assert report["cofibration"] and not report["fibration"] and report["weak_equivalence"]
    F = gen.par_collapse(1)
    code, report, _ = call("classify", write(tmp_path, "f.json", F))
    assert code == 0 and {k: report[k] for k in classify(F)} == classify(F)


def test_validate_exit_codes(tmp_path):
    assert call("validate", DATA / "walking_iso.golden.json")[0] == 0
    d = json.loads((DATA / "walking_iso.golden.json").read_text())
    d["composition"] = d["composition"][1:]
    code, report, _ = call("validate", write(tmp_path, "bad.json", d))
    assert code == 1 and not report["ok"] and "totality" in report["violations"][0]
    del d["identities"]["a"]
    code, report, _ = call("validate", write(tmp_path, "worse.json", d))
    assert code == 2 and report["error"] == "SemanticError"
    p = tmp_path / "broken.json"
    p.write_text("{")
    code, report, _ = call("validate", p)
    assert code == 2 and report["error"] == "ParseError"


def test_lift_non_commuting_square(tmp_path):
    i = identity_functor(gen.star())
    sq = LiftingSquare(i, gen.star_to_h("a"), i, gen.star_to_h("b"))
    code, report, _ = call("lift", write(tmp_path, "sq.json", to_json(sq)))
    assert code == 2 and report["error"] == "SquareNotCommutative"


def test_lift_solves(tmp_path):
    s2h, h2s = gen.star_to_h(), gen.h_to_star()
    code, report, _ = call("lift", write(tmp_path, "sq.json", LiftingSquare(s2h, h2s, s2h, h2s)))
    assert code == 0
    H = parse_document(json.dumps(report["lift"]))
    assert LiftingSquare(s2h, h2s, s2h, h2s).is_lift(H)


def test_lift_search_negative(tmp_path):
    pc = gen.par_collapse(1)
    sq = LiftingSquare(pc, pc, identity_functor(pc.source), identity_functor(pc.target))
    code, report, _ = call("lift", write(tmp_path, "sq.json", sq))
    assert code == 1 and report["exists"] is False


def test_rlp():
    assert call("rlp", "star-to-H", "H-to-star")[0] == 0
    code, report, _ = call("rlp", "par-1", "par-1")
    assert code == 1 and report["counterexample"]["kind"] == "square"
    code, report, _ = call("rlp", "par-2", "par-2", "--budget", "2")
    assert code == 2 and report["error"] == "SearchBudgetExceeded"


def test_rlp_env_budget(monkeypatch):
    monkeypatch.setenv("OPEMODEL_BUDGET", "2")
    assert call("rlp", "par-2", "par-2")[0] == 2


@pytest.mark.parametrize("mode", ["trivcof-fib", "cof-trivfib"])
def test_factor(tmp_path, mode):
    F = gen.star_to_h()
    code, report, _ = call("factor", "--mode", mode, write(tmp_path, "f.json", F))
    assert code == 0
    first = parse_document(json.dumps(report["first"]))
    second = parse_document(json.dumps(report["second"]))
    assert compose_functors(second, first) == F


def test_bv_realizes_product():
    code, report, err = call("bv", "walking-arrow", "walking-arrow")
    assert code == 0 and report["generators"] == 12
    C = parse_document(json.dumps(report["realization"]))
    assert len(C.arrows) == 9
    assert "9 arrows" in err


def test_eq(tmp_path):
    W = j_lower(walking_arrow(), True)
    pres = bv_presentation(W, W)
    f = [m for m in W.morphisms if m.name == "f"][0]
    index = {g: i for i, g in enumerate(pres.generators)}
    lhs = Node(left_gen(f, "1"), (Node(right_gen("0", f), (Leaf(("0", "0")),)),))
    rhs = Node(right_gen("1", f), (Node(left_gen(f, "0"), (Leaf(("0", "0")),)),))
    p = write(tmp_path, "pres.json", pres)
    t1 = write(tmp_path, "t1.json", term_to_json(lhs, index))
    code, report, _ = call("eq", p, t1, json.dumps(term_to_json(rhs, index)), "--bound", "1")
    assert code == 0 and report["verdict"] == "Equal" and report["steps"] == 1
    code, report, _ = call("eq", p, t1, t1, "--bound", "0")
    assert code == 0
    # ProfileMismatch is an error
    other = json.dumps(term_to_json(Leaf(("0", "0")), index))
    assert call("eq", p, t1, other, "--bound", "1")[0] == 2


def test_eq_distinct(tmp_path):
    P = gen.par(1, True)
    p = write(tmp_path, "par.json", P)
    from opemodel.presented import presentation_of
    pres = presentation_of(P)
    index = {g: i for i, g in enumerate(pres.generators)}
    f1, f2 = (next(m for m in P.morphisms if m.name == n) for n in ("f1", "f2"))
    from opemodel.presented.terms import corolla
    a, b = (json.dumps(term_to_json(corolla(m), index)) for m in (f1, f2))
    code, report, _ = call("eq", p, a, b, "--bound", "4")
    assert code == 1 and report["verdict"] == "Distinct"


def test_slice(tmp_path):
    W = walking_iso_category()
    code, report, _ = call("slice", "from-cat", write(tmp_path, "c.json", W))
    assert code == 0
    f = write(tmp_path, "f.json", report)
    code, report, _ = call("slice", "to-cat", f)
    assert code == 0 and parse_document(json.dumps(report)) == W
    bad = gen.OperadFunctor(gen.ar(2), gen.star(), {c: gen.STAR_COLOR for c in gen.ar(2).colors},
                            {m: gen.star().identity(gen.STAR_COLOR) for m in gen.ar(2).morphisms})
    code, report, _ = call("slice", "to-cat", write(tmp_path, "bad.json", bad))
    assert code == 2


def test_gens_and_corner():
    code, report, _ = call("gens")
    assert code == 0 and len(report["cofibrations"]) == 7 and len(report["trivial_cofibrations"]) == 1
    code, report, _ = call("gens", "--max-arity", "0", "--symmetric")
    assert len(report["cofibrations"]) == 3
    code, report, _ = call("corner", "star-to-H", "boundary-1")
    assert code == 0 and report["injective"] and report["pushout_objects"] == 4
    code, report, _ = call("corner", "H-to-star", "boundary-1")
    assert code == 2 and report["error"] == "NotCofibration"


def test_usage_errors():
    out, err = io.StringIO(), io.StringIO()
    assert run(["nonsense"], out, err) == 2
    assert run(["factor", "x.json"], out, err) == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "opemodel.cli", "rlp", "star-to-H", "H-to-star"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"kind": "rlp", "holds": True}
    assert "holds" in proc.stderr
