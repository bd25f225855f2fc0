"""Script parsing, execution, emitters, golden files and the schema."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from mfcat.algebra import FieldSpec, RingContext, parse_poly
from mfcat.cli import RunOptions, emit, emit_json, execute, parse_script, print_script
from mfcat.cli.main import main
from mfcat.errors import ScriptError

ROOT = Path(__file__).resolve().parents[1]
DEMO = ROOT / "scripts" / "demo.mfk"
SCHEMA = json.loads((ROOT / "src" / "mfcat" / "cli" / "result.schema.json").read_text())

BASIC = "ring A = QQ[x,y]; potential W = x*y^2 over A; mf K = koszul(W; [x],[y^2]); check K;"

FIXTURES = [
    BASIC,
    DEMO.read_text(),
    "ring A = GF(31)[x, y, z] lex; potential W = x^3 - 2/3*y*z over A; mf K = koszul(W; [x], [x^2]);",
    "ring A = k[x]; ring B = A / (x^2); potential V = 0 over B; mf E = { e1 = [[x]], e0 = [[x]] } of V;",
    "ring A = QQ[x]; potential W = x^2 over A; mf K = koszul(W; [x],[x]);"
    "morphism h : K -> K = { f10 = [[1]], f01 = [[-1]] }; check h; pncoh 3 -2;",
]


def run(text, **kw):
    return execute(parse_script(text), RunOptions(**kw))


def result(text, **kw):
    recs = run(text, **kw)
    assert recs[-1].ok, recs[-1].error
    return recs[-1].result


# -- parsing ------------------------------------------------------------------------

def test_basic_script_has_four_statements():
    assert len(parse_script(BASIC)) == 4


def test_literal_parses_then_check_fails():
    text = "ring A = QQ[x,y]; potential W = x*y^2 over A; mf K = { e1 = [[x]], e0 = [[y]] } of W; check K;"
    recs = run(text)
    assert [r.status for r in recs] == ["error"]
    assert recs[0].error["type"] == "NotAFactorization"


@pytest.mark.parametrize("text,kind,line,col", [
    ("ring A = QQ[x] );", "syntax", 1, 16),
    ("ring A = QQ[x];\nring A = QQ[y];", "redeclaration", 2, 1),
    ("ring A = QQ[x];\ncheck K;", "unknown_name", 2, 7),
    ("pncoh 2;", "arity", 1, 1),
    ("ring A = QQ[x]; potential W = y over A;", "unknown_name", 1, 31),
    ("ring A = QQ[x]; potential W = x over A; ext W W 0;", "type", 1, 45),
    ("ring A = QQ[x,y]; ring B = QQ[t]; map m : A -> B = [x -> t];", "arity", 1, 35),
    ("ring A = RR[x];", "syntax", 1, 10),
    ("frobnicate 3;", "unknown_name", 1, 1),
    ("ring A = QQ[x]; potential W = x^ over A;", "syntax", 1, 34),
])
def test_errors_carry_positions(text, kind, line, col):
    with pytest.raises(ScriptError) as exc:
        parse_script(text)
    assert (exc.value.kind, exc.value.line, exc.value.column) == (kind, line, col)


@pytest.mark.parametrize("text", FIXTURES)
def test_print_parse_roundtrip(text):
    s1 = parse_script(text)
    s2 = parse_script(print_script(s1))
    assert s1 == s2
    assert print_script(s2) == print_script(s1)


# -- execution ----------------------------------------------------------------------

def test_ext_command():
    r = result("ring A = QQ[x,y]; potential W = x*y over A; mf K = koszul(W; [x],[y]); ext K K 0;")
    assert r["k_dim"] == 1


def test_contractible_command():
    r = result("ring A = QQ[x,y]; potential W = x*y over A; mf G = gplus(1, 1; W); contractible G;")
    assert r["contractible"] is True


def test_pncoh_command():
    assert result("pncoh 2 -1;")["dims"] == [0, 0, 0]


def test_execution_continues_after_errors():
    text = ("ring A = QQ[x]; ring B = A / (x^2); ring C = QQ[t];"
            "map bad : B -> C = [x -> t]; potential V = 0 over B; mf E = { e1 = [[x]], e0 = [[x]] } of V;"
            "mf F = basechange(bad, E); check F; pncoh 1 0;")
    recs = run(text)
    assert [(r.op, r.status) for r in recs] == [("declare", "error"), ("declare", "error"),
                                                 ("check", "error"), ("pncoh", "ok")]
    assert recs[0].error["type"] == "IllDefinedRingMap"
    assert recs[2].error["type"] == "Unavailable"


def test_field_option_applies_to_k_rings():
    text = "ring A = k[x]; potential W = x^2 over A; mf K = koszul(W; [x], [x]); check K;"
    assert result(text)["ring"] == "QQ[x]"
    assert result(text, field=FieldSpec.prime(31))["ring"] == "GF(31)[x]"
    assert result(text.replace("k[x]", "QQ[x]"), field=FieldSpec.prime(31))["ring"] == "QQ[x]"


def test_order_option():
    text = "ring A = k[x,y]; potential W = x*y over A; mf K = koszul(W; [x], [y]); check K;"
    assert result(text, order="lex")["ring"] == "QQ[x,y] lex"


def test_blowup_command():
    text = ("ring A = QQ[x,y]; ring B = A / (x); potential WB = y^2 over B;"
            "mf M = { e1 = [[y]], e0 = [[y]] } of WB; blowup_verify M (x) (y^2 + x);")
    r = result(text)
    assert r["pass"] is True and r["u0"] == [["1"]]


# -- emitters -----------------------------------------------------------------------

def test_empty_result_list():
    assert json.loads(emit_json([])) == {"version": 1, "results": []}


def test_text_table_alignment():
    out = emit(run("pncoh 2 -3;"), "text")
    assert out == "[0] line 1: pncoh 2 -3;  ok\n  n     2\n  d     -3\n  dims  [0, 0, 1]\n"


def test_timing_only_on_request():
    assert "wall_ms" not in run("pncoh 1 1;")[0].to_json()
    assert "wall_ms" in run("pncoh 1 1;", timing=True)[0].to_json()


def test_demo_json_golden():
    recs = execute(parse_script(DEMO.read_text()))
    assert emit_json(recs) == (ROOT / "scripts" / "demo.golden.json").read_text()


def test_demo_text_golden():
    recs = execute(parse_script(DEMO.read_text()))
    assert emit(recs, "text") == (ROOT / "scripts" / "demo.golden.txt").read_text()


@pytest.mark.parametrize("text", FIXTURES)
def test_records_validate_against_schema(text):
    doc = json.loads(emit_json(run(text)))
    jsonschema.validate(doc, SCHEMA)


def test_schema_rejects_bad_payload():
    doc = json.loads(emit_json(run("pncoh 2 -1;")))
    doc["results"][0]["result"]["dims"] = "none"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, SCHEMA)


def test_payload_polynomials_reparse():
    doc = json.loads((ROOT / "scripts" / "demo.golden.json").read_text())
    rings = {"QQ[x,y]": RingContext(FieldSpec.rationals(), ["x", "y"]),
             "QQ[y,z]": RingContext(FieldSpec.rationals(), ["y", "z"])}
    seen = 0
    for rec in doc["results"]:
        res = rec.get("result") or {}
        R = rings.get(res.get("ring"))
        if R is None:
            continue
        for key in ("e1", "e0"):
            for row in res[key]:
                for entry in row:
                    assert str(parse_poly(entry, R)) == entry
                    seen += 1
        assert str(parse_poly(res["W"], R)) == res["W"]
    assert seen > 10


# -- command line -------------------------------------------------------------------

def test_main_json(capsys):
    assert main(["run", str(DEMO), "--json"]) == 0
    assert capsys.readouterr().out == (ROOT / "scripts" / "demo.golden.json").read_text()


def test_main_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.mfk"
    p.write_text("ring A = QQ[x];\npncoh ;\n")
    assert main(["run", str(p)]) == 2
    assert "2:1: arity error" in capsys.readouterr().err


def test_main_fmt_is_stable(tmp_path, capsys):
    main(["fmt", str(DEMO)])
    once = capsys.readouterr().out
    p = tmp_path / "once.mfk"
    p.write_text(once)
    main(["fmt", str(p)])
    assert capsys.readouterr().out == once


def test_main_field_flag(tmp_path, capsys):
    p = tmp_path / "k.mfk"
    p.write_text("ring A = k[x]; potential W = x^2 over A; mf K = koszul(W; [x], [x]); check K;")
    main(["run", str(p), "--json", "--field", "p", "7"])
    assert '"GF(7)[x]"' in capsys.readouterr().out
    with pytest.raises(SystemExit):
        main(["run", str(p), "--field", "p", "8"])
    main(["run", "--field", "p", "5", "--json", str(p)])
    assert '"GF(5)[x]"' in capsys.readouterr().out
    main(["run", "--field", "q", str(p), "--json"])
    assert '"QQ[x]"' in capsys.readouterr().out


def test_json_is_identical_across_processes():
    cmd = [sys.executable, "-m", "mfcat.cli", "run", str(DEMO), "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True,
                       env={"PYTHONHASHSEED": "123", "PATH": ""}).stdout
    assert a == b
