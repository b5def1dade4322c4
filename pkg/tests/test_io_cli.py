import io
import json

import pytest

from dgcoalg import fixtures as F
from dgcoalg.cli import run
from dgcoalg.coalgebra import validate_coalgebra
from dgcoalg.io import FixtureDocument, FixtureError, dumps, emit, loads, parse
from dgcoalg.library import DATA_DIR, bundled_documents, bundled_path
from dgcoalg.linalg import QQ, Field

TRIVIAL = """{
  "field": "Q",
  "coalgebras": {
    "k": {
      "basis": [{"label": "1", "degree": 0}],
      "comultiplication": [{"on": "1", "left": "1", "right": "1", "coeff": "1"}],
      "counit": {"1": "1"}
    }
  }
}
"""


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_trivial_parses_and_validates():
    doc = loads(TRIVIAL)
    assert validate_coalgebra(doc.coalgebras["k"]).ok
    assert doc.coalgebras["k"] == F.trivial()


def test_syntax_error_has_position():
    with pytest.raises(FixtureError) as e:
        loads(TRIVIAL.replace('"counit"', '"counit" "x"'))
    assert e.value.line == 7 and e.value.column is not None
    assert "line 7" in str(e.value)


def test_dangling_reference_is_named():
    text = json.loads(TRIVIAL)
    text["comodules"] = {"M": {"over": "nowhere", "side": "left", "basis": []}}
    with pytest.raises(FixtureError) as e:
        loads(json.dumps(text))
    assert "nowhere" in str(e.value) and e.value.path == "comodules.M.over"


def test_unknown_label_and_bad_coefficient():
    bad = TRIVIAL.replace('"right": "1"', '"right": "2"')
    with pytest.raises(FixtureError, match="basis label '2'"):
        loads(bad)
    with pytest.raises(FixtureError, match="bad coefficient"):
        loads(TRIVIAL.replace('"counit": {"1": "1"}', '"counit": {"1": "one"}'))
    with pytest.raises(FixtureError, match="not defined"):
        loads(TRIVIAL.replace('"field": "Q"', '"field": {"Fp": 3}').replace('"counit": {"1": "1"}',
                                                                             '"counit": {"1": "1/3"}'))
    with pytest.raises(FixtureError, match="coefficient must be"):
        loads(TRIVIAL.replace('"counit": {"1": "1"}', '"counit": {"1": 0.5}'))


def test_structural_errors():
    with pytest.raises(FixtureError, match="unknown section"):
        loads('{"field": "Q", "algebras": {}}')
    with pytest.raises(FixtureError, match="unknown field"):
        loads('{"field": "R"}')
    with pytest.raises(FixtureError, match="degree must be an integer"):
        loads(TRIVIAL.replace('"degree": 0', '"degree": "0"'))
    with pytest.raises(FixtureError, match="duplicate"):
        loads(TRIVIAL.replace('[{"label": "1", "degree": 0}]', '[{"label": "1", "degree": 0}, {"label": "1", "degree": 0}]'))


def test_field_override():
    doc = loads(TRIVIAL, Field.prime(7))
    assert doc.field == Field.prime(7) and doc.coalgebras["k"].field.p == 7


@pytest.mark.parametrize("name", sorted(bundled_documents()))
def test_bundled_files_match_builders(name):
    doc, desc = bundled_documents()[name]
    doc.description = desc
    assert bundled_path(name).read_text(encoding="utf-8") == dumps(doc)


@pytest.mark.parametrize("name", sorted(bundled_documents()))
def test_round_trip_is_stable(name):
    text = bundled_path(name).read_text(encoding="utf-8")
    once = dumps(parse(bundled_path(name)))
    twice = dumps(loads(once))
    assert once == twice == text


def test_schema_lists_every_section():
    schema = json.loads((DATA_DIR / "schema" / "fixture.schema.json").read_text(encoding="utf-8"))
    for path in DATA_DIR.glob("*.json"):
        data = json.loads(path.read_text(encoding="utf-8"))
        assert set(data) <= set(schema["properties"]), path.name


def test_emit_text_and_json():
    rep = {"b": [1, 2], "a": {"ok": True}}
    assert emit(rep, "json").index('"a"') < emit(rep, "json").index('"b"')
    assert "ok: yes" in emit(rep, "text")
    with pytest.raises(ValueError):
        emit(rep, "xml")


def test_cli_hc_of_trivial():
    code, out, _ = _run("cohomology", "--theory", "hc", "--max-degree", "4", str(bundled_path("trivial")),
                        "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["results"][0]["vector"] == [1, 0, 1, 0, 1]
    assert rep["field"] == "Q" and rep["exit_status"] == 0


def test_cli_field_override():
    code, out, _ = _run("--field", "F2", "cohomology", "--theory", "hc", "--max-degree", "4",
                        str(bundled_path("trivial")), "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["field"] == "F_2" and rep["results"][0]["vector"] == [1, 0, 1, 0, 1]


def test_cli_operators_pass():
    code, out, _ = _run("operators", "--arity", "3", "--check", str(bundled_path("divided_powers")),
                        "--format", "json")
    assert code == 0
    rel = json.loads(out)["results"][0]["relations"]
    for key in ("T^(n+1)=id", "Nb'=bN", "(1-T)N=0", "N(1-T)=0", "(1-T)b=b'(1-T)", "dT=Td"):
        assert rel[key] is True


def test_cli_validate_broken_counit():
    code, out, _ = _run("validate", str(bundled_path("broken_counit")), "--format", "json")
    assert code == 1
    failures = json.loads(out)["results"][0]["failures"]
    assert {f["identity"] for f in failures} == {"counit"}


def test_cli_coefficients():
    code, out, _ = _run("cohomology", "--theory", "h", "--max-degree", "2", "--coefficients", "DP as bicomodule",
                        str(bundled_path("identity_certificate")), "--format", "json")
    assert code == 0
    assert json.loads(out)["results"][0]["vector"] == [2, 1, 1]


def test_cli_checks():
    ae = str(bundled_path("acyclic_extension"))
    assert _run("check-qiso", "--map", "f", ae)[0] == 0
    assert _run("check-qiso", "--map", "f0", ae)[0] == 1
    assert _run("check-morita", ae)[0] == 0
    assert _run("check-cotilting", str(bundled_path("morita_takeuchi")), "--n-max", "3")[0] == 0
    assert _run("check-cotilting", str(bundled_path("defects")))[0] == 1
    assert _run("check-morita", str(bundled_path("defects")))[0] == 1


def test_cli_input_errors(tmp_path):
    assert _run("frobnicate", "x")[0] == 2
    assert _run("validate")[0] == 2
    assert _run("cohomology", "--theory", "hoch", str(bundled_path("trivial")))[0] == 2
    assert _run("validate", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  \"field\": \"Q\",\n  oops\n}\n")
    code, _, err = _run("validate", str(bad))
    assert code == 2 and "line 3" in err
    assert _run("check-qiso", "--map", "nope", str(bundled_path("acyclic_extension")))[0] == 2
    assert _run("check-cotilting", str(bundled_path("trivial")))[0] == 2
    assert _run("--field", "F4", "validate", str(bundled_path("trivial")))[0] == 2


def test_cli_text_output_mentions_field():
    code, out, _ = _run("validate", str(bundled_path("trivial")))
    assert code == 0 and "field: Q" in out
