"""CLI behaviour: exit codes, determinism, JSON round trips."""

import json

import pytest

from nearhex.cli import main
from nearhex.jsonio import document_to_geometry, dumps, geometry_to_document, load_geometry
from nearhex import GeometryError, build_w2


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_w2(tmp_path, capsys):
    out = tmp_path / "w2.json"
    code, _, _ = run(capsys, "build", "--model", "w2", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["name"] == "w2"
    assert len(doc["points"]) == 15
    assert len(doc["lines"]) == 15
    assert doc["points"][0] == {"id": 0, "label": "12"}


def test_build_is_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "build", "--model", "h3", "--out", str(a))[0] == 0
    assert run(capsys, "build", "--model", "h3", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_build_dsp62_counts(tmp_path, capsys):
    out = tmp_path / "dsp.json"
    assert run(capsys, "build", "--model", "dsp62", "--out", str(out))[0] == 0
    doc = json.loads(out.read_text())
    assert (len(doc["points"]), len(doc["lines"])) == (135, 315)
    labels = [p["label"] for p in doc["points"]]
    assert labels[105] == "12"
    assert labels[120] == "12'"
    assert labels[0] == "(12,12')"


def test_build_unknown_model(capsys):
    code, _, err = run(capsys, "build", "--model", "nope")
    assert code == 2
    assert "unknown model" in err


def test_export_checks_format(tmp_path, capsys):
    code, _, err = run(capsys, "export", "--model", "w2", "--format", "xml")
    assert code == 2
    out = tmp_path / "w2.json"
    code, _, _ = run(capsys, "export", "--model", "w2", "--format", "json", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text())["name"] == "w2"


@pytest.mark.parametrize(
    "model,checks",
    [
        ("w2", "pls,params,np,quads"),
        ("h3", "params,cases"),
        ("h3-partition", "pls,params"),
        ("h3-debruyn", "pls,params"),
        ("dsp62", "params,hyperplane"),
    ],
)
def test_verify_passes(capsys, model, checks):
    code, out, _ = run(capsys, "verify", "--model", model, "--checks", checks)
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "pass"
    assert [e["check"] for e in doc["checks"]] == checks.split(",")
    assert all(e["verdict"] == "pass" for e in doc["checks"])


def test_verify_default_checks_h3(capsys):
    code, out, _ = run(capsys, "verify", "--model", "h3")
    assert code == 0
    doc = json.loads(out)
    names = [e["check"] for e in doc["checks"]]
    assert names == ["pls", "np", "dense", "params", "quads", "cases"]


def test_verify_params_payload(capsys):
    code, out, _ = run(capsys, "verify", "--model", "h3", "--checks", "params")
    assert code == 0
    entry = json.loads(out)["checks"][0]
    assert entry["counts"]["observed"]["t2_values"] == [1, 2]
    assert entry["counts"]["observed"]["lines_per_point"] == [6]


def test_verify_writes_report_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, stdout, _ = run(
        capsys, "verify", "--model", "w2", "--checks", "pls,params", "--out", str(out)
    )
    assert code == 0
    assert stdout == ""
    doc = json.loads(out.read_text())
    assert doc["verdict"] == "pass"
    assert [e["check"] for e in doc["checks"]] == ["pls", "params"]


def test_debruyn_export_labels(tmp_path, capsys):
    out = tmp_path / "deb.json"
    assert run(capsys, "build", "--model", "h3-debruyn", "--out", str(out))[0] == 0
    labels = {p["label"] for p in json.loads(out.read_text())["points"]}
    assert "(12,12)" in labels
    assert "(12,46)" in labels


def test_verify_rejects_misapplied_checks(capsys):
    assert run(capsys, "verify", "--model", "w2", "--checks", "hyperplane")[0] == 2
    assert run(capsys, "verify", "--model", "h3-partition", "--checks", "cases")[0] == 2
    assert run(capsys, "verify", "--model", "h3", "--checks", "bogus")[0] == 2


def test_iso_command(tmp_path, capsys):
    a = tmp_path / "h3.json"
    b = tmp_path / "part.json"
    c = tmp_path / "dsp.json"
    run(capsys, "build", "--model", "h3", "--out", str(a))
    run(capsys, "build", "--model", "h3-partition", "--out", str(b))
    run(capsys, "build", "--model", "dsp62", "--out", str(c))

    code, out, _ = run(capsys, "iso", str(a), str(b))
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "isomorphic"
    assert len(doc["mapping"]) == 105

    code, out, _ = run(capsys, "iso", str(a), str(c))
    assert code == 1
    assert json.loads(out)["verdict"] == "not isomorphic"


def test_iso_rejects_garbage(tmp_path, capsys):
    bad = tmp_path / "garbage.json"
    bad.write_text("{not json")
    good = tmp_path / "w2.json"
    run(capsys, "build", "--model", "w2", "--out", str(good))
    code, _, err = run(capsys, "iso", str(good), str(bad))
    assert code == 2
    assert "error:" in err
    missing = tmp_path / "missing.json"
    assert run(capsys, "iso", str(good), str(missing))[0] == 2
    schema_bad = tmp_path / "schema.json"
    schema_bad.write_text(json.dumps({"name": "x", "points": [{"id": 1}], "lines": []}))
    assert run(capsys, "iso", str(good), str(schema_bad))[0] == 2


def test_usage_error_exit_code(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "build")[0] == 2


def test_unwritable_output_path(tmp_path, capsys):
    target = tmp_path / "no" / "such" / "dir" / "w2.json"
    code, _, err = run(capsys, "build", "--model", "w2", "--out", str(target))
    assert code == 2
    assert "error:" in err


def test_json_roundtrip():
    g = build_w2()
    doc = geometry_to_document(g, "w2")
    name, back = document_to_geometry(doc)
    assert name == "w2"
    assert back.lines == g.lines
    assert back.labels == tuple(str(l) for l in g.labels)


def test_document_validation():
    with pytest.raises(GeometryError):
        document_to_geometry([1, 2, 3])
    with pytest.raises(GeometryError):
        document_to_geometry({"name": "x", "points": [{"id": 5}], "lines": []})
    with pytest.raises(GeometryError):
        document_to_geometry({"name": "x", "points": [], "lines": [["a"]]})


def test_dumps_trailing_newline():
    assert dumps({"a": 1}).endswith("\n")


def test_load_geometry_missing_file(tmp_path):
    with pytest.raises(GeometryError):
        load_geometry(str(tmp_path / "nope.json"))
