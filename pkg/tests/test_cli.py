"""End-to-end checks of the command line interface, run in process."""

from __future__ import annotations

import io
import json

import pytest

from adinkra.cli import main


@pytest.fixture
def run(monkeypatch, capsys):
    def invoke(argv: list[str], stdin: str = ""):
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
        code = main(argv)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def test_cube_emits_an_adinkra_document(run) -> None:
    code, out, err = run(["cube", "2"])
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["kind"] == "adinkra"
    assert len(doc["payload"]["vertices"]) == 4


def test_cube_spinor_flag(run) -> None:
    _, out, _ = run(["cube", "1", "--kind", "spinor"])
    vertices = json.loads(out)["payload"]["vertices"]
    stats = {v["id"]: v["statistics"] for v in vertices}
    assert stats == {0: "fermion", 1: "boson"}


def test_validate_reports_ok(run) -> None:
    _, cube, _ = run(["cube", "2"])
    code, out, _ = run(["validate"], stdin=cube)
    assert code == 0
    assert json.loads(out) == {"ok": True, "kind": "adinkra"}


def test_validate_reports_bad_json_as_violation(run) -> None:
    code, out, _ = run(["validate"], stdin="{nope")
    assert code == 1
    report = json.loads(out)
    assert report["ok"] is False
    assert "not valid JSON" in report["violations"][0]


def test_raise_then_lower_is_identity(run) -> None:
    _, cube, _ = run(["cube", "2"])
    _, raised, _ = run(["raise", "0"], stdin=cube)
    _, back, _ = run(["lower", "0"], stdin=raised)
    assert back == cube


def test_raise_failure_reports_on_stderr(run) -> None:
    _, cube, _ = run(["cube", "2"])
    code, out, err = run(["raise", "1"], stdin=cube)
    assert code == 1 and out == ""
    payload = json.loads(err)
    assert payload["type"] == "AdinkraError"
    assert "cannot raise 1" in payload["error"]


def test_hang_pipeline(run) -> None:
    _, cube, _ = run(["cube", "2"])
    _, hung, _ = run(
        ["hang", "--mode", "targets", "--hook", "0=2", "--hook", "3=2"],
        stdin=cube,
    )
    heights = {
        v["id"]: v["height"] for v in json.loads(hung)["payload"]["vertices"]
    }
    assert heights == {0: 2, 1: 1, 2: 1, 3: 2}


def test_hang_reports_bad_hooks_as_violations(run) -> None:
    _, cube, _ = run(["cube", "2"])
    code, out, _ = run(
        ["hang", "--mode", "targets", "--hook", "0=2", "--hook", "3=1"],
        stdin=cube,
    )
    assert code == 1
    report = json.loads(out)
    assert report["ok"] is False
    assert "parity" in report["violations"][0]


def test_family_counts_members(run) -> None:
    _, cube, _ = run(["cube", "2"])
    code, out, _ = run(["family"], stdin=cube)
    assert code == 0
    assert len(json.loads(out)["payload"]["members"]) == 6


def test_main_seq_with_orbits(run) -> None:
    _, cube, _ = run(["cube", "3"])
    _, valise, _ = run(
        ["hang", "--mode", "sources"]
        + [arg for v in (0, 3, 5, 6) for arg in ("--hook", f"{v}=0")],
        stdin=cube,
    )
    code, out, _ = run(["main-seq", "--orbits", "0;1,2,4;3,5,6;7"], stdin=valise)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["cycle_closure"] == 10
    assert payload["steps"][1]["move"] == [0]


def test_identify_reports_spec_and_moves(run) -> None:
    _, cube, _ = run(["cube", "2"])
    _, hung, _ = run(
        ["hang", "--mode", "targets", "--hook", "0=2", "--hook", "3=2"],
        stdin=cube,
    )
    code, out, _ = run(["identify"], stdin=hung)
    assert code == 0
    found = json.loads(out)
    assert found["kind"] == "scalar"
    assert found["entries"] == [
        {"subset": 1, "shift": 0},
        {"subset": 2, "shift": 0},
    ]
    assert found["moves"] == [0]


def test_constraints_from_flags(run) -> None:
    code, out, _ = run(["constraints", "-n", "2", "--entry", "1", "--entry", "2"])
    assert code == 0
    eqs = json.loads(out)["payload"]["equations"]
    assert len(eqs) == 4
    assert [e["phase"] for e in eqs] == ["+1", "-i", "+i", "-1"]


def test_constraints_entry_accepts_shift(run) -> None:
    code, out, _ = run(["constraints", "-n", "1", "--entry", "0:1"])
    assert code == 0
    entry = json.loads(out)["payload"]["entries"][0]
    assert entry == {"subset": 0, "shift": 1}


def test_verify_constraints_round_trip(run) -> None:
    _, doc, _ = run(["constraints", "-n", "2", "--entry", "1", "--entry", "2"])
    code, out, _ = run(["verify-constraints"], stdin=doc)
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert report["checked_equations"] == 4
    assert report["rederived_matches_image"] is True


def test_verify_constraints_from_adinkra_document(run) -> None:
    _, cube, _ = run(["cube", "2"])
    _, hung, _ = run(
        ["hang", "--mode", "targets", "--hook", "0=2", "--hook", "3=2"],
        stdin=cube,
    )
    code, out, _ = run(["verify-constraints"], stdin=hung)
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_susy(run) -> None:
    _, cube, _ = run(["cube", "3"])
    code, out, _ = run(["verify-susy"], stdin=cube)
    assert code == 0
    assert json.loads(out) == {"ok": True, "violations": []}


def test_grassmann_check_single_and_all(run) -> None:
    code, out, _ = run(["grassmann-check", "doublet2"])
    assert code == 0
    assert json.loads(out)["products"] == {"doublet2": "zero"}
    code, out, _ = run(["grassmann-check"])
    assert code == 0
    assert json.loads(out)["products"] == {
        "doublet2": "zero",
        "quintet3": "zero",
        "triplet3": "zero",
    }


def test_dims_of_hung_square(run) -> None:
    _, cube, _ = run(["cube", "2"])
    _, hung, _ = run(
        ["hang", "--mode", "targets", "--hook", "0=2", "--hook", "3=2"],
        stdin=cube,
    )
    code, out, _ = run(["dims"], stdin=hung)
    assert code == 0
    report = json.loads(out)
    assert report["dimension_vector"] == "(0|2|2)"
    assert report["kernel_orders"] == {"0": 1, "1": 0, "2": 0, "3": 0}


def test_quotient4_has_8_vertices_16_edges(run) -> None:
    code, out, _ = run(["quotient4"])
    assert code == 0
    payload = json.loads(out)["payload"]
    assert len(payload["vertices"]) == 8
    assert len(payload["edges"]) == 16


def test_export_names_the_graph(run) -> None:
    _, cube, _ = run(["cube", "2"])
    code, out, _ = run(["export", "--name", "pic"], stdin=cube)
    assert code == 0
    assert out.startswith("digraph pic {")
    assert "rankdir=BT;" in out


def test_file_arguments_are_read(run, tmp_path) -> None:
    _, cube, _ = run(["cube", "2"])
    path = tmp_path / "square.json"
    path.write_text(cube)
    code, out, _ = run(["family", str(path)])
    assert code == 0
    assert len(json.loads(out)["payload"]["members"]) == 6


def test_unknown_command_is_a_usage_error(run) -> None:
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_missing_required_flag_is_a_usage_error(run) -> None:
    with pytest.raises(SystemExit) as exc:
        run(["hang"])
    assert exc.value.code == 2
