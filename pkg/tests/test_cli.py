import json
from pathlib import Path

import pytest

from doublecat.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_laws_pass_on_shipped_morph_file(capsys):
    code, out, _ = run(capsys, "laws", DATA / "morph_linear3.json", "--exhaustive", "--no-timestamp")
    assert code == 0
    assert "ALL LAWS PASS" in out


def test_laws_fail_on_corrupted_composition_table(capsys):
    code, out, _ = run(capsys, "laws", DATA / "fincat_bad.json", "--no-timestamp", "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["failures"] == 1
    assert doc["results"][0]["counterexample"]


def test_laws_reject_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "laws", bad)
    assert code == 2
    assert "error" in err


def test_laws_reject_unknown_kind(tmp_path, capsys):
    doc = tmp_path / "weird.json"
    doc.write_text(json.dumps({"version": 1, "kind": "mystery"}))
    code, _, err = run(capsys, "laws", doc)
    assert code == 2


@pytest.mark.parametrize(
    "name",
    [
        "iso_linear3.json",
        "span_small.json",
        "monoidal_small.json",
        "monoidal_action_small.json",
        "cobord0_cells.json",
        "cobord1_cells.json",
        "bimod_standard.json",
    ],
)
def test_laws_pass_on_every_shipped_instance(capsys, name):
    budget = "80" if name == "bimod_standard.json" else "200"
    code, out, _ = run(capsys, "laws", DATA / name, "--budget", budget, "--no-timestamp")
    assert code == 0, out


def test_reports_are_byte_identical_under_fixed_seed(capsys):
    args = ("laws", DATA / "span_small.json", "--budget", "120", "--seed", "5", "--json", "--no-timestamp")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_timestamp_present_unless_suppressed(capsys):
    code, out, _ = run(capsys, "laws", DATA / "morph_linear3.json", "--json")
    assert code == 0 and "timestamp" in json.loads(out)
    code, out, _ = run(capsys, "laws", DATA / "morph_linear3.json", "--json", "--no-timestamp")
    assert code == 0 and "timestamp" not in json.loads(out)


def test_compose_pants_gives_genus_one_tube(capsys):
    code, out, _ = run(capsys, "compose", DATA / "cobord1_cells.json", "--cells", "copants,pants")
    assert code == 0
    doc = json.loads(out)
    assert doc["composite"]["components"] == [{"boundary": ["s0", "t0"], "genus": 1}]


def test_compose_unit_returns_the_cell(capsys):
    code, out, _ = run(capsys, "compose", DATA / "cobord0_cells.json", "--cells", "main,main")
    assert code == 0
    doc = json.loads(out)
    assert doc["composite"]["pairs"] == [["s0", "t0"]]
    assert doc["composite"]["loops"] == 0


def test_compose_mismatched_middle_exits_one(capsys):
    code, _, err = run(capsys, "compose", DATA / "cobord1_cells.json", "--cells", "pants,pants")
    assert code == 1
    assert "not composable" in err


def test_compose_missing_cell_exits_two(capsys):
    code, _, err = run(capsys, "compose", DATA / "cobord1_cells.json", "--cells", "pants,ghost")
    assert code == 2


def test_compose_spans_prints_apex(capsys):
    code, out, _ = run(capsys, "compose", DATA / "span_small.json", "--cells", "wide,narrow")
    assert code == 0
    doc = json.loads(out)
    assert doc["composite"]["kind"] == "span"
    assert doc["composite"]["apex_size"] == 3


def test_tqft_torus_scalar_two(capsys):
    code, out, _ = run(
        capsys, "tqft", DATA / "frobenius_dual_numbers.json", DATA / "cobord1_cells.json",
        "--cell", "main", "--json", "--no-timestamp",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["matrix"] == [["2"]]


def test_tqft_identity_cobordism_is_identity_matrix(capsys):
    code, out, _ = run(
        capsys, "tqft", DATA / "theory1d_dim2.json", DATA / "cobord0_cells.json",
        "--cell", "main", "--json", "--no-timestamp",
    )
    assert code == 0
    assert json.loads(out)["matrix"] == [["1", "0"], ["0", "1"]]


def test_tqft_check_axioms_flag(capsys):
    code, out, _ = run(
        capsys, "tqft", DATA / "frobenius_dual_numbers.json", DATA / "cobord1_cells.json",
        "--cell", "cylinder", "--check-axioms", "--json", "--no-timestamp",
    )
    assert code == 0
    doc = json.loads(out)
    assert all(r["passed"] for r in doc["axioms"])


def test_tqft_dimension_mismatch_is_input_error(capsys):
    code, _, err = run(
        capsys, "tqft", DATA / "theory1d_dim2.json", DATA / "cobord1_cells.json"
    )
    assert code == 2


@pytest.mark.parametrize(
    "name",
    ["action_pullback.json", "action_iso.json", "action_self_morph.json", "action_module.json"],
)
def test_action_check_passes(capsys, name):
    code, out, _ = run(capsys, "action", DATA / name, "check", "--budget", "100", "--no-timestamp")
    assert code == 0, out


def test_action_orbit_lists_closure(capsys):
    code, out, _ = run(
        capsys, "action", DATA / "action_iso.json", "orbit", "--seed-object", "3"
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["orbit_objects"]) >= 1
    assert doc["orbit_morphisms"] >= 1


def test_action_orbit_needs_valid_seed(capsys):
    code, _, err = run(capsys, "action", DATA / "action_iso.json", "orbit", "--seed-object", "9999")
    assert code == 2


def test_action_charclass_passes_exhaustively(capsys):
    code, out, _ = run(
        capsys, "action", DATA / "action_pullback.json", "charclass", "--exhaustive", "--no-timestamp"
    )
    assert code == 0
    assert "ALL LAWS PASS" in out


def test_action_charclass_unsupported_variant(capsys):
    code, _, err = run(capsys, "action", DATA / "action_iso.json", "charclass")
    assert code == 2
