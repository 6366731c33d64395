import json
import shutil
import subprocess
from pathlib import Path

import pytest

from reedy_lab.cli import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_UNSUPPORTED, main
from reedy_lab.report import Report

DATA = Path(__file__).parent / "data"


def _json_run(capsys, *argv):
    code = main(list(argv) + ["--format", "json", "--no-clock"])
    out = capsys.readouterr().out
    return code, out


def test_check_reedy_passes(capsys):
    code, out = _json_run(capsys, "check-reedy", "--zoo", "fin_all:2")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["verdict"] == "PASS"
    assert rep["tables"]["hom_dims"]["[2]->[2]"] == 4


def test_decompose_spans_criterion(capsys):
    code, out = _json_run(capsys, "decompose", "--zoo", "span_inj:2", "--criterion", "e")
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert rep["tables"]["endo_dims"] == [1, 1, 2]
    assert rep["tables"]["span_hom_sizes"]["[2]->[2]"] == 7


def test_decompose_spans_in_characteristic_two_fails(capsys):
    code, out = _json_run(capsys, "decompose", "--zoo", "span_inj:2", "--criterion", "e", "--field", "Fp:2")
    assert code == EXIT_FAIL
    failed = [c["name"] for c in json.loads(out)["checks"] if not c["passed"]]
    assert any("group_orders_invertible" in name for name in failed)


def test_irreducibles_total(capsys):
    code, out = _json_run(capsys, "irreducibles", "--zoo", "fin_all:3")
    assert code == EXIT_PASS
    assert json.loads(out)["tables"]["total"] == 7


def test_non_semisimple_exit_code(capsys):
    code, out = _json_run(capsys, "irreducibles", "--zoo", "dual_numbers")
    assert code == EXIT_UNSUPPORTED
    assert json.loads(out)["status"]


def test_hypothesis_failure_exit_code(capsys):
    code, _ = _json_run(capsys, "glue", "--spec", str(DATA / "truncated_arrow.json"))
    assert code == EXIT_UNSUPPORTED


@pytest.mark.parametrize("argv", [
    ["check-reedy", "--zoo", "no_such_thing"],
    ["check-reedy", "--zoo", "fin_all"],
    ["check-reedy", "--zoo", "fin_all:2", "--field", "Fp:4"],
    ["check-reedy", "--spec", str(DATA / "not_a_category.json")],
    ["check-reedy", "--spec", str(DATA / "missing.json")],
    ["check-reedy"],
])
def test_input_errors_exit_two(capsys, argv):
    assert main(argv) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_spec_file_instance(capsys):
    code, out = _json_run(capsys, "check-reedy", "--spec", str(DATA / "quiver.json"))
    assert code == EXIT_PASS
    assert json.loads(out)["instance"].endswith("quiver.json")


def test_json_round_trip(capsys):
    _, out = _json_run(capsys, "standard-modules", "--zoo", "quiver")
    rep = Report.from_json(out)
    assert rep.to_json(wall_clock=False) == out


def test_output_is_deterministic(capsys):
    argv = ["glue", "--zoo", "quiver", "--battery", "4", "--seed", "3"]
    _, first = _json_run(capsys, *argv)
    _, second = _json_run(capsys, *argv)
    assert first == second


def test_out_file_and_text_format(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["check-reedy", "--zoo", "quiver", "--out", str(target), "--format", "text"])
    assert code == EXIT_PASS
    assert "PASS" in capsys.readouterr().out
    assert json.loads(target.read_text())["verdict"] == "PASS"
    assert "wall_clock_seconds" in json.loads(target.read_text())


def test_report_bundle_reports_failing_checks(capsys):
    code, out = _json_run(capsys, "report", "--zoo", "quiver", "--battery", "3")
    assert code == EXIT_FAIL
    names = {c["name"] for c in json.loads(out)["checks"]}
    assert any(n.startswith("check-reedy") for n in names)
    assert any(n.startswith("decompose") for n in names)


@pytest.mark.skipif(shutil.which("reedy-lab") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["reedy-lab", "check-reedy", "--zoo", "poset_chain:3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
