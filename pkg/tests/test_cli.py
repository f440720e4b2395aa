import json
import shutil
import subprocess
from pathlib import Path

import pytest

from opdkit import adjunctions
from opdkit.cli import run_command
from opdkit.textformat import parse_model, print_model

DATA = Path(__file__).parent / "data"
REPORT_KEYS = {"check", "verdict", "bound", "coverage", "witness"}


def run(*argv):
    return run_command([str(a) for a in argv])


def run_json(capsys, *argv):
    code = run(*argv, "--json")
    return code, json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("name", ["arrow", "z2", "magma", "z2_free", "comm_subst", "arrow_pinned"])
def test_check_valid_files(name):
    assert run("check", DATA / f"{name}.opk") == 0


def test_check_incomplete_table_is_false(capsys):
    code, rep = run_json(capsys, "check", DATA / "incomplete_act.opk")
    assert code == 1
    assert rep["verdict"] is False
    assert rep["witness"]["violation"] == "table incomplete"


@pytest.mark.parametrize("name", ["bad_compose", "syntax", "unknown_colour"])
def test_invalid_files_exit_two(name, capsys):
    assert run("check", DATA / "invalid" / f"{name}.opk") == 2
    assert "line" in capsys.readouterr().err


def test_usage_errors_exit_two():
    assert run("bogus") == 2
    assert run() == 2
    assert run("check", DATA / "missing.opk") == 2
    assert run("free-smc", DATA / "z2.opk", "--bound", -1) == 2
    # wrong model kind for the command
    assert run("hermida", DATA / "z2.opk") == 2
    assert run("hermida", DATA / "magma.opk", "--bound", 5) == 2


def test_help_exits_zero(capsys):
    assert run("--help") == 0
    assert "hereditary" in capsys.readouterr().out


def test_json_report_schema(capsys):
    code, rep = run_json(capsys, "exact", DATA / "arrow_pinned.opk")
    assert code == 0
    assert set(rep) == REPORT_KEYS
    assert set(rep["coverage"]) == {"checked", "skipped"}
    assert rep["verdict"] is True and rep["witness"] is None


def test_hereditary_negative_has_witness(capsys):
    code, rep = run_json(capsys, "hereditary", DATA / "gen_negative.opk")
    assert code == 1
    assert {"x", "y", "failure"} <= set(rep["witness"])
    assert run("hereditary", DATA / "gen_pinned.opk") == 0


@pytest.mark.parametrize("command,name", [
    ("feynman", "z2_subst"), ("comma", "comm_subst"), ("regular-pattern", "comm_pinned"),
    ("roundtrip", "z2_subst"), ("exact", "gen_pinned"),
])
def test_pinned_checks_pass(command, name):
    assert run(command, DATA / f"{name}.opk") == 0


def test_exact_rejects_negative_instance():
    assert run("exact", DATA / "gen_negative.opk") == 1


@pytest.mark.parametrize("command,name,kind", [
    ("free-smc", "z2", "smc"), ("hermida", "magma", "smc"), ("end", "magma_free", "operad"),
    ("coreflect", "arrow_pinned", "substitude"), ("coreflect", "z2_subst", "substitude"),
])
def test_constructions_write_parseable_models(command, name, kind, tmp_path):
    out = tmp_path / "out.opk"
    assert run(command, DATA / f"{name}.opk", "--out", out) == 0
    model = parse_model(out.read_text())
    assert model.kind == kind
    assert run("check", out) == 0


def test_hermida_output_matches_stored_file(tmp_path):
    out = tmp_path / "f.opk"
    assert run("hermida", DATA / "magma.opk", "--out", out) == 0
    stored = parse_model((DATA / "magma_free.opk").read_text()).structure
    got = parse_model(out.read_text()).structure
    assert len(list(got.morphisms())) == len(list(stored.morphisms()))


def test_strictify_seeded_instance(tmp_path):
    out = tmp_path / "s.opk"
    assert run("strictify", "--seed", 1, "--out", out) == 0
    assert parse_model(out.read_text()).kind == "smc"
    assert run("strictify", DATA / "arrow_pinned.opk") == 0


def test_algebra_command():
    assert run("algebra") == 0
    assert run("algebra", "--seed", 2) == 0


@pytest.mark.parametrize("kind", ["category", "groupoid", "operad", "substitude", "pinned"])
def test_gen_is_deterministic_and_valid(kind, tmp_path):
    a, b = tmp_path / "a.opk", tmp_path / "b.opk"
    assert run("gen", kind, "--seed", 4, "--size", 2, "--out", a) == 0
    assert run("gen", kind, "--seed", 4, "--size", 2, "--out", b) == 0
    assert a.read_text() == b.read_text()
    assert run("check", a) == 0


def test_gen_negative_breaks_hereditary(tmp_path):
    out = tmp_path / "n.opk"
    assert run("gen", "negative", "--seed", 0, "--size", 2, "--out", out) == 0
    assert run("check", out) == 0
    assert run("hereditary", out) == 1


def test_printed_output_round_trips(capsys):
    assert run("end", DATA / "magma_free.opk") == 0
    text = capsys.readouterr().out
    assert print_model(parse_model(text).structure) == text


def test_enumeration_cap_is_an_input_error(monkeypatch):
    monkeypatch.setenv("OPDKIT_MAX_ENUM", "5")
    assert run("free-smc", DATA / "z2.opk", "--bound", 3) == 2


def test_internal_inconsistency_exits_three(monkeypatch, capsys):
    real = adjunctions.monoidal_exactness_check

    def flipped(tau, *args, **kwargs):
        rep = real(tau, *args, **kwargs)
        rep.verdict = not rep.verdict
        return rep

    # the recogniser compares the hereditary route with the exactness route
    monkeypatch.setattr(adjunctions, "monoidal_exactness_check", flipped)
    assert run("regular-pattern", DATA / "arrow_pinned.opk") == 3
    assert "internal inconsistency" in capsys.readouterr().err


@pytest.mark.skipif(shutil.which("opdkit") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["opdkit", "check", str(DATA / "z2.opk"), "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] is True
