import json

import pytest
from click.testing import CliRunner

from app.api import commands
from app.main import cli


@pytest.fixture
def run(tmp_path):
    runner = CliRunner()

    def invoke(*args):
        report_path = tmp_path / "report.json"
        if report_path.exists():
            report_path.unlink()
        result = runner.invoke(cli, list(args) + ["--report", str(report_path)])
        report = json.loads(report_path.read_text()) if report_path.exists() else None
        return result.exit_code, report

    return invoke


def test_build_reports_cells(run, tmp_path):
    code, report = run("build", "sphere", "2", "--out", str(tmp_path / "s2"))
    assert code == 0
    assert report["data"]["cells"] == [1, 0, 1]
    assert report["checks"][0]["verdict"] == "pass"
    assert report["timing_ms"] is None
    assert (tmp_path / "s2.json").is_file()


def test_reports_echo_caps(run):
    code, report = run("build", "s1", "--dim-cap", "4", "--levels", "2", "--timing")
    assert code == 0
    assert report["caps"]["dim_cap"] == 4
    assert report["caps"]["level_cap"] == 2
    assert report["timing_ms"] is not None


def test_map_space(run):
    code, report = run("map-space", "--A", "s1", "--Y", "s1", "--levels", "1")
    assert code == 0
    assert report["data"]["levels"][0] == 2


def test_algebra_eval(run):
    code, report = run("algebra", "eval", "--A", "s0", "--Y", "s1", "--B", "wedge(susp(A,1),A)", "--levels", "1")
    assert code == 0
    assert report["checks"][0]["verdict"] == "pass"


def test_parse_errors_exit_2(run):
    code, report = run("map-space", "--A", "torus", "--Y", "s1")
    assert code == 2
    assert report["data"]["error"].startswith("ParseError")


def test_budget_exhaustion_exits_3(run):
    code, report = run("map-space", "--A", "s2", "--Y", "s2", "--budget", "1")
    assert code == 3
    assert "BudgetError" in report["data"]["error"]


def test_mutated_algebra_fails(run):
    code, report = run("check-laws", "--suite", "monad_algebra", "--A", "s1", "--Y", "s1", "--mutate")
    assert code == 1
    assert report["checks"][0]["verdict"] == "fail"


def test_comonad_suite_passes(run):
    code, report = run("check-laws", "--suite", "comonad", "--sigma-max", "0")
    assert code == 0
    assert all(c["verdict"] == "pass" for c in report["checks"])


def test_cogroup_variant_refuses_s0(run):
    code, report = run("stover", "--A", "s0", "--Y", "s1", "--variant", "cogroup", "--cogroup", "--sigma-max", "0")
    assert code == 1
    assert "CogroupRequired" in report["data"]["error"]


def test_stover_object_files(run, tmp_path):
    code, report = run("stover", "--A", "s0", "--Y", "s0", "--sigma-max", "0", "--out", str(tmp_path / "L"))
    assert code == 0
    assert (tmp_path / "L" / "counit.json").is_file()
    assert report["data"]["pieces"][0] == "0.0.f0"


def test_dold_lashof_tower(run, tmp_path):
    code, report = run("tower", "--kind", "dl", "--A", "s0", "--Y", "s1", "--stages", "1", "--levels", "1", "--sigma-max", "0",
                       "--out", str(tmp_path / "tower"))
    assert code == 0
    assert report["data"]["bijective_levels"]
    assert (tmp_path / "tower" / "stage1.json").is_file()


def test_history_lists_recorded_runs(monkeypatch):
    monkeypatch.setenv("SSET_RECORD_RUNS", "1")
    runner = CliRunner()
    runner.invoke(cli, ["build", "s1"])
    result = runner.invoke(cli, ["history", "--limit", "5"])
    assert result.exit_code == 0
    assert "build s1" in result.output
    stats = runner.invoke(cli, ["history", "--stats"])
    assert "runs=1" in stats.output


def test_unexpected_exceptions_still_write_a_report(run, monkeypatch):
    def crashes(*args):
        raise ValueError("no such level")

    monkeypatch.setattr(commands, "map_space_command", crashes)
    code, report = run("map-space", "--A", "s1", "--Y", "s1")
    assert code == 1
    assert report["data"]["error"] == "ValueError: no such level"


def test_map_space_lists_classes_and_homotopies(run):
    code, report = run("map-space", "--A", "s0", "--Y", "d1", "--levels", "1")
    assert code == 0
    assert report["data"]["class_table"] == [[0, 1]]
    assert sum(len(Fs) for Fs in report["data"]["homotopies"].values()) == report["data"]["levels"][1]


def test_stover_writes_tags(run, tmp_path):
    code, report = run("stover", "--A", "s0", "--Y", "s0", "--sigma-max", "0", "--out", str(tmp_path / "L"))
    assert code == 0
    written = json.loads((tmp_path / "L" / "tags.json").read_text())
    assert written == report["data"]["tags"]
    assert all(members for members in written.values())


def test_tower_writes_its_report(run, tmp_path):
    code, report = run("tower", "--kind", "dl", "--A", "s0", "--Y", "s1", "--stages", "1", "--levels", "1", "--sigma-max", "0",
                       "--out", str(tmp_path / "tower"))
    assert code == 0
    written = json.loads((tmp_path / "tower" / "report.json").read_text())
    assert written["data"]["bijective_levels"]
    assert [c["name"] for c in written["checks"]] == [c["name"] for c in report["checks"]]


def test_double_suspension_evaluates(run):
    code, report = run("algebra", "eval", "--A", "s0", "--Y", "s2", "--B", "susp(A,2)", "--levels", "0")
    assert code == 0
    assert report["checks"][0]["verdict"] == "pass"


@pytest.mark.parametrize("args", [
    ("map-space", "--A", "s1", "--Y", "s1", "--levels", "1"),
    ("stover", "--A", "s0", "--Y", "s0", "--sigma-max", "0"),
    ("tower", "--kind", "stover", "--A", "s0", "--Y", "s1", "--stages", "1", "--levels", "1", "--sigma-max", "0"),
])
def test_reruns_are_byte_identical(args, tmp_path):
    runner = CliRunner()
    texts = []
    for k in range(2):
        path = tmp_path / f"report{k}.json"
        runner.invoke(cli, list(args) + ["--report", str(path)])
        texts.append(path.read_bytes())
    assert texts[0] == texts[1]
