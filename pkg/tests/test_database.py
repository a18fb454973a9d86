from app.database import record_run, recent_runs, run_stats


def test_runs_are_recorded_and_summarized(tmp_path):
    url = f"sqlite:///{tmp_path / 'ledger.db'}"
    first = record_run("build s1", {"dim_cap": 3}, {"pass": 1}, 0, 0.5, url)
    record_run("build s2", {"dim_cap": 3}, {"pass": 1}, 0, 1.5, url)
    record_run("tower --kind dl", {"dim_cap": 3}, {"fail": 1}, 1, 2.0, url)
    assert first == 1
    runs = recent_runs(2, url)
    assert [r.command for r in runs] == ["tower --kind dl", "build s2"]
    assert runs[0].exit_code == 1
    stats = {row["command"]: row for row in run_stats(url)}
    assert stats["build"]["runs"] == 2
    assert stats["build"]["mean_elapsed"] == 1.0
    assert stats["tower"]["runs"] == 1


def test_recording_never_raises():
    assert record_run("build s1", {}, {}, 0, 0.1, "sqlite:////nonexistent/dir/ledger.db") is None
