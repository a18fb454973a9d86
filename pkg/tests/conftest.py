import pytest

from app import config


@pytest.fixture(autouse=True)
def isolated_ledger(tmp_path, monkeypatch):
    """Every test gets its own run ledger and the default caps"""
    monkeypatch.setenv("DATABASE_URL", f"sqlite:///{tmp_path / 'runs.db'}")
    monkeypatch.setenv("SSET_RECORD_RUNS", "0")
    monkeypatch.setattr(config, "DIM_CAP", 3)
    monkeypatch.setattr(config, "LEVEL_CAP", 1)
    monkeypatch.setattr(config, "SIGMA_MAX", 1)
    monkeypatch.setattr(config, "NODE_BUDGET", 10_000_000)
    yield
