from sqlalchemy import create_engine, Column, Integer, String, DateTime, Float, Text, func, select
from sqlalchemy.orm import DeclarativeBase, Session, sessionmaker
from datetime import datetime
from typing import Dict, List, Optional
import json
import logging

from app import config

logger = logging.getLogger(__name__)

_engines: Dict[str, object] = {}


def get_engine(url: Optional[str] = None):
    """One engine per database URL (SQLite by default)"""
    url = url or config.database_url()
    if url not in _engines:
        _engines[url] = create_engine(url, echo=False)
    return _engines[url]


def get_session(url: Optional[str] = None) -> Session:
    return sessionmaker(get_engine(url), expire_on_commit=False)()


# Base class for declarative models (SQLAlchemy 2.0 style)
class Base(DeclarativeBase):
    pass


# Run history table
class RunHistory(Base):
    __tablename__ = "run_history"

    id = Column(Integer, primary_key=True, autoincrement=True)
    command = Column(String(500), nullable=False)
    caps = Column(Text, nullable=True)  # JSON stored as text
    verdicts = Column(Text, nullable=True)  # JSON stored as text
    exit_code = Column(Integer, default=0)
    elapsed = Column(Float, default=0.0)  # seconds
    created_at = Column(DateTime, default=datetime.utcnow)


def create_tables(url: Optional[str] = None) -> None:
    Base.metadata.create_all(get_engine(url))


def record_run(command: str, caps: dict, verdicts: dict, exit_code: int, elapsed: float,
               url: Optional[str] = None) -> Optional[int]:
    """Store one CLI run; the ledger never decides a run's outcome"""
    try:
        create_tables(url)
        with get_session(url) as session:
            row = RunHistory(
                command=command,
                caps=json.dumps(caps, sort_keys=True),
                verdicts=json.dumps(verdicts, sort_keys=True),
                exit_code=exit_code,
                elapsed=round(elapsed, 3),
            )
            session.add(row)
            session.commit()
            return row.id
    except Exception as e:
        logger.warning(f"Run history: could not record run, error={type(e).__name__}, message={str(e)}")
        return None


def recent_runs(limit: int = 10, url: Optional[str] = None) -> List[RunHistory]:
    create_tables(url)
    with get_session(url) as session:
        stmt = select(RunHistory).order_by(RunHistory.id.desc()).limit(limit)
        return list(session.scalars(stmt))


def run_stats(url: Optional[str] = None) -> List[dict]:
    """Runs and mean elapsed time per command name"""
    create_tables(url)
    with get_session(url) as session:
        stmt = (
            select(RunHistory.command, func.count(RunHistory.id), func.avg(RunHistory.elapsed))
            .group_by(RunHistory.command)
            .order_by(RunHistory.command)
        )
        totals: Dict[str, List[float]] = {}
        for command, count, mean in session.execute(stmt):
            key = command.split(" ", 1)[0]
            runs, total = totals.get(key, [0, 0.0])
            totals[key] = [runs + count, total + (mean or 0.0) * count]
        return [
            {"command": key, "runs": int(runs), "mean_elapsed": round(total / runs, 3) if runs else 0.0}
            for key, (runs, total) in sorted(totals.items())
        ]
