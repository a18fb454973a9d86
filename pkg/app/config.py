import os

from dotenv import load_dotenv

load_dotenv()

# Caps; every report echoes the values actually used
DIM_CAP = int(os.getenv("SSET_DIM_CAP", "3"))
LEVEL_CAP = int(os.getenv("SSET_LEVEL_CAP", "1"))
SIGMA_MAX = int(os.getenv("SSET_SIGMA_MAX", "1"))
NODE_BUDGET = int(os.getenv("SSET_NODE_BUDGET", "10000000"))

LOG_LEVEL = os.getenv("SSET_LOG_LEVEL", "INFO")


def database_url() -> str:
    # Read at call time so tests can point the ledger somewhere else
    return os.getenv("DATABASE_URL", "sqlite:///./stover_runs.db")


def record_runs() -> bool:
    return os.getenv("SSET_RECORD_RUNS", "1").lower() not in ("0", "false", "no")
