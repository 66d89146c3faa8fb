import os

from dotenv import load_dotenv

# Pick up a local .env when present (deployment sets real env vars)
load_dotenv()


def _env_int(name, default):
    value = os.environ.get(name)
    if value is None or value.strip() == "":
        return default
    return int(value)


# Service identity
SERVICE_NAME = "rcop-toric"
SERVICE_VERSION = "1.0.0"

# Parallelism
THREADS = max(1, _env_int("RCOP_TORIC_THREADS", os.cpu_count() or 1))

# CLI defaults
DEFAULT_SEED = _env_int("RCOP_TORIC_SEED", 1)
DEFAULT_DEGREE_BOUND = _env_int("RCOP_TORIC_DEGREE", 3)
DEFAULT_FIBER_CAP = _env_int("RCOP_TORIC_FIBER_CAP", 5000)
DEFAULT_TRIALS = _env_int("RCOP_TORIC_TRIALS", 10)

# Search limits
GROUP_CLOSURE_CEILING = _env_int("RCOP_TORIC_GROUP_CEILING", 10**6)
AUDIT_MAX_VERTICES = _env_int("RCOP_TORIC_AUDIT_MAX_VERTICES", 40)

# Concentration sampling
SINGULAR_RETRY_BUDGET = 8
SAMPLE_MAX_DENOMINATOR = 1000
DIAGONAL_OFFSET_DENOMINATOR = 97

# Completion colors
COMPLETION_COLOR_PREFIX = "cmp:"
COMPLETION_HASH_LENGTH = 12

# Diagnostics
LOG_LEVEL = os.environ.get("RCOP_TORIC_LOG_LEVEL", "info").lower()
