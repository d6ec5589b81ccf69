"""SPARSEFIT configuration: loads settings from .env file."""

import os
import sys
from pathlib import Path

from dotenv import load_dotenv
from loguru import logger

# Project root
ROOT_DIR = Path(__file__).parent.parent
DATA_DIR = ROOT_DIR / "data"
DATA_DIR.mkdir(exist_ok=True)

# Load .env
load_dotenv(ROOT_DIR / ".env")


def _env_flag(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("true", "1", "yes")


# Logging
LOG_LEVEL = os.getenv("SPARSEFIT_LOG_LEVEL", "INFO").upper()
LOG_FILE_ENABLED = _env_flag("SPARSEFIT_LOG_FILE", "true")

logger.remove()
logger.add(sys.stderr, level=LOG_LEVEL)
if LOG_FILE_ENABLED:
    logger.add(DATA_DIR / "sparsefit.log", rotation="1 MB", retention="7 days", level="INFO")

# Run outputs
OUTPUT_DIR = Path(os.getenv("SPARSEFIT_OUTPUT_DIR", str(DATA_DIR / "runs")))

# NNLS solver
NNLS_ZERO_TOL = float(os.getenv("SPARSEFIT_ZERO_TOL", "1e-12"))  # relative to max coefficient
NNLS_KKT_TOL = float(os.getenv("SPARSEFIT_KKT_TOL", "1e-10"))  # relative to ||A^T b||_inf
DEFAULT_MAX_OUTER = int(os.getenv("SPARSEFIT_MAX_OUTER", "500"))
RESIDUAL_SLACK = 1e-10

# Pivoted QR rank cut, relative to |R[0, 0]|
QR_RANK_RCOND = 1e-13

# Output formatting (matches the "1.263660e-04" style of published tables)
CSV_FLOAT_FORMAT = ".6e"
