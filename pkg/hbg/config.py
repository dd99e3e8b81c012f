"""
HBG - Runtime Configuration
===========================

Defaults for worker counts, search budgets and the corpus location.
Every value can be overridden by an environment variable; command-line
flags override the environment.  There are no configuration files.

    HBG_WORKERS        worker processes for homcount and derive   (1)
    HBG_LOG_LEVEL      logging level name                         (WARNING)
    HBG_CORPUS_DIR     directory holding the bundled corpus       (<repo>/corpus)
    HBG_MAX_FACTORS    derive: essential factors                  (8)
    HBG_MAX_CONJ       derive: conjugator length                  (6)
    HBG_MAX_LEN        derive: intermediate word length           (64)
    HBG_TIMEOUT        derive: seconds per target                 (60)
    HBG_MEMO_ENTRIES   derive: memo table capacity                (200000)
"""

import logging
import os
from pathlib import Path

logger = logging.getLogger(__name__)

DEFAULT_CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


def _env_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r: not an integer, using %d", name, raw, default)
        return default
    if value < minimum:
        logger.warning("Ignoring %s=%r: below %d, using %d", name, raw, minimum, default)
        return default
    return value


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r: not a number, using %s", name, raw, default)
        return default
    if value <= 0:
        logger.warning("Ignoring %s=%r: must be positive, using %s", name, raw, default)
        return default
    return value


class HbgConfig:
    """
    Process-wide defaults.

    Read once at import time into CONFIG; tests and the CLI build fresh
    instances with HbgConfig() after changing the environment.
    """

    def __init__(self):
        self.VERSION = "1.0.0"
        self.WORKERS = _env_int("HBG_WORKERS", 1, minimum=1)
        self.LOG_LEVEL = os.environ.get("HBG_LOG_LEVEL", "WARNING").upper()
        self.CORPUS_DIR = Path(os.environ.get("HBG_CORPUS_DIR") or DEFAULT_CORPUS_DIR)

        # Search budget defaults
        self.MAX_FACTORS = _env_int("HBG_MAX_FACTORS", 8, minimum=1)
        self.MAX_CONJ = _env_int("HBG_MAX_CONJ", 6)
        self.MAX_LEN = _env_int("HBG_MAX_LEN", 64, minimum=1)
        self.TIMEOUT = _env_float("HBG_TIMEOUT", 60.0)
        self.MEMO_ENTRIES = _env_int("HBG_MEMO_ENTRIES", 200_000, minimum=1)

    def budget(self):
        """SearchBudget built from the configured defaults."""
        from hbg.search.derive import SearchBudget

        return SearchBudget(
            max_factors=self.MAX_FACTORS,
            max_conjugator_length=self.MAX_CONJ,
            max_intermediate_length=self.MAX_LEN,
            time_limit=self.TIMEOUT,
            memo_entries=self.MEMO_ENTRIES,
        )

    def log_level(self) -> int:
        level = logging.getLevelName(self.LOG_LEVEL)
        return level if isinstance(level, int) else logging.WARNING

    def __repr__(self):
        return f"<HbgConfig workers={self.WORKERS} corpus={self.CORPUS_DIR} version={self.VERSION}>"


# Global configuration
CONFIG = HbgConfig()


def describe_config(config: HbgConfig = None) -> str:
    """Human-readable summary of the active defaults."""
    config = config or CONFIG
    return f"""
╔══════════════════════════════════════════════════════════════╗
║                HBG - PRESENTATION VERIFIER                   ║
╠══════════════════════════════════════════════════════════════╣
║  Version:        {config.VERSION:<44}║
║  Workers:        {config.WORKERS:<44}║
║  Log level:      {config.LOG_LEVEL:<44}║
║  Max factors:    {config.MAX_FACTORS:<44}║
║  Max conjugator: {config.MAX_CONJ:<44}║
║  Max length:     {config.MAX_LEN:<44}║
║  Time limit (s): {config.TIMEOUT:<44}║
╚══════════════════════════════════════════════════════════════╝
  Corpus: {config.CORPUS_DIR}
"""


if __name__ == "__main__":
    print(describe_config())
