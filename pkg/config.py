"""Configuration module reading limits and defaults from the environment."""

import logging
import os
import sys
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

DATA_DIR = Path(__file__).resolve().parent / "src" / "data"


class ConfigError(Exception):
    """Exception raised for configuration errors."""

    pass


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")


class Config:
    """Configuration class for the stability toolkit."""

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Enumeration and search limits
    SUBCURVE_LIMIT: int = _int_env("SUBCURVE_LIMIT", 24)
    TWIST_BOX: int = _int_env("TWIST_BOX", 5)
    LOW_DEGREE_FACTOR: int = _int_env("LOW_DEGREE_FACTOR", 2)
    HM_LATTICE_RADIUS: int = _int_env("HM_LATTICE_RADIUS", 5)

    # Random harnesses
    CH0_TRIALS: int = _int_env("CH0_TRIALS", 200)
    DEFAULT_SEED: int = _int_env("DEFAULT_SEED", 7)

    # Worker pool
    PARALLEL: int = _int_env("PARALLEL", 1)

    # Bundled corpus
    CORPUS_PATH: str = os.getenv("CORPUS_PATH", str(DATA_DIR / "corpus.json"))

    @classmethod
    def validate(cls) -> bool:
        """Validate limits and the corpus location."""
        invalid = []

        for name in ("SUBCURVE_LIMIT", "LOW_DEGREE_FACTOR", "CH0_TRIALS", "PARALLEL"):
            if getattr(cls, name) < 1:
                invalid.append(f"{name} must be positive")
        for name in ("TWIST_BOX", "HM_LATTICE_RADIUS"):
            if getattr(cls, name) < 0:
                invalid.append(f"{name} must be nonnegative")
        if not Path(cls.CORPUS_PATH).exists():
            invalid.append(f"CORPUS_PATH {cls.CORPUS_PATH} does not exist")

        if invalid:
            raise ConfigError(
                f"Invalid configuration: {'; '.join(invalid)}\n"
                f"Please check your .env file or environment variables."
            )

        return True

    @classmethod
    def setup_logging(cls) -> None:
        """Setup logging configuration; logs go to stderr, results to stdout."""
        logging.basicConfig(
            level=getattr(logging, cls.LOG_LEVEL.upper(), logging.INFO),
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
            stream=sys.stderr,
        )
