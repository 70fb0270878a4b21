"""Runs the bundled corpus of commands against their expected results."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from src.models.corpus import CaseResult, CorpusCase, InvalidCorpusError

logger = logging.getLogger(__name__)


class CorpusError(Exception):
    """Exception raised when the corpus cannot be loaded or executed."""

    pass


@dataclass(frozen=True)
class CommandOutcome:
    """What a command produced: its JSON payload and exit code."""

    payload: Any
    exit_code: int


Executor = Callable[[Sequence[str]], CommandOutcome]


def compare(expected: Any, actual: Any, path: str = "$") -> list[str]:
    """Mismatches of ``actual`` against the fragment ``expected``.

    Dicts match when every expected key matches; lists and scalars must be
    equal exactly.
    """
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{path}: expected an object, got {actual!r}"]
        mismatches = []
        for key, value in expected.items():
            if key not in actual:
                mismatches.append(f"{path}.{key}: missing")
            else:
                mismatches += compare(value, actual[key], f"{path}.{key}")
        return mismatches
    if isinstance(expected, list):
        if not isinstance(actual, list) or len(actual) != len(expected):
            return [f"{path}: expected {expected!r}, got {actual!r}"]
        mismatches = []
        for index, (left, right) in enumerate(zip(expected, actual)):
            mismatches += compare(left, right, f"{path}[{index}]")
        return mismatches
    if expected != actual or type(expected) is not type(actual):
        return [f"{path}: expected {expected!r}, got {actual!r}"]
    return []


class CorpusService:
    """Loads corpus cases and runs them through an executor."""

    def __init__(self, corpus_path: Path):
        self.corpus_path = Path(corpus_path)

    @property
    def data_dir(self) -> Path:
        return self.corpus_path.parent

    def resolve(self, token: str) -> str:
        """Tokens "@relative/path" point into the corpus directory."""
        if token.startswith("@"):
            return str(self.data_dir / token[1:])
        return token

    def load(self) -> list[CorpusCase]:
        try:
            data = json.loads(self.corpus_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Failed to read corpus: {e}")
            raise CorpusError(f"Failed to read corpus {self.corpus_path}: {e}")
        try:
            cases = [CorpusCase.from_json(item) for item in data["cases"]]
        except (KeyError, TypeError, InvalidCorpusError) as e:
            raise CorpusError(f"Malformed corpus: {e}")
        ids = [case.id for case in cases]
        if len(set(ids)) != len(ids):
            raise CorpusError("Corpus case ids must be unique")
        return cases

    def run_case(self, case: CorpusCase, execute: Executor) -> CaseResult:
        outcome = execute([self.resolve(token) for token in case.command])
        mismatches = compare(case.expected, outcome.payload)
        if case.exit_code is not None and outcome.exit_code != case.exit_code:
            mismatches.append(
                f"exit code: expected {case.exit_code}, got {outcome.exit_code}"
            )
        if mismatches:
            logger.error(f"Corpus case {case.id} failed: {mismatches}")
        return CaseResult(
            case=case, passed=not mismatches, mismatches=tuple(mismatches)
        )

    def run(self, execute: Executor, only: Optional[str] = None) -> list[CaseResult]:
        cases = self.load()
        if only is not None:
            cases = [case for case in cases if case.id == only]
            if not cases:
                raise CorpusError(f"No corpus case named {only}")
        logger.info(f"Running {len(cases)} corpus cases")
        return [self.run_case(case, execute) for case in cases]


def create_corpus_service(corpus_path: Optional[Path] = None) -> CorpusService:
    """Factory function to create the corpus service with config."""
    from config import Config

    return CorpusService(Path(corpus_path or Config.CORPUS_PATH))
