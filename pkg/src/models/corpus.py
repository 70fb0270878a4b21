"""Corpus cases: commands with expected results and their provenance."""

from dataclasses import dataclass, field
from typing import Any, Optional

PROVENANCE_KINDS = ("PAPER", "TRIVIAL", "DERIVED")


class InvalidCorpusError(Exception):
    """Exception raised for malformed corpus files."""

    pass


@dataclass(frozen=True)
class CorpusCase:
    id: str
    command: tuple[str, ...]
    expected: dict[str, Any]
    provenance: str
    citation: str
    exit_code: Optional[int] = None

    @classmethod
    def from_json(cls, data: dict) -> "CorpusCase":
        try:
            provenance = data["provenance"]
            case = cls(
                id=str(data["id"]),
                command=tuple(str(token) for token in data["command"]),
                expected=dict(data["expected"]),
                provenance=str(provenance["kind"]),
                citation=str(provenance.get("citation", "")),
                exit_code=data.get("exit_code"),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidCorpusError(f"Malformed corpus case {data!r}: {e}")
        if case.provenance not in PROVENANCE_KINDS:
            raise InvalidCorpusError(
                f"Case {case.id}: provenance must be one of {PROVENANCE_KINDS}"
            )
        if case.provenance == "PAPER" and not case.citation:
            raise InvalidCorpusError(f"Case {case.id}: PAPER cases need a citation")
        return case


@dataclass(frozen=True)
class CaseResult:
    case: CorpusCase
    passed: bool
    mismatches: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "id": self.case.id,
            "provenance": self.case.provenance,
            "passed": self.passed,
            "mismatches": list(self.mismatches),
        }
