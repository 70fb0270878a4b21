"""Stability verdicts for polarized weighted pointed curves."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from src.models.curve import Multidegree, NodalCurve, Subcurve
from src.models.rational import format_rational


class StabilityStatus(str, Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    UNSTABLE = "unstable"

    @property
    def is_semistable(self) -> bool:
        return self is not StabilityStatus.UNSTABLE


@dataclass(frozen=True)
class Witness:
    """One subcurve with its margin ℓ_Y/2 − |Φ(Y)|."""

    subcurve: Subcurve
    margin: Fraction
    phi: Fraction
    boundary: int


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of a subcurve-inequality check.

    ``witnesses`` is sorted by margin, then by component order; the full
    curve is never a witness, so an irreducible curve is vacuously stable
    with ``worst_margin`` None.
    """

    status: StabilityStatus
    witnesses: tuple[Witness, ...] = ()
    worst_margin: Optional[Fraction] = None
    caveat_low_degree: bool = False
    degrees: Optional[Multidegree] = None

    @classmethod
    def from_witnesses(
        cls,
        witnesses: list[Witness],
        caveat_low_degree: bool = False,
        degrees: Optional[Multidegree] = None,
    ) -> "StabilityVerdict":
        if not witnesses:
            return cls(
                StabilityStatus.STABLE,
                caveat_low_degree=caveat_low_degree,
                degrees=degrees,
            )
        worst = min(witness.margin for witness in witnesses)
        if worst < 0:
            status = StabilityStatus.UNSTABLE
        elif worst == 0:
            status = StabilityStatus.STRICTLY_SEMISTABLE
        else:
            status = StabilityStatus.STABLE
        return cls(
            status=status,
            witnesses=tuple(witnesses),
            worst_margin=worst,
            caveat_low_degree=caveat_low_degree,
            degrees=degrees,
        )

    def to_json(self, curve: NodalCurve) -> dict:
        payload = {
            "status": self.status.value,
            "worst_margin": (
                None
                if self.worst_margin is None
                else format_rational(self.worst_margin)
            ),
            "caveat_low_degree": self.caveat_low_degree,
            "witnesses": [
                {
                    "subcurve": curve.sorted_members(witness.subcurve),
                    "margin": format_rational(witness.margin),
                    "phi": format_rational(witness.phi),
                    "boundary": witness.boundary,
                }
                for witness in self.witnesses
            ],
        }
        if self.degrees is not None:
            payload["degrees"] = self.degrees.to_json(curve)
        return payload
