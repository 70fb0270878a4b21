"""Diagonal torus actions on projective space and sections of split bundles."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from src.models.rational import RationalFormatError, format_rational, parse_rational


class InvalidTorusDataError(Exception):
    """Exception raised for malformed torus problems, points or sections."""

    pass


@dataclass(frozen=True)
class TorusProblem:
    """A rank-t torus acting on coordinate z_i through the character χ_i.

    ``raw_characters`` are the characters as given; ``characters`` are the
    SL-normalized ones, s·(χ_i − mean) with s the least integer clearing the
    mean, so they sum to zero.
    """

    raw_characters: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.raw_characters:
            raise InvalidTorusDataError("A torus problem needs at least one character")
        rank = len(self.raw_characters[0])
        if rank < 1 or any(len(chi) != rank for chi in self.raw_characters):
            raise InvalidTorusDataError(
                "All characters must have the same positive length: "
                f"{self.raw_characters}"
            )

    @property
    def rank(self) -> int:
        return len(self.raw_characters[0])

    @property
    def size(self) -> int:
        """N + 1, the number of homogeneous coordinates."""
        return len(self.raw_characters)

    @cached_property
    def mean(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(sum(chi[j] for chi in self.raw_characters), self.size)
            for j in range(self.rank)
        )

    @cached_property
    def scale(self) -> int:
        return lcm(*(value.denominator for value in self.mean))

    @cached_property
    def characters(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(
                int(self.scale * (chi[j] - self.mean[j])) for j in range(self.rank)
            )
            for chi in self.raw_characters
        )

    @classmethod
    def of(cls, *characters) -> "TorusProblem":
        return cls(
            tuple(
                (int(chi),) if isinstance(chi, int) else tuple(int(v) for v in chi)
                for chi in characters
            )
        )

    def to_json(self) -> dict:
        return {
            "raw_characters": [list(chi) for chi in self.raw_characters],
            "characters": [list(chi) for chi in self.characters],
            "scale": self.scale,
        }


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^N; only its support enters weights and verdicts."""

    coordinates: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not any(self.coordinates):
            raise InvalidTorusDataError("A projective point needs a nonzero coordinate")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, value in enumerate(self.coordinates) if value != 0)

    @classmethod
    def from_support(cls, size: int, support) -> "ProjectivePoint":
        chosen = set(support)
        if not chosen or not chosen <= set(range(size)):
            raise InvalidTorusDataError(
                f"Support {sorted(chosen)} is not a nonempty subset of 0..{size - 1}"
            )
        return cls(tuple(Fraction(int(i in chosen)) for i in range(size)))


@dataclass(frozen=True)
class FamilySection:
    """A section of P(⊕ O(e_i)) over the projective line, e_i = ⟨γ, χ_i⟩.

    ``polynomials[i]`` lists the coefficients of f_i in the affine parameter
    u, constant term first; ``degree`` is the total degree c.
    """

    cocycle: tuple[int, ...]
    polynomials: tuple[tuple[Fraction, ...], ...]
    degree: int

    def __post_init__(self) -> None:
        if not any(any(c != 0 for c in f) for f in self.polynomials):
            raise InvalidTorusDataError(
                "A section needs a nonzero coordinate polynomial"
            )

    @classmethod
    def from_json(cls, data: dict) -> tuple[TorusProblem, "FamilySection"]:
        """Read a torus problem together with a section of its split bundle."""
        try:
            problem = TorusProblem.of(*data["characters"])
            section = cls(
                cocycle=tuple(int(v) for v in data.get("cocycle", [0] * problem.rank)),
                polynomials=tuple(
                    tuple(parse_rational(c) for c in f) for f in data["polynomials"]
                ),
                degree=int(data["degree"]),
            )
        except (KeyError, TypeError, ValueError, RationalFormatError) as e:
            raise InvalidTorusDataError(f"Malformed section data: {e}")
        return problem, section

    def to_json(self) -> dict:
        return {
            "cocycle": list(self.cocycle),
            "polynomials": [[format_rational(c) for c in f] for f in self.polynomials],
            "degree": self.degree,
        }
