"""Intersection data of polarized families over a curve."""

from dataclasses import dataclass
from fractions import Fraction

from src.models.rational import (
    RationalFormatError,
    RationalLike,
    format_rational,
    parse_rational,
)


class InvalidFamilyError(Exception):
    """Exception raised for malformed family intersection data."""

    pass


@dataclass(frozen=True)
class BoundaryIntersection:
    """A boundary divisor D_i with coefficient a_i.

    ``LDi_n`` is (L|_{D_i})^n on the total space, ``fiber_di`` the degree of
    L|_{D_i} on a fiber (the number of points when D_i is a section of a
    curve family).
    """

    a: Fraction
    LDi_n: Fraction
    fiber_di: Fraction


@dataclass(frozen=True)
class FamilyIntersections:
    n: int
    Lnp1: Fraction
    LnK: Fraction
    fiber_Ln: Fraction
    fiber_Ln1K: Fraction
    boundary: tuple[BoundaryIntersection, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidFamilyError(f"Fiber dimension must be ≥ 1, got {self.n}")
        if self.fiber_Ln <= 0:
            raise InvalidFamilyError(
                f"Fiber degree must be positive, got {self.fiber_Ln}"
            )
        for item in self.boundary:
            if not 0 < item.a <= 1:
                raise InvalidFamilyError(
                    f"Coefficients must lie in (0,1], got {item.a}"
                )

    @property
    def boundary_weight(self) -> Fraction:
        """Σ a_i·fiber_di, the boundary part of the fiber log degree."""
        return sum((item.a * item.fiber_di for item in self.boundary), Fraction(0))

    @property
    def boundary_LDn(self) -> Fraction:
        """Σ a_i·(L|_{D_i})^n."""
        return sum((item.a * item.LDi_n for item in self.boundary), Fraction(0))

    def scaled(self, t: RationalLike) -> "FamilyIntersections":
        """Intersection numbers of the polarization tL."""
        t = parse_rational(t)
        n = self.n
        return FamilyIntersections(
            n=n,
            Lnp1=t ** (n + 1) * self.Lnp1,
            LnK=t**n * self.LnK,
            fiber_Ln=t**n * self.fiber_Ln,
            fiber_Ln1K=t ** (n - 1) * self.fiber_Ln1K,
            boundary=tuple(
                BoundaryIntersection(
                    a=item.a,
                    LDi_n=t**n * item.LDi_n,
                    fiber_di=t ** (n - 1) * item.fiber_di,
                )
                for item in self.boundary
            ),
        )

    @classmethod
    def from_json(cls, data: dict) -> "FamilyIntersections":
        try:
            return cls(
                n=int(data.get("n", 1)),
                Lnp1=parse_rational(data["Lnp1"]),
                LnK=parse_rational(data["LnK"]),
                fiber_Ln=parse_rational(data["fiber_Ln"]),
                fiber_Ln1K=parse_rational(data["fiber_Ln1K"]),
                boundary=tuple(
                    BoundaryIntersection(
                        a=parse_rational(item["a"]),
                        LDi_n=parse_rational(item["LDi_n"]),
                        fiber_di=parse_rational(item.get("fiber_di", 1)),
                    )
                    for item in data.get("boundary", [])
                ),
            )
        except (KeyError, TypeError, ValueError, RationalFormatError) as e:
            raise InvalidFamilyError(f"Malformed family data: {e}")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "Lnp1": format_rational(self.Lnp1),
            "LnK": format_rational(self.LnK),
            "fiber_Ln": format_rational(self.fiber_Ln),
            "fiber_Ln1K": format_rational(self.fiber_Ln1K),
            "boundary": [
                {
                    "a": format_rational(item.a),
                    "LDi_n": format_rational(item.LDi_n),
                    "fiber_di": format_rational(item.fiber_di),
                }
                for item in self.boundary
            ],
        }


@dataclass(frozen=True)
class KPolynomial:
    """Polynomial in the power k; ``coefficients[j]`` multiplies k^j."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        nonzero = [j for j, c in enumerate(self.coefficients) if c != 0]
        return max(nonzero, default=0)

    def coefficient(self, power: int) -> Fraction:
        if power < len(self.coefficients):
            return self.coefficients[power]
        return Fraction(0)

    def evaluate(self, k: RationalLike) -> Fraction:
        k = parse_rational(k)
        return sum((c * k**j for j, c in enumerate(self.coefficients)), Fraction(0))

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]


@dataclass(frozen=True)
class PushforwardPolynomial(KPolynomial):
    """D(k) = deg det π_*(L^k)."""


@dataclass(frozen=True)
class HeightPolynomial(KPolynomial):
    """h(k), the geometric height of the polarization L^k."""
