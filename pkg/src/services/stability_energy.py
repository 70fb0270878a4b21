"""Donaldson–Futaki invariants and geometric heights from intersection numbers.

Total spaces are never modelled: every quantity is an exact rational
computed from intersection numbers supplied by the caller. Heights use the
un-normalized convention, so only signs and ratios are meaningful.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import sympy

from src.models.family import (
    FamilyIntersections,
    HeightPolynomial,
    PushforwardPolynomial,
)
from src.models.rational import RationalLike, format_rational, parse_rational

logger = logging.getLogger(__name__)


class StabilityEnergyError(Exception):
    """Exception raised for inconsistent family data."""

    pass


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value: sympy.Expr) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def linearization_constant(n: int) -> Fraction:
    """c_n = (n + 1)/(2n), the log-Chow weight of the boundary."""
    return Fraction(n + 1, 2 * n)


def mu_slope(f: FamilyIntersections) -> Fraction:
    """μ = L^{n−1}·(K_X + D) / L^n on a fiber."""
    if f.fiber_Ln == 0:
        raise StabilityEnergyError("Slope of a zero fiber degree")
    return f.fiber_Ln1K / f.fiber_Ln


def df_invariant(f: FamilyIntersections) -> Fraction:
    """(n + 1)·L^n·(K_{X/B} + D) − n·μ·L^{n+1}; homogeneous of degree n in L."""
    return (f.n + 1) * f.LnK - f.n * mu_slope(f) * f.Lnp1


Scalar = Union[Fraction, sympy.Expr]


def _height_expression(
    n: int,
    n_plus_1: Scalar,
    Lnp1: Scalar,
    fiber_Ln: Scalar,
    degdet: Scalar,
    boundary: Sequence[tuple[Scalar, Scalar, Scalar]],
) -> Scalar:
    """Height as a ring expression; shared by exact values and polynomials in k."""
    c_n = linearization_constant(n)
    c_n = _to_sympy(c_n) if isinstance(n_plus_1, sympy.Expr) else c_n
    value = n_plus_1 * Lnp1 - (n + 1) * fiber_Ln * degdet
    for a, LDi_n, fiber_di in boundary:
        value += c_n * a * (n_plus_1 * LDi_n - n * fiber_di * degdet)
    return value


def geometric_height(f: FamilyIntersections, N: int, degdet: RationalLike) -> Fraction:
    """(N+1)·L^{n+1} − (n+1)·deg X·deg det
    + c_n·Σ a_i[(N+1)·L^n·D_i − n·d_i·deg det].

    The pulled-back class of the base squares to zero, which turns the
    bracket powers of the log-Chow line into these linear terms.
    """
    if N < 1:
        raise StabilityEnergyError(f"N must be a positive integer, got {N}")
    return _height_expression(
        f.n,
        Fraction(N + 1),
        f.Lnp1,
        f.fiber_Ln,
        parse_rational(degdet),
        [(item.a, item.LDi_n, item.fiber_di) for item in f.boundary],
    )


def grr_pushforward(
    L2: RationalLike, Lomega: RationalLike, deg_lambda: RationalLike = 0
) -> PushforwardPolynomial:
    """D(k) = ½(k²·L² − k·L·ω_{X/B}) + deg λ for a curve fibration."""
    return PushforwardPolynomial(
        (
            parse_rational(deg_lambda),
            -parse_rational(Lomega) / 2,
            parse_rational(L2) / 2,
        )
    )


def family_pushforward(
    f: FamilyIntersections, deg_lambda: RationalLike = 0
) -> PushforwardPolynomial:
    """GRR pushforward with L·ω_{X/B} = L·(K_{X/B} + D) − Σ a_i·L·D_i."""
    return grr_pushforward(f.Lnp1, f.LnK - f.boundary_LDn, deg_lambda)


def check_curve_family(f: FamilyIntersections, genus: int) -> None:
    if f.n != 1:
        raise StabilityEnergyError(f"Height polynomials need n = 1, got n = {f.n}")
    expected = 2 * genus - 2 + f.boundary_weight
    if f.fiber_Ln1K != expected:
        raise StabilityEnergyError(
            f"Inconsistent degrees: fiber log degree {f.fiber_Ln1K} differs from "
            f"2g − 2 + Σ a_i d_i = {expected}"
        )


def height_polynomial(
    f: FamilyIntersections, genus: int, pushforward: PushforwardPolynomial
) -> HeightPolynomial:
    """h(k) for the polarization L^k of a curve family, as an exact polynomial.

    N_k + 1 is the Hilbert polynomial d·k + 1 − g (higher cohomology assumed
    to vanish).
    """
    check_curve_family(f, genus)
    if pushforward.degree > 2:
        raise StabilityEnergyError(
            f"Inconsistent degrees: D(k) has degree {pushforward.degree} > 2"
        )
    k = sympy.Symbol("k")
    d = _to_sympy(f.fiber_Ln)
    degdet = sum(
        (_to_sympy(c) * k**j for j, c in enumerate(pushforward.coefficients)),
        sympy.Integer(0),
    )
    expression = _height_expression(
        1,
        d * k + 1 - genus,
        k**2 * _to_sympy(f.Lnp1),
        k * d,
        degdet,
        [
            (_to_sympy(item.a), k * _to_sympy(item.LDi_n), _to_sympy(item.fiber_di))
            for item in f.boundary
        ],
    )
    poly = sympy.Poly(sympy.expand(expression), k, domain=sympy.QQ)
    coefficients = [_from_sympy(poly.coeff_monomial(k**j)) for j in range(4)]
    logger.debug(f"Height polynomial coefficients: {coefficients}")
    return HeightPolynomial(tuple(coefficients))


@dataclass(frozen=True)
class LeadingTermReport:
    """k³ and k² coefficients of h(k) against (deg X / 2)·DF."""

    cubic: Fraction
    quadratic: Fraction
    expected_quadratic: Fraction
    df: Fraction

    @property
    def holds(self) -> bool:
        return self.cubic == 0 and self.quadratic == self.expected_quadratic

    def to_json(self) -> dict:
        return {
            "cubic": format_rational(self.cubic),
            "quadratic": format_rational(self.quadratic),
            "expected_quadratic": format_rational(self.expected_quadratic),
            "df": format_rational(self.df),
            "holds": self.holds,
        }


def check_leading(
    f: FamilyIntersections,
    genus: int,
    pushforward: Optional[PushforwardPolynomial] = None,
) -> LeadingTermReport:
    """Leading-term identity h(k) = (deg X/2)·DF·k² + O(k) for curve families."""
    if pushforward is None:
        pushforward = family_pushforward(f)
    height = height_polynomial(f, genus, pushforward)
    df = df_invariant(f)
    report = LeadingTermReport(
        cubic=height.coefficient(3),
        quadratic=height.coefficient(2),
        expected_quadratic=f.fiber_Ln / 2 * df,
        df=df,
    )
    logger.info(f"Leading-term identity holds: {report.holds}")
    return report
