"""Chow (semi)stability of polarized weighted pointed nodal curves.

A polarized curve (X, a·x; L) is tested subcurve by subcurve against

    |Φ(Y)| ≤ ℓ_Y / 2,
    Φ(Y) = (deg_L Y + Σ_{x_j∈Y} a_j/2)
           − deg ω(a·x)|_Y / deg ω(a·x) · (deg_L X + Σ_j a_j/2),

and the margin ℓ_Y/2 − |Φ(Y)| of each proper subcurve decides the verdict.
Everything is exact; the full curve is never a witness.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import product
from typing import Optional, Sequence

from config import Config
from src.models.curve import Component, MarkedPoint, Multidegree, NodalCurve, Subcurve
from src.models.rational import format_rational
from src.models.verdict import StabilityStatus, StabilityVerdict, Witness
from src.services.curve_model import (
    arithmetic_genus,
    boundary_length,
    canonical_multidegree,
    check_subcurve,
    enumerate_subcurves,
    log_omega_degree_on,
    omega_degree_on,
    twist_degrees,
    weight_on,
)
from src.services.workers import parallel_map

logger = logging.getLogger(__name__)


class ChowStabilityError(Exception):
    """Exception raised for invalid polarizations or stability requests."""

    pass


def total_log_degree(curve: NodalCurve) -> Fraction:
    """deg ω_X(a·x) = 2g − 2 + Σ a_j, required to be positive."""
    total = 2 * arithmetic_genus(curve) - 2 + curve.total_weight
    if total <= 0:
        raise ChowStabilityError(
            f"The log canonical degree must be positive, got {total}"
        )
    return total


def check_polarization(
    curve: NodalCurve, degrees: Multidegree, assert_embedding: bool = False
) -> None:
    """Degrees on every component, all positive, integral when embedding."""
    if set(degrees.degrees) != set(curve.component_ids):
        raise ChowStabilityError(
            f"Multidegree keys {sorted(degrees.degrees)} do not match components "
            f"{curve.component_ids}"
        )
    nonpositive = [cid for cid in curve.component_ids if degrees[cid] <= 0]
    if nonpositive:
        raise ChowStabilityError(
            f"The polarization must be positive on every component: {nonpositive}"
        )
    if assert_embedding and not degrees.is_integral:
        raise ChowStabilityError(
            "An embedding needs integral degrees, got "
            f"{[format_rational(value) for value in degrees.as_list(curve)]}"
        )


def chow_margin(
    curve: NodalCurve, degrees: Multidegree, subcurve: Subcurve
) -> Fraction:
    """Φ(Y); Φ(Y) = −Φ(Yᶜ) and Φ(X) = 0."""
    check_subcurve(curve, subcurve)
    total = total_log_degree(curve)
    share = log_omega_degree_on(curve, subcurve) / total
    return (degrees.on(subcurve) + weight_on(curve, subcurve) / 2) - share * (
        degrees.total + curve.total_weight / 2
    )


def _finite_witness(
    curve: NodalCurve, degrees: Multidegree, subcurve: Subcurve
) -> Witness:
    phi = chow_margin(curve, degrees, subcurve)
    ell = boundary_length(curve, subcurve)
    return Witness(
        subcurve=subcurve,
        margin=Fraction(ell, 2) - abs(phi),
        phi=phi,
        boundary=ell,
    )


def _sorted(curve: NodalCurve, witnesses: list[Witness]) -> list[Witness]:
    return sorted(witnesses, key=lambda w: (w.margin, curve.order_key(w.subcurve)))


def low_degree_threshold(curve: NodalCurve) -> Fraction:
    return Config.LOW_DEGREE_FACTOR * total_log_degree(curve)


def check_finite(
    curve: NodalCurve,
    degrees: Multidegree,
    assert_embedding: bool = False,
    threshold: Optional[Fraction] = None,
    workers: int = 1,
    limit: Optional[int] = None,
) -> StabilityVerdict:
    """Subcurve verdict for (X, a·x; L) with deg_L given by ``degrees``.

    The caveat flag marks degrees below ``threshold`` (default
    LOW_DEGREE_FACTOR·deg ω(a·x)), where the criterion is not known to apply.
    """
    total_log_degree(curve)
    check_polarization(curve, degrees, assert_embedding)
    subcurves = list(enumerate_subcurves(curve, dedup_complements=True, limit=limit))
    witnesses = parallel_map(
        partial(_finite_witness, curve, degrees), subcurves, workers
    )
    if threshold is None:
        threshold = low_degree_threshold(curve)
    verdict = StabilityVerdict.from_witnesses(
        _sorted(curve, witnesses),
        caveat_low_degree=degrees.total < threshold,
        degrees=degrees,
    )
    logger.debug(f"Finite check on {degrees.as_list(curve)}: {verdict.status.value}")
    return verdict


def _asymptotic_witness(curve: NodalCurve, subcurve: Subcurve) -> Witness:
    total = total_log_degree(curve)
    omega_total = 2 * arithmetic_genus(curve) - 2
    share = log_omega_degree_on(curve, subcurve) / total
    difference = omega_degree_on(curve, subcurve) - share * omega_total
    ell = boundary_length(curve, subcurve)
    return Witness(
        subcurve=subcurve,
        margin=Fraction(ell, 2) - abs(difference) / 2,
        phi=-difference / 2,
        boundary=ell,
    )


def check_asymptotic(
    curve: NodalCurve, workers: int = 1, limit: Optional[int] = None
) -> StabilityVerdict:
    """Verdict for ω_X^{⊗r}(r a·x), r ≫ 1; the power r cancels out."""
    total_log_degree(curve)
    subcurves = list(enumerate_subcurves(curve, dedup_complements=True, limit=limit))
    witnesses = parallel_map(partial(_asymptotic_witness, curve), subcurves, workers)
    return StabilityVerdict.from_witnesses(_sorted(curve, witnesses))


def weight_destabilizable(
    curve: NodalCurve, limit: Optional[int] = None
) -> list[Subcurve]:
    """Proper subcurves with deg(ω_X|_Y) > ℓ_Y.

    Enough total weight on the complement of such a Y makes the curve
    asymptotically unstable.
    """
    found = []
    for subcurve in enumerate_subcurves(curve, limit=limit):
        if len(subcurve) == len(curve.components):
            continue
        if omega_degree_on(curve, subcurve) > boundary_length(curve, subcurve):
            found.append(subcurve)
    return found


@dataclass(frozen=True)
class ThresholdReport:
    """Total weight beyond which the one-point union becomes unstable."""

    g1: int
    g2: int
    direct: Fraction
    paper_stated: Fraction

    @property
    def discrepancy(self) -> bool:
        return self.direct != self.paper_stated

    def to_json(self) -> dict:
        return {
            "g1": self.g1,
            "g2": self.g2,
            "direct": format_rational(self.direct),
            "paper_stated": format_rational(self.paper_stated),
            "discrepancy": self.discrepancy,
        }


def ph_threshold(g1: int, g2: int) -> ThresholdReport:
    """Both instability thresholds for X_1 ∪ X_2 with points on X_2.

    ``direct`` solves the asymptotic inequality for Y = X_1 exactly:
    (2g_1 − 1)·Σa / (2(g_1+g_2−1) + Σa) > 1  ⇔  Σa > (g_1+g_2−1)/(g_1−1).
    ``paper_stated`` is the published closed form (g_1+g_2−1)/(2(g_1−1)).
    The two differ by a factor 2; both are reported, neither is preferred.
    """
    if g1 < 2 or g2 < 1:
        raise ChowStabilityError(f"Need g1 ≥ 2 and g2 ≥ 1, got ({g1}, {g2})")
    numerator = g1 + g2 - 1
    return ThresholdReport(
        g1=g1,
        g2=g2,
        direct=Fraction(numerator, g1 - 1),
        paper_stated=Fraction(numerator, 2 * (g1 - 1)),
    )


def hyper_threshold(genus: int) -> ThresholdReport:
    """Genus-g form "Σa > (g−1)/(2g−4)": the one-point union with g_2 = 1."""
    if genus < 3:
        raise ChowStabilityError(f"Need genus ≥ 3, got {genus}")
    return ph_threshold(genus - 1, 1)


def split_weight(total: Fraction) -> list[Fraction]:
    """Split a total weight into point weights in (0,1]."""
    if total < 0:
        raise ChowStabilityError(f"Total weight must be nonnegative, got {total}")
    weights = []
    while total > 1:
        weights.append(Fraction(1))
        total -= 1
    if total > 0:
        weights.append(total)
    return weights


def ph_curve(g1: int, g2: int, weights: Sequence[Fraction] = ()) -> NodalCurve:
    """One-point union of X_1 (genus g1) and X_2 (genus g2), points on X_2."""
    if g1 < 2 or g2 < 1:
        raise ChowStabilityError(f"Need g1 ≥ 2 and g2 ≥ 1, got ({g1}, {g2})")
    points = tuple(
        MarkedPoint(on="X2", label=f"x{index + 1}", weight=Fraction(weight))
        for index, weight in enumerate(weights)
    )
    return NodalCurve(
        components=(Component("X1", g1), Component("X2", g2)),
        nodes=(("X1", "X2"),),
        points=points,
    )


def ph_scan(
    g1: int, g2: int, totals: Sequence[Fraction]
) -> list[tuple[Fraction, StabilityVerdict]]:
    """Asymptotic verdicts of the one-point union for each total weight."""
    return [
        (
            Fraction(total),
            check_asymptotic(ph_curve(g1, g2, split_weight(Fraction(total)))),
        )
        for total in totals
    ]


@dataclass(frozen=True)
class TwistConstraint:
    """−ℓ_Y/2 ≤ offset + Σ coefficients[i]·b_i ≤ ℓ_Y/2 for one subcurve."""

    subcurve: Subcurve
    coefficients: dict[str, int]
    offset: Fraction
    bound: Fraction

    def value(self, b: dict[str, int]) -> Fraction:
        return self.offset + sum(
            coefficient * b[cid] for cid, coefficient in self.coefficients.items()
        )

    def satisfied_by(self, b: dict[str, int]) -> bool:
        return abs(self.value(b)) <= self.bound


def twist_constraints(
    curve: NodalCurve, degrees: Multidegree, limit: Optional[int] = None
) -> list[TwistConstraint]:
    """Linear system in b whose solutions make L ⊗ O_X(Σ b_i X_i) semistable.

    Twisting leaves deg_L X unchanged, so Φ moves by Σ_{j∈Y} deg O(Σb_iX_i)|_j,
    which only involves the boundary nodes of Y.
    """
    check_polarization(curve, degrees)
    constraints = []
    for subcurve in enumerate_subcurves(curve, dedup_complements=True, limit=limit):
        coefficients = {cid: 0 for cid in curve.component_ids}
        for left, right in curve.nodes:
            if (left in subcurve) == (right in subcurve):
                continue
            inside, outside = (left, right) if left in subcurve else (right, left)
            coefficients[outside] += 1
            coefficients[inside] -= 1
        constraints.append(
            TwistConstraint(
                subcurve=subcurve,
                coefficients=coefficients,
                offset=chow_margin(curve, degrees, subcurve),
                bound=Fraction(boundary_length(curve, subcurve), 2),
            )
        )
    return constraints


@dataclass(frozen=True)
class TwistResult:
    b: dict[str, int]
    verdict: StabilityVerdict


def _try_twist(
    curve: NodalCurve, base: Multidegree, limit: Optional[int], values: tuple[int, ...]
) -> Optional[StabilityVerdict]:
    b = dict(zip(curve.component_ids, (0, *values)))
    twisted = base + twist_degrees(curve, b)
    if any(twisted[cid] <= 0 for cid in curve.component_ids):
        return None
    verdict = check_finite(curve, twisted, limit=limit)
    return None if verdict.status is StabilityStatus.UNSTABLE else verdict


def _shell(free: int, radius: int) -> list[tuple[int, ...]]:
    """Lattice points of sup-norm exactly ``radius``, lexicographic."""
    return [
        values
        for values in product(range(-radius, radius + 1), repeat=free)
        if max((abs(v) for v in values), default=0) == radius
    ]


def twist_search(
    curve: NodalCurve,
    r: Fraction,
    box: int,
    start: Optional[Multidegree] = None,
    workers: int = 1,
    limit: Optional[int] = None,
) -> Optional[TwistResult]:
    """Smallest integral twist b (b of the first component pinned to 0) making
    ``start`` (default the multidegree of ω^{⊗r}(r a·x)) non-unstable.

    Candidates are scanned shell by shell in sup-norm and lexicographically
    inside a shell; the result is re-checked before it is returned.
    """
    if box < 0:
        raise ChowStabilityError(f"The search box must be nonnegative, got {box}")
    base = canonical_multidegree(curve, Fraction(r)) if start is None else start
    if not base.is_integral:
        raise ChowStabilityError(
            "Twist search needs integral degrees; choose r clearing denominators, got "
            f"{[format_rational(value) for value in base.as_list(curve)]}"
        )
    check_polarization(curve, base)
    free = len(curve.components) - 1
    logger.info(f"Twist search over [-{box}, {box}]^{free}")

    for radius in range(0, box + 1):
        candidates = _shell(free, radius)
        verdicts = parallel_map(
            partial(_try_twist, curve, base, limit), candidates, workers
        )
        for values, verdict in zip(candidates, verdicts):
            if verdict is None:
                continue
            b = dict(zip(curve.component_ids, (0, *values)))
            twisted = base + twist_degrees(curve, b)
            confirmed = check_finite(curve, twisted, limit=limit)
            if confirmed.status is StabilityStatus.UNSTABLE:
                raise ChowStabilityError(f"Twist {b} failed re-verification")
            logger.info(f"Twist {b} gives {confirmed.status.value}")
            return TwistResult(b=b, verdict=confirmed)
    logger.info("No semistabilizing twist inside the box")
    return None


class ChowStabilityService:
    """Stability checks bound to the configured limits and worker count."""

    def __init__(self, subcurve_limit: int, workers: int = 1):
        self.subcurve_limit = subcurve_limit
        self.workers = workers

    def check(
        self,
        curve: NodalCurve,
        degrees: Multidegree,
        assert_embedding: bool = False,
        threshold: Optional[Fraction] = None,
    ) -> StabilityVerdict:
        return check_finite(
            curve,
            degrees,
            assert_embedding=assert_embedding,
            threshold=threshold,
            workers=self.workers,
            limit=self.subcurve_limit,
        )

    def asymptotic(self, curve: NodalCurve) -> StabilityVerdict:
        return check_asymptotic(curve, workers=self.workers, limit=self.subcurve_limit)

    def twist_search(
        self,
        curve: NodalCurve,
        r: Fraction,
        box: int,
        start: Optional[Multidegree] = None,
    ) -> Optional[TwistResult]:
        return twist_search(
            curve, r, box, start=start, workers=self.workers, limit=self.subcurve_limit
        )

    def constraints(
        self, curve: NodalCurve, degrees: Multidegree
    ) -> list[TwistConstraint]:
        return twist_constraints(curve, degrees, limit=self.subcurve_limit)

    def destabilizable(self, curve: NodalCurve) -> list[Subcurve]:
        return weight_destabilizable(curve, limit=self.subcurve_limit)


def create_chow_service(workers: Optional[int] = None) -> ChowStabilityService:
    """Factory function to create a stability service with config."""
    return ChowStabilityService(
        subcurve_limit=Config.SUBCURVE_LIMIT,
        workers=Config.PARALLEL if workers is None else workers,
    )
