"""Degree bookkeeping on weighted pointed nodal curves."""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Literal, Mapping

from config import Config
from src.models.curve import Multidegree, NodalCurve, Subcurve

logger = logging.getLogger(__name__)


class CurveModelError(Exception):
    """Exception raised for invalid subcurve or degree requests."""

    pass


class SubcurveLimitError(CurveModelError):
    """Exception raised when subcurve enumeration exceeds the size limit."""

    pass


def check_subcurve(curve: NodalCurve, subcurve: Subcurve) -> None:
    """Reject empty subcurves and unknown component ids."""
    if not subcurve.members:
        raise CurveModelError("A subcurve needs at least one component")
    unknown = subcurve.members - set(curve.component_ids)
    if unknown:
        raise CurveModelError(f"Unknown component ids: {sorted(unknown)}")


def complement(curve: NodalCurve, subcurve: Subcurve) -> frozenset[str]:
    """Component ids of Yᶜ; empty when Y is the whole curve."""
    check_subcurve(curve, subcurve)
    return frozenset(curve.component_ids) - subcurve.members


def arithmetic_genus(curve: NodalCurve) -> int:
    """g = Σ g_i + #nodes − #components + 1."""
    return (
        sum(component.genus for component in curve.components)
        + len(curve.nodes)
        - len(curve.components)
        + 1
    )


def boundary_length(curve: NodalCurve, subcurve: Subcurve) -> int:
    """ℓ_Y: nodes with exactly one branch on Y."""
    check_subcurve(curve, subcurve)
    return sum(
        1 for left, right in curve.nodes if (left in subcurve) != (right in subcurve)
    )


def internal_nodes(curve: NodalCurve, subcurve: Subcurve) -> int:
    """Nodes with both branches on Y, self-nodes included."""
    return sum(
        1 for left, right in curve.nodes if left in subcurve and right in subcurve
    )


def omega_degree_on(curve: NodalCurve, subcurve: Subcurve) -> int:
    """deg(ω_X|_Y) = Σ (2g_i − 2) + 2·#internal nodes + ℓ_Y."""
    check_subcurve(curve, subcurve)
    return (
        sum(2 * curve.genus_of(cid) - 2 for cid in subcurve.members)
        + 2 * internal_nodes(curve, subcurve)
        + boundary_length(curve, subcurve)
    )


def component_omega_degree(curve: NodalCurve, component_id: str) -> int:
    return omega_degree_on(curve, Subcurve.of(component_id))


def weight_on(curve: NodalCurve, subcurve: Subcurve) -> Fraction:
    points = curve.points_on(subcurve.members)
    return sum((point.weight for point in points), Fraction(0))


def log_omega_degree_on(
    curve: NodalCurve,
    subcurve: Subcurve,
    which: Literal["plain", "with_weights"] = "with_weights",
) -> Fraction:
    """deg(ω_X(a·x)|_Y), or deg(ω_X|_Y) when which is "plain"."""
    degree = Fraction(omega_degree_on(curve, subcurve))
    if which == "with_weights":
        degree += weight_on(curve, subcurve)
    elif which != "plain":
        raise CurveModelError(f"Unknown degree flavour: {which}")
    return degree


def canonical_multidegree(curve: NodalCurve, r: Fraction) -> Multidegree:
    """Multidegree of ω_X^{⊗r}(r a·x)."""
    if r <= 0:
        raise CurveModelError(f"The power r must be positive, got {r}")
    log_canonical = Multidegree(
        {
            cid: log_omega_degree_on(curve, Subcurve.of(cid))
            for cid in curve.component_ids
        }
    )
    return log_canonical.scaled(r)


def twist_degrees(curve: NodalCurve, b: Mapping[str, int]) -> Multidegree:
    """Multidegree of O_X(Σ b_i X_i): component j ↦ Σ_{i≠j} n_ij (b_i − b_j)."""
    missing = set(curve.component_ids) - set(b)
    if missing:
        raise CurveModelError(f"Twist coefficients missing for {sorted(missing)}")
    degrees = {cid: Fraction(0) for cid in curve.component_ids}
    for left, right in curve.nodes:
        if left == right:
            continue
        degrees[left] += b[right] - b[left]
        degrees[right] += b[left] - b[right]
    return Multidegree(degrees)


def enumerate_subcurves(
    curve: NodalCurve, dedup_complements: bool = False, limit: int | None = None
) -> Iterator[Subcurve]:
    """Yield nonempty subcurves by size, then in component order.

    With dedup_complements only proper subcurves containing the first
    component are produced, one per complement pair.
    """
    limit = Config.SUBCURVE_LIMIT if limit is None else limit
    ids = curve.component_ids
    if len(ids) > limit:
        raise SubcurveLimitError(
            f"{len(ids)} components exceed the subcurve enumeration limit {limit}"
        )
    logger.debug(f"Enumerating subcurves of a {len(ids)}-component curve")

    if dedup_complements:
        first, rest = ids[0], ids[1:]
        for size in range(0, len(rest)):
            for chosen in combinations(rest, size):
                yield Subcurve(frozenset((first, *chosen)))
        return

    for size in range(1, len(ids) + 1):
        for chosen in combinations(ids, size):
            yield Subcurve(frozenset(chosen))
