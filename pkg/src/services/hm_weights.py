"""Hilbert–Mumford weights for diagonal actions and heights of sections.

Sign convention: w_z(λ) = −min{⟨λ, χ_i⟩ : z_i ≠ 0} on SL-normalized
characters, so z is semistable iff w_z(λ) ≥ 0 for every λ, iff 0 lies in
the convex hull of the characters on the support of z.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial, reduce
from itertools import product
from math import gcd, lcm
from typing import Optional, Sequence

import sympy
from sympy.solvers.simplex import lpmax

from config import Config
from src.models.rational import format_rational
from src.models.torus import FamilySection, ProjectivePoint, TorusProblem
from src.services.workers import parallel_map

logger = logging.getLogger(__name__)

U = sympy.Symbol("u")


class TorusWeightError(Exception):
    """Exception raised for inconsistent weight or section requests."""

    pass


def _pairing(left: Sequence[int], right: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(left, right))


def _check_point(p: TorusProblem, z: ProjectivePoint) -> None:
    if len(z.coordinates) != p.size:
        raise TorusWeightError(
            f"Point has {len(z.coordinates)} coordinates, the action has {p.size}"
        )


def one_ps_weight(p: TorusProblem, z: ProjectivePoint, lam: Sequence[int]) -> int:
    """w_z(λ) = −min ⟨λ, χ_i⟩ over the support of z."""
    _check_point(p, z)
    if len(lam) != p.rank:
        raise TorusWeightError(f"λ has length {len(lam)}, the torus has rank {p.rank}")
    return -min(_pairing(lam, p.characters[i]) for i in z.support)


@dataclass(frozen=True)
class SemistabilityResult:
    semistable: bool
    destabilizing: Optional[tuple[int, ...]] = None
    weight: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "semistable": self.semistable,
            "lambda": None if self.destabilizing is None else list(self.destabilizing),
            "weight": self.weight,
        }


def _primitive(values: Sequence[Fraction]) -> tuple[int, ...]:
    scale = lcm(*(value.denominator for value in values))
    integers = [int(value * scale) for value in values]
    divisor = reduce(gcd, integers, 0) or 1
    return tuple(value // divisor for value in integers)


def is_semistable(p: TorusProblem, z: ProjectivePoint) -> SemistabilityResult:
    """Exact hull membership via one rational LP.

    Maximize s subject to ⟨λ, χ_i⟩ ≥ s on the support and
    −1 ≤ λ_j, s ≤ 1; s > 0 exactly when some λ pairs positively with
    every supported character. Variables are shifted to be nonnegative.
    A zero character on the support and rank one are decided without the LP.
    """
    _check_point(p, z)
    supported = [p.characters[i] for i in z.support]
    if any(all(c == 0 for c in chi) for chi in supported):
        return SemistabilityResult(semistable=True)
    if p.rank == 1:
        values = [chi[0] for chi in supported]
        if min(values) <= 0 <= max(values):
            return SemistabilityResult(semistable=True)
        direction = (1,) if min(values) > 0 else (-1,)
        weight = one_ps_weight(p, z, direction)
        return SemistabilityResult(
            semistable=False, destabilizing=direction, weight=weight
        )

    shifted = sympy.symbols(f"u0:{p.rank}")
    slack = sympy.Symbol("v")
    lam = [u - 1 for u in shifted]
    constraints = [slack >= 0, slack <= 2]
    for u in shifted:
        constraints += [u >= 0, u <= 2]
    for i in z.support:
        chi = p.characters[i]
        constraints.append(sum(c * l for c, l in zip(chi, lam)) >= slack - 1)
    optimum, solution = lpmax(slack, constraints)
    best = Fraction(int(sympy.Rational(optimum).p), int(sympy.Rational(optimum).q)) - 1
    if best <= 0:
        return SemistabilityResult(semistable=True)

    values = [
        Fraction(int(sympy.Rational(solution[u]).p), int(sympy.Rational(solution[u]).q))
        - 1
        for u in shifted
    ]
    direction = _primitive(values)
    weight = one_ps_weight(p, z, direction)
    if weight >= 0:
        raise TorusWeightError(f"LP direction {direction} does not destabilize")
    logger.debug(f"Support {z.support} destabilized by λ={direction}, w={weight}")
    return SemistabilityResult(semistable=False, destabilizing=direction, weight=weight)


def bounded_lattice_verdict(
    p: TorusProblem, z: ProjectivePoint, radius: Optional[int] = None
) -> bool:
    """min over λ ∈ [−radius, radius]^t of w_z(λ) ≥ 0."""
    if radius is None:
        radius = Config.HM_LATTICE_RADIUS
    return all(
        one_ps_weight(p, z, lam) >= 0
        for lam in product(range(-radius, radius + 1), repeat=p.rank)
    )


def twist_weights(p: TorusProblem, s: FamilySection) -> list[int]:
    """e_i = ⟨γ, χ_i⟩ on the raw characters."""
    if len(s.cocycle) != p.rank:
        raise TorusWeightError(
            f"Cocycle has length {len(s.cocycle)}, the torus has rank {p.rank}"
        )
    return [_pairing(s.cocycle, chi) for chi in p.raw_characters]


def _poly(coefficients: Sequence[Fraction]) -> sympy.Poly:
    expression = sum(
        (
            sympy.Rational(c.numerator, c.denominator) * U**j
            for j, c in enumerate(coefficients)
        ),
        sympy.Integer(0),
    )
    return sympy.Poly(expression, U, domain=sympy.QQ)


@dataclass(frozen=True)
class ReducedSection:
    """Coordinate polynomials after removing their common factor.

    ``infinity_order`` is the common vanishing order of the homogenized
    coordinates at u = ∞; the declared degree keeps it, so the height of a
    section with a base point at infinity exceeds the intrinsic one by
    (N + 1)·infinity_order.
    """

    polynomials: tuple[sympy.Poly, ...]
    degree: int
    removed_degree: int
    twists: tuple[int, ...]
    infinity_order: int


def reduce_section(p: TorusProblem, s: FamilySection) -> ReducedSection:
    if len(s.polynomials) != p.size:
        raise TorusWeightError(
            f"Section has {len(s.polynomials)} coordinates, the action has {p.size}"
        )
    twists = twist_weights(p, s)
    polys = [_poly(f) for f in s.polynomials]
    nonzero = [f for f in polys if not f.is_zero]
    if not nonzero:
        raise TorusWeightError("The all-zero section has no height")
    for index, (f, e) in enumerate(zip(polys, twists)):
        if not f.is_zero and f.degree() > s.degree - e:
            raise TorusWeightError(
                f"deg f_{index} = {f.degree()} exceeds c − e_{index} = {s.degree - e}"
            )
    common = reduce(lambda left, right: left.gcd(right), nonzero)
    removed = common.degree()
    reduced = tuple(f if f.is_zero else f.exquo(common) for f in polys)
    degree = s.degree - removed
    return ReducedSection(
        polynomials=reduced,
        degree=degree,
        removed_degree=removed,
        twists=tuple(twists),
        infinity_order=min(
            degree - e - f.degree() for f, e in zip(reduced, twists) if not f.is_zero
        ),
    )


def section_height(p: TorusProblem, s: FamilySection) -> int:
    """(N + 1)·c − Σ e_i after removing the base locus of the section."""
    reduced = reduce_section(p, s)
    return p.size * reduced.degree - sum(reduced.twists)


@dataclass(frozen=True)
class FiberVerdict:
    kind: str
    location: str
    support: tuple[int, ...]
    semistable: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "location": self.location,
            "support": list(self.support),
            "semistable": self.semistable,
        }


@lru_cache(maxsize=4096)
def _support_semistable(p: TorusProblem, support: frozenset[int]) -> bool:
    point = ProjectivePoint.from_support(p.size, sorted(support))
    return is_semistable(p, point).semistable


def _support_verdict(p: TorusProblem, support: Sequence[int]) -> bool:
    return _support_semistable(p, frozenset(support))


def has_semistable_fiber(p: TorusProblem, s: FamilySection) -> bool:
    """Whether some fiber of s is semistable.

    Every special support is contained in the generic one, and the hull of
    a subset lies in the hull of the set, so the generic fiber decides.
    """
    polys = reduce_section(p, s).polynomials
    return _support_verdict(p, [i for i, f in enumerate(polys) if not f.is_zero])


def fiber_profile(p: TorusProblem, s: FamilySection) -> list[FiberVerdict]:
    """Semistability of s(b) generically and at every special fiber.

    Special fibers are the roots of the reduced coordinate polynomials
    (rational roots by value, other irreducible factors by their equation)
    and the point at infinity when its support differs from the generic one.
    """
    reduced = reduce_section(p, s)
    polys = reduced.polynomials
    generic = tuple(i for i, f in enumerate(polys) if not f.is_zero)
    profile = [
        FiberVerdict("generic", "generic", generic, _support_verdict(p, generic))
    ]

    factors: dict[sympy.Expr, sympy.Poly] = {}
    for f in polys:
        if f.is_zero or f.degree() < 1:
            continue
        for factor, _ in f.factor_list()[1]:
            monic = factor.monic()
            factors.setdefault(monic.as_expr(), monic)

    rational, irrational = [], []
    for monic in factors.values():
        support = tuple(i for i in generic if not polys[i].rem(monic).is_zero)
        if monic.degree() == 1:
            root = -monic.coeff_monomial(1)
            value = Fraction(int(sympy.Rational(root).p), int(sympy.Rational(root).q))
            rational.append((value, support))
        else:
            irrational.append((str(monic.as_expr()), support))

    for value, support in sorted(rational):
        profile.append(
            FiberVerdict(
                "rational",
                format_rational(value),
                support,
                _support_verdict(p, support),
            )
        )
    for equation, support in sorted(irrational):
        profile.append(
            FiberVerdict("irrational", equation, support, _support_verdict(p, support))
        )

    at_infinity = tuple(
        i
        for i in generic
        if reduced.degree - reduced.twists[i] - polys[i].degree()
        == reduced.infinity_order
    )
    if at_infinity != generic:
        profile.append(
            FiberVerdict(
                "infinity",
                "infinity",
                at_infinity,
                _support_verdict(p, at_infinity),
            )
        )
    return profile


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    has_semistable_fiber: bool
    height: int

    @property
    def violation(self) -> bool:
        return self.has_semistable_fiber and self.height < 0


@dataclass(frozen=True)
class HarnessReport:
    seed: int
    trials: int
    with_semistable_fiber: int
    violations: tuple[int, ...] = field(default_factory=tuple)
    min_height: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "with_semistable_fiber": self.with_semistable_fiber,
            "violations": list(self.violations),
            "min_height": self.min_height,
            "passed": self.passed,
        }


def _random_polynomial(rng: random.Random, degree: int) -> tuple[Fraction, ...]:
    if rng.random() < 0.5:
        coefficients = [Fraction(rng.choice([-2, -1, 1, 2]))]
        for _ in range(rng.randint(0, degree)):
            root = rng.randint(-2, 2)
            shifted = [Fraction(0)] + coefficients
            for j, c in enumerate(coefficients):
                shifted[j] -= root * c
            coefficients = shifted
        return tuple(coefficients)
    length = rng.randint(0, degree) + 1
    return tuple(Fraction(rng.randint(-3, 3)) for _ in range(length))


def random_instance(rng: random.Random) -> tuple[TorusProblem, FamilySection]:
    """A small random torus problem with a section of its split bundle."""
    rank = rng.randint(1, 3)
    size = rng.randint(2, 6)
    problem = TorusProblem(
        tuple(tuple(rng.randint(-2, 2) for _ in range(rank)) for _ in range(size))
    )
    cocycle = tuple(rng.randint(-2, 2) for _ in range(rank))
    twists = [_pairing(cocycle, chi) for chi in problem.raw_characters]
    degree = max(twists) + rng.randint(0, 2)
    polynomials = []
    for e in twists:
        room = degree - e
        if room < 0 or rng.random() < 0.2:
            polynomials.append((Fraction(0),))
        else:
            polynomials.append(_random_polynomial(rng, room))
    if not any(any(c != 0 for c in f) for f in polynomials):
        polynomials[twists.index(max(twists))] = (Fraction(1),)
    return problem, FamilySection(cocycle, tuple(polynomials), degree)


def _ch0_trial(seed: int, index: int) -> TrialOutcome:
    rng = random.Random(seed * 1_000_003 + index)
    problem, section = random_instance(rng)
    return TrialOutcome(
        index=index,
        has_semistable_fiber=has_semistable_fiber(problem, section),
        height=section_height(problem, section),
    )


def ch0_harness(seed: int, trials: int, workers: int = 1) -> HarnessReport:
    """Check that sections with a semistable fiber have nonnegative height."""
    if trials < 1:
        raise TorusWeightError(f"Need at least one trial, got {trials}")
    outcomes = parallel_map(partial(_ch0_trial, seed), range(trials), workers)
    relevant = [outcome for outcome in outcomes if outcome.has_semistable_fiber]
    violations = tuple(outcome.index for outcome in outcomes if outcome.violation)
    if violations:
        logger.error(f"Height harness violations at trials {list(violations)}")
    logger.info(
        f"Height harness: {len(relevant)}/{trials} trials with a semistable fiber"
    )
    return HarnessReport(
        seed=seed,
        trials=trials,
        with_semistable_fiber=len(relevant),
        violations=violations,
        min_height=min((outcome.height for outcome in relevant), default=None),
    )
