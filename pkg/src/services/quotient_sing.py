"""Arithmetic of cyclic quotient surface singularities.

Hirzebruch–Jung chains come from the minus-sign continued fraction
m/q = b_1 − 1/(b_2 − 1/(… − 1/b_k)). Class T is 1/(dn²)(1, dna − 1) with
gcd(a, n) = 1, equivalently m | (q + 1)²; the chains of class T with n ≥ 2
are generated from the bases (4), (3,3), (3,2,…,2,3) by the two moves
(b_1,…,b_k) ↦ (2,b_1,…,b_k + 1) and (b_1,…,b_k) ↦ (b_1 + 1,…,b_k,2).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Optional, Sequence

from src.models.singularity import (
    ChainData,
    InvalidSingularityError,
    QuotientType,
    TDecomposition,
)

logger = logging.getLogger(__name__)


class QuotientSingularityError(Exception):
    """Exception raised for invalid singularity requests."""

    pass


def hj_expand(t: QuotientType) -> ChainData:
    """Chain (b_1, ..., b_k) of m/q = b_1 − 1/(b_2 − ...), each b_i ≥ 2."""
    entries = []
    numerator, denominator = t.m, t.q
    while denominator:
        b = -(-numerator // denominator)
        entries.append(b)
        numerator, denominator = denominator, b * denominator - numerator
    return ChainData(tuple(entries))


def hj_contract(chain: ChainData) -> QuotientType:
    """Inverse of hj_expand: evaluate the continued fraction from the right."""
    value = Fraction(chain.entries[-1])
    for b in reversed(chain.entries[:-1]):
        value = b - 1 / value
    return QuotientType(value.numerator, value.denominator)


def dual_weight(t: QuotientType) -> int:
    """q' with q·q' ≡ 1 mod m; its chain is the reversed chain of t."""
    return pow(t.q, -1, t.m)


def multiplicity(chain: ChainData) -> int:
    """−Z² for the reduced fundamental cycle: Σ b_i − 2(k − 1)."""
    return sum(chain.entries) - 2 * (len(chain) - 1)


def t_recognize(
    t: QuotientType, include_du_val: bool = True
) -> Optional[TDecomposition]:
    """(d, n, a) with m = dn², q = dna − 1, gcd(a, n) = 1, if any."""
    e = t.q + 1
    h = gcd(e, t.m)
    n = t.m // h
    if h % n:
        return None
    decomposition = TDecomposition(d=h // n, n=n, a=e // h)
    if decomposition.is_du_val and not include_du_val:
        return None
    return decomposition


def is_class_t(t: QuotientType, include_du_val: bool = True) -> bool:
    """Closed form: m | (q + 1)²."""
    if (t.q + 1) ** 2 % t.m:
        return False
    # n = 1 exactly when m divides q + 1, i.e. q = m − 1
    return include_du_val or t.q + 1 != t.m


def t_chain_base(d: int) -> ChainData:
    """Base of the T-recursion: (4) for d = 1, otherwise (3, 2^{d−2}, 3)."""
    if d < 1:
        raise QuotientSingularityError(f"d must be positive, got {d}")
    if d == 1:
        return ChainData.of(4)
    return ChainData((3, *([2] * (d - 2)), 3))


def _is_base(entries: tuple[int, ...]) -> bool:
    if entries == (4,):
        return True
    return (
        len(entries) >= 2
        and entries[0] == 3
        and entries[-1] == 3
        and all(b == 2 for b in entries[1:-1])
    )


@dataclass(frozen=True)
class ChainReduction:
    """Reverse T-moves applied to a chain, ending at a base or a dead end."""

    steps: tuple[tuple[int, ...], ...] = field(default_factory=tuple)
    is_t: bool = False
    du_val: bool = False


def t_chain_reduce(chain: ChainData, include_du_val: bool = False) -> ChainReduction:
    if chain.is_du_val:
        return ChainReduction(steps=(chain.entries,), is_t=include_du_val, du_val=True)
    entries = chain.entries
    steps = [entries]
    while not _is_base(entries):
        if len(entries) < 2:
            return ChainReduction(steps=tuple(steps))
        if entries[0] == 2 and entries[-1] >= 3:
            entries = (*entries[1:-1], entries[-1] - 1)
        elif entries[-1] == 2 and entries[0] >= 3:
            entries = (entries[0] - 1, *entries[1:-1])
        else:
            return ChainReduction(steps=tuple(steps))
        steps.append(entries)
    return ChainReduction(steps=tuple(steps), is_t=True)


def t_chain_check(chain: ChainData, include_du_val: bool = False) -> bool:
    """True iff the chain is generated by the T-moves from a base chain.

    Chains of 2's (rational double points) are accepted only with
    ``include_du_val``.
    """
    return t_chain_reduce(chain, include_du_val).is_t


def mumford_bound(dim: int) -> int:
    if dim < 1:
        raise QuotientSingularityError(f"Dimension must be positive, got {dim}")
    return factorial(dim + 1)


def mumford_check(dim: int, mults: Sequence[int]) -> list[int]:
    """Indices of points whose multiplicity exceeds (dim + 1)!."""
    bound = mumford_bound(dim)
    if any(mult < 1 for mult in mults):
        raise QuotientSingularityError(
            f"Multiplicities must be positive: {list(mults)}"
        )
    return [index for index, mult in enumerate(mults) if mult > bound]


def weighted_order(monomials: Sequence[Sequence[int]], weights: Sequence[int]) -> int:
    """Order of a polynomial along a weighted blowup: min Σ e_j w_j."""
    if not monomials:
        raise QuotientSingularityError("Weighted order of an empty monomial list")
    if any(w <= 0 for w in weights):
        raise QuotientSingularityError(f"Weights must be positive: {list(weights)}")
    for exponents in monomials:
        if len(exponents) != len(weights):
            raise QuotientSingularityError(
                f"Exponent vector {list(exponents)} does not match "
                f"{len(weights)} weights"
            )
        if any(e < 0 for e in exponents):
            raise QuotientSingularityError(f"Negative exponent in {list(exponents)}")
    return min(
        sum(e * w for e, w in zip(exponents, weights)) for exponents in monomials
    )


def wb_discrepancy(weights: Sequence[int]) -> int:
    """Discrepancy of the weighted blowup of a smooth point: Σ w_j − 1."""
    if not weights or any(w <= 0 for w in weights):
        raise QuotientSingularityError(f"Weights must be positive: {list(weights)}")
    return sum(weights) - 1


# Local equation at (0,0,0,1) of the degenerating hypersurface family, in the
# coordinates (x, y, z, t): xyz⁴ + y⁶ + z¹⁰ + t³⁰ (+ x^m + y^m + z^m).
KOLLAR_WEIGHTS = (1, 5, 6, 1)
KOLLAR_MONOMIALS = ((1, 1, 4, 0), (0, 6, 0, 0), (0, 0, 10, 0), (0, 0, 0, 30))
KOLLAR_POINT = QuotientType(180, 29)
KOLLAR_CANONICAL_SHIFT = 4


@dataclass(frozen=True)
class KollarReport:
    m: int
    weights: tuple[int, ...]
    discrepancy: int
    order: int
    adjoint_coefficient: int
    ampleness_threshold: int
    ample: bool
    construction_range: bool
    singularity: QuotientType
    chain: ChainData
    multiplicity: int
    decomposition: Optional[TDecomposition]
    mumford_violated: bool

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "weights": list(self.weights),
            "discrepancy": self.discrepancy,
            "order": self.order,
            "adjoint_coefficient": self.adjoint_coefficient,
            "ampleness_threshold": self.ampleness_threshold,
            "ample": self.ample,
            "construction_range": self.construction_range,
            "singularity": self.singularity.to_json(),
            "chain": list(self.chain.entries),
            "multiplicity": self.multiplicity,
            "t_decomposition": (
                None if self.decomposition is None else self.decomposition.to_json()
            ),
            "mumford_violated": self.mumford_violated,
        }


def kollar_family_report(m: int) -> KollarReport:
    """Numbers of the weighted blowup of the degree-m hypersurface family.

    K_Y = p*O(m − 4) − (order − discrepancy)·E, ample once
    m − 4 > order − discrepancy.
    """
    if m <= KOLLAR_CANONICAL_SHIFT:
        raise QuotientSingularityError(f"Need m > 4, got {m}")
    discrepancy = wb_discrepancy(KOLLAR_WEIGHTS)
    order = weighted_order(KOLLAR_MONOMIALS, KOLLAR_WEIGHTS)
    adjoint = order - discrepancy
    threshold = adjoint + KOLLAR_CANONICAL_SHIFT
    chain = hj_expand(KOLLAR_POINT)
    mult = multiplicity(chain)
    logger.debug(f"Kollár family m={m}: order {order}, discrepancy {discrepancy}")
    return KollarReport(
        m=m,
        weights=KOLLAR_WEIGHTS,
        discrepancy=discrepancy,
        order=order,
        adjoint_coefficient=adjoint,
        ampleness_threshold=threshold,
        ample=m > threshold,
        construction_range=m > order,
        singularity=KOLLAR_POINT,
        chain=chain,
        multiplicity=mult,
        decomposition=t_recognize(KOLLAR_POINT),
        mumford_violated=bool(mumford_check(2, [mult])),
    )


LEE_PARK_CHAINS = (
    ChainData.of(4),
    ChainData.of(2, 5),
    ChainData.of(2, 7, 2, 2, 3),
    ChainData.of(7, 2, 2, 2),
    ChainData.of(2, 10, 2, 2, 2, 2, 2, 3),
)


@dataclass(frozen=True)
class ChainReport:
    chain: ChainData
    singularity: QuotientType
    multiplicity: int
    decomposition: Optional[TDecomposition]
    violates_mumford: bool

    def to_json(self) -> dict:
        return {
            "chain": list(self.chain.entries),
            "singularity": self.singularity.to_json(),
            "multiplicity": self.multiplicity,
            "t_decomposition": (
                None if self.decomposition is None else self.decomposition.to_json()
            ),
            "violates_mumford": self.violates_mumford,
        }


def chain_report(chains: Sequence[ChainData], dim: int = 2) -> list[ChainReport]:
    mults = [multiplicity(chain) for chain in chains]
    violators = set(mumford_check(dim, mults))
    return [
        ChainReport(
            chain=chain,
            singularity=hj_contract(chain),
            multiplicity=mult,
            decomposition=t_recognize(hj_contract(chain)),
            violates_mumford=index in violators,
        )
        for index, (chain, mult) in enumerate(zip(chains, mults))
    ]


def lee_park_report() -> list[ChainReport]:
    """The five singularities of the rational surface with K² = 2, p_g = 0."""
    return chain_report(LEE_PARK_CHAINS)


def parse_quotient_type(m: int, q: int) -> QuotientType:
    try:
        return QuotientType(m, q)
    except InvalidSingularityError as e:
        raise QuotientSingularityError(str(e))
