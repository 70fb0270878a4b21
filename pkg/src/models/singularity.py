"""Cyclic quotient surface singularities and their resolution chains."""

from dataclasses import dataclass
from math import gcd


class InvalidSingularityError(Exception):
    """Exception raised for invalid quotient types or chains."""

    pass


@dataclass(frozen=True)
class QuotientType:
    """The singularity 1/m(1,q): 0 < q < m, gcd(q, m) = 1."""

    m: int
    q: int

    def __post_init__(self) -> None:
        if self.m < 2 or not 0 < self.q < self.m or gcd(self.m, self.q) != 1:
            raise InvalidSingularityError(
                f"Invalid quotient type 1/{self.m}(1,{self.q})"
            )

    def __str__(self) -> str:
        return f"1/{self.m}(1,{self.q})"

    def to_json(self) -> dict:
        return {"m": self.m, "q": self.q}


@dataclass(frozen=True)
class ChainData:
    """Hirzebruch–Jung chain (b_1, …, b_k), every b_i ≥ 2."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise InvalidSingularityError("A chain needs at least one entry")
        if any(b < 2 for b in self.entries):
            raise InvalidSingularityError(
                f"Chain entries must be ≥ 2: {self.entries}"
            )

    @classmethod
    def of(cls, *entries: int) -> "ChainData":
        return cls(tuple(entries))

    @property
    def is_du_val(self) -> bool:
        return all(b == 2 for b in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.entries) + ")"


@dataclass(frozen=True)
class TDecomposition:
    """1/(dn²)(1, dna − 1) with gcd(a, n) = 1."""

    d: int
    n: int
    a: int

    @property
    def quotient_type(self) -> QuotientType:
        return QuotientType(self.d * self.n * self.n, self.d * self.n * self.a - 1)

    @property
    def is_du_val(self) -> bool:
        return self.n == 1

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n, "a": self.a}
