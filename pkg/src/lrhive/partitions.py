"""Partitions, balanced boundary triples, and the estimator's shift vectors.

Everything here is exact integer / rational arithmetic; floats never enter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    NegativePart,
    NonIntegralScale,
    NotWeaklyDecreasing,
    ParseFailure,
    RankMismatch,
    WeightImbalance,
)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of nonnegative integers."""

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int]):
        object.__setattr__(self, "parts", tuple(int(p) for p in parts))
        for a, b in zip(self.parts, self.parts[1:]):
            if a < b:
                raise NotWeaklyDecreasing(f"parts not weakly decreasing: {self.parts}")
        if self.parts and self.parts[-1] < 0:
            raise NegativePart(f"negative part in {self.parts}")

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, k: int) -> int:
        return self.parts[k]

    @property
    def weight(self) -> int:
        """Sum of the parts, written |.| throughout."""
        return sum(self.parts)

    def scaled(self, k: int) -> "Partition":
        return Partition(tuple(k * p for p in self.parts))

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def parse_partition(text: str) -> Partition:
    """Parse a comma-separated integer list such as "3,2,1"."""
    tokens = [tok.strip() for tok in text.split(",")]
    if not text.strip() or any(not tok for tok in tokens):
        raise ParseFailure(f"empty partition text: {text!r}")
    try:
        parts = [int(tok) for tok in tokens]
    except ValueError as exc:
        raise ParseFailure(f"bad partition token in {text!r}") from exc
    return Partition(parts)


@dataclass(frozen=True)
class PartitionTriple:
    """Boundary data (lambda, mu, nu) of a hive; weight-balanced by construction."""

    lam: Partition
    mu: Partition
    nu: Partition

    def __post_init__(self):
        if not (len(self.lam) == len(self.mu) == len(self.nu)):
            raise RankMismatch(
                f"ranks differ: {len(self.lam)}, {len(self.mu)}, {len(self.nu)}"
            )
        if self.lam.weight + self.mu.weight != self.nu.weight:
            raise WeightImbalance(
                f"|lambda| + |mu| = {self.lam.weight + self.mu.weight} "
                f"!= |nu| = {self.nu.weight}"
            )

    @property
    def n(self) -> int:
        return len(self.lam)

    def scaled(self, k: int) -> "PartitionTriple":
        return PartitionTriple(self.lam.scaled(k), self.mu.scaled(k), self.nu.scaled(k))

    def __str__(self) -> str:
        return f"({self.lam} | {self.mu} | {self.nu})"


def triple(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> PartitionTriple:
    return PartitionTriple(Partition(lam), Partition(mu), Partition(nu))


@dataclass(frozen=True)
class ShiftVectors:
    """Shift pair (Delta, Delta') with an optional rational 1/eps scale.

    Unscaled entries are Delta[k] = 2(n^3 - k n^2) and
    Delta'[k] = 3n^3 + n^2 - 2k n^2, both arithmetic progressions with step
    2 n^2, so 2|Delta| = |Delta'| and (Delta, Delta, Delta') is balanced.
    """

    delta: Partition
    delta_prime: Partition
    scale: Fraction

    @property
    def n(self) -> int:
        return len(self.delta)

    def scaled_delta(self) -> tuple[Fraction, ...]:
        return tuple(self.scale * p for p in self.delta)

    def scaled_delta_prime(self) -> tuple[Fraction, ...]:
        return tuple(self.scale * p for p in self.delta_prime)

    def is_integral(self) -> bool:
        """True when every scaled entry is an integer (scale * n^2 integral)."""
        return (self.scale * self.n**2).denominator == 1

    def delta_partition(self) -> Partition:
        """Scaled Delta as an integer partition; raises if non-integral."""
        if not self.is_integral():
            raise NonIntegralScale(f"scale {self.scale} * n^2 is not an integer")
        return Partition(tuple(int(v) for v in self.scaled_delta()))

    def delta_prime_partition(self) -> Partition:
        if not self.is_integral():
            raise NonIntegralScale(f"scale {self.scale} * n^2 is not an integer")
        return Partition(tuple(int(v) for v in self.scaled_delta_prime()))

    def shifted_triple(self) -> PartitionTriple:
        """The triple (Delta, Delta, Delta') itself, at the stored scale."""
        return PartitionTriple(
            self.delta_partition(), self.delta_partition(), self.delta_prime_partition()
        )


def make_shift(n: int, eps_inverse: Fraction | int | str = 1) -> ShiftVectors:
    """Build the shift vectors for rank n, scaled by eps_inverse = 1/eps."""
    if n < 2:
        raise ValueError(f"rank n must be >= 2, got {n}")
    scale = Fraction(eps_inverse)
    if scale < 1:
        raise ValueError(f"eps_inverse must be >= 1, got {scale}")
    delta = Partition(tuple(2 * (n**3 - k * n**2) for k in range(n)))
    delta_prime = Partition(tuple(3 * n**3 + n**2 - 2 * k * n**2 for k in range(n)))
    return ShiftVectors(delta, delta_prime, scale)


def shift_triple(
    t: PartitionTriple, s: ShiftVectors, direction: str = "add"
) -> PartitionTriple | None:
    """Shift t by (Delta, Delta, Delta') componentwise.

    Returns the shifted triple, or None ("infeasible") when a subtraction
    leaves some component that is not a valid partition.
    """
    if t.n != s.n:
        raise RankMismatch(f"triple rank {t.n} != shift rank {s.n}")
    if direction not in ("add", "subtract"):
        raise ValueError(f"direction must be add|subtract, got {direction!r}")
    d = s.delta_partition().parts
    dp = s.delta_prime_partition().parts
    sign = 1 if direction == "add" else -1
    try:
        return PartitionTriple(
            Partition(tuple(a + sign * b for a, b in zip(t.lam, d))),
            Partition(tuple(a + sign * b for a, b in zip(t.mu, d))),
            Partition(tuple(a + sign * b for a, b in zip(t.nu, dp))),
        )
    except (NotWeaklyDecreasing, NegativePart):
        if direction == "add":
            raise
        return None
