"""Exact binomials, base-p digits, Lucas evaluation and colex subset ranking.

Subsets of ``{0, ..., v-1}`` are bitmasks. For a fixed cardinality the
colexicographic order coincides with the numeric order of the masks, and
the colex rank of ``{a_1 < ... < a_r}`` is ``sum C(a_i, i)``, which does not
depend on ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .config import check_ground_set
from .errors import PreconditionError


def binomial(n: int, r: int) -> int:
    """Exact ``C(n, r)``; zero when ``r < 0`` or ``r > n``."""
    if n < 0:
        raise PreconditionError(f"binomial requires n >= 0, got n={n}")
    if r < 0 or r > n:
        return 0
    return comb(n, r)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise PreconditionError(f"modulus must be a prime, got {p!r}")


@dataclass(frozen=True)
class DigitVector:
    """Base-``p`` digits of ``value``, least significant first."""

    digits: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        if not self.digits:
            raise ValueError("a DigitVector has at least one digit")
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError(f"digits {self.digits} out of range for p={self.p}")
        if len(self.digits) > 1 and self.digits[-1] == 0:
            raise ValueError("leading digit must be nonzero")

    @property
    def value(self) -> int:
        total = 0
        for d in reversed(self.digits):
            total = total * self.p + d
        return total

    @property
    def top(self) -> int:
        """Index of the leading digit (the exponent ``n(p)``)."""
        return len(self.digits) - 1

    def __getitem__(self, i: int) -> int:
        # missing higher digits read as zero
        return self.digits[i] if 0 <= i < len(self.digits) else 0

    def __len__(self) -> int:
        return len(self.digits)


def digits_base_p(n: int, p: int) -> DigitVector:
    require_prime(p)
    if n < 0:
        raise PreconditionError(f"digits_base_p requires n >= 0, got {n}")
    if n == 0:
        return DigitVector((0,), p)
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return DigitVector(tuple(out), p)


def binomial_mod_p_lucas(k: int, t: int, p: int) -> int:
    """``C(k, t) mod p`` as the digit-wise product of small binomials."""
    require_prime(p)
    if k < 0 or t < 0:
        raise PreconditionError("binomial_mod_p_lucas requires k, t >= 0")
    kd = digits_base_p(k, p)
    td = digits_base_p(t, p)
    result = 1
    for i in range(len(td)):
        ki, ti = kd[i], td[i]
        if ti > ki:
            return 0
        result = result * comb(ki, ti) % p
    return result


def p_divides_binomial(k: int, t: int, p: int) -> bool:
    """True iff some base-``p`` digit of ``t`` exceeds the matching digit of ``k``."""
    require_prime(p)
    if not 0 <= t <= k:
        raise PreconditionError(f"p_divides_binomial requires 0 <= t <= k, got t={t}, k={k}")
    kd = digits_base_p(k, p)
    td = digits_base_p(t, p)
    return any(td[i] > kd[i] for i in range(len(td)))


# ---------------------------------------------------------------------------
# subsets


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_elements(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def elements_mask(elements: Sequence[int]) -> int:
    mask = 0
    for x in elements:
        if x < 0:
            raise PreconditionError(f"negative element {x}")
        mask |= 1 << x
    return mask


def colex_rank_of_mask(mask: int) -> int:
    rank = 0
    for i, a in enumerate(mask_elements(mask), start=1):
        rank += comb(a, i)
    return rank


def colex_unrank_mask(rank: int, card: int) -> int:
    mask = 0
    for i in range(card, 0, -1):
        # largest a with C(a, i) <= rank
        a = i - 1
        while comb(a + 1, i) <= rank:
            a += 1
        rank -= comb(a, i)
        mask |= 1 << a
    return mask


@dataclass(frozen=True, order=True)
class SubsetCode:
    """A finite subset of ``{0, ..., 31}`` stored as a bitmask."""

    mask: int

    @classmethod
    def of(cls, elements: Sequence[int]) -> SubsetCode:
        return cls(elements_mask(elements))

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    @property
    def colex_rank(self) -> int:
        return colex_rank_of_mask(self.mask)

    @property
    def elements(self) -> tuple[int, ...]:
        return mask_elements(self.mask)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def issubset(self, other: SubsetCode) -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return "SubsetCode({" + ", ".join(map(str, self.elements)) + "})"


def subset_unrank(rank: int, card: int, v: int) -> SubsetCode:
    check_ground_set(v)
    if not 0 <= card <= v:
        raise PreconditionError(f"cardinality {card} outside 0..{v}")
    total = comb(v, card)
    if not 0 <= rank < total:
        raise PreconditionError(f"rank {rank} outside 0..{total - 1} for C({v},{card})")
    return SubsetCode(colex_unrank_mask(rank, card))


def subset_rank(s: SubsetCode) -> int:
    return colex_rank_of_mask(s.mask)


@lru_cache(maxsize=None)
def subset_masks(v: int, card: int) -> tuple[int, ...]:
    """All ``card``-subsets of a ``v``-set as masks, in colex order."""
    check_ground_set(v)
    if not 0 <= card <= v:
        raise PreconditionError(f"cardinality {card} outside 0..{v}")
    if card == 0:
        return (0,)
    out = []
    x = (1 << card) - 1
    limit = 1 << v
    while x < limit:
        out.append(x)
        # Gosper's hack: next integer with the same popcount
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r
    return tuple(out)


@lru_cache(maxsize=None)
def subset_index(v: int, card: int) -> dict[int, int]:
    """Map from mask to colex rank for ``card``-subsets of a ``v``-set."""
    return {m: i for i, m in enumerate(subset_masks(v, card))}


def enumerate_subsets(v: int, card: int) -> Iterator[SubsetCode]:
    for m in subset_masks(v, card):
        yield SubsetCode(m)


@lru_cache(maxsize=None)
def pair_index(i: int, j: int) -> int:
    """Colex rank of the pair ``{i, j}``."""
    if i > j:
        i, j = j, i
    if i == j:
        raise PreconditionError(f"pair needs distinct vertices, got {i} twice")
    return j * (j - 1) // 2 + i


@lru_cache(maxsize=None)
def pairs(v: int) -> tuple[tuple[int, int], ...]:
    """All pairs ``(i, j)`` with ``i < j < v`` in colex order."""
    return tuple((i, j) for j in range(v) for i in range(j))
