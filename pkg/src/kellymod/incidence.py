"""Inclusion matrices of set systems and their rank/kernel predictions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

from .combinatorics import (
    binomial,
    digits_base_p,
    mask_elements,
    p_divides_binomial,
    require_prime,
    subset_index,
    subset_masks,
)
from .config import check_ground_set, entry_cap
from .errors import PreconditionError, ResourceCapError
from .linalg import DiagonalSpec, IntegerMatrix, ResidueMatrix, left_kernel_mod_p


class KernelTag(str, enum.Enum):
    TRIVIAL = "Trivial"
    ALL_ONES = "AllOnes"
    OTHER = "Other"


@dataclass(frozen=True)
class KernelClass:
    tag: KernelTag
    dim: int

    def __post_init__(self) -> None:
        if self.tag is KernelTag.TRIVIAL and self.dim != 0:
            raise ValueError("a trivial kernel has dimension 0")
        if self.tag is KernelTag.ALL_ONES and self.dim != 1:
            raise ValueError("an all-ones kernel has dimension 1")


def check_wilson_range(v: int, t: int, k: int) -> None:
    if not 0 <= t <= min(k, v - k):
        raise PreconditionError(f"requires 0 <= t <= min(k, v-k); got v={v}, t={t}, k={k}")


class InclusionMatrix:
    """The 0/1 matrix of ``t``-subsets (rows) against ``k``-subsets (columns).

    Rows and columns follow colex order. ``col_bits[j]`` is the set of rows
    contained in column ``j`` packed as an int; ``row_bits[i]`` likewise for
    the columns containing row ``i``.
    """

    def __init__(self, v: int, t: int, k: int):
        check_ground_set(v)
        if not (0 <= t <= v and 0 <= k <= v):
            raise PreconditionError(f"need 0 <= t, k <= v; got v={v}, t={t}, k={k}")
        nrows, ncols = binomial(v, t), binomial(v, k)
        cap = entry_cap()
        if nrows * ncols > cap:
            raise ResourceCapError(
                f"W[{t},{k}] on v={v} has C({v},{t})*C({v},{k}) = {nrows}*{ncols} = "
                f"{nrows * ncols} entries, above the cap {cap}"
            )
        self.v, self.t, self.k = v, t, k
        self.row_masks = subset_masks(v, t)
        self.col_masks = subset_masks(v, k)
        index = subset_index(v, t)
        col_bits = []
        row_bits = [0] * nrows
        for j, kmask in enumerate(self.col_masks):
            bits = 0
            for sub in combinations(mask_elements(kmask), t):
                m = 0
                for x in sub:
                    m |= 1 << x
                i = index[m]
                bits |= 1 << i
                row_bits[i] |= 1 << j
            col_bits.append(bits)
        self.col_bits: tuple[int, ...] = tuple(col_bits)
        self.row_bits: tuple[int, ...] = tuple(row_bits)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_masks), len(self.col_masks))

    def entry(self, i: int, j: int) -> int:
        return self.row_bits[i] >> j & 1

    @cached_property
    def integer(self) -> IntegerMatrix:
        ncols = len(self.col_masks)
        return IntegerMatrix(
            [[b >> j & 1 for j in range(ncols)] for b in self.row_bits], ncols
        )

    def mod(self, p: int) -> ResidueMatrix:
        if p == 2:
            return ResidueMatrix.from_bits(self.row_bits, len(self.col_masks))
        return self.integer.reduce_mod(p)

    def __repr__(self) -> str:
        return f"InclusionMatrix(v={self.v}, t={self.t}, k={self.k})"


@lru_cache(maxsize=64)
def _cached_inclusion(v: int, t: int, k: int, cap: int) -> InclusionMatrix:
    return InclusionMatrix(v, t, k)


def build_inclusion_matrix(v: int, t: int, k: int) -> InclusionMatrix:
    return _cached_inclusion(v, t, k, entry_cap())


def wilson_rank(v: int, t: int, k: int, p: int) -> int:
    """Rank of ``W[t,k]`` mod ``p`` from the binomial divisibility pattern."""
    require_prime(p)
    check_wilson_range(v, t, k)
    return sum(
        binomial(v, i) - binomial(v, i - 1)
        for i in range(t + 1)
        if not p_divides_binomial(k - i, t - i, p)
    )


def wilson_diagonal(v: int, t: int, k: int) -> DiagonalSpec:
    """Diagonal form of ``W[t,k]``: ``C(k-i, t-i)`` repeated ``C(v,i) - C(v,i-1)`` times."""
    check_wilson_range(v, t, k)
    entries = tuple(
        (binomial(k - i, t - i), binomial(v, i) - binomial(v, i - 1)) for i in range(t + 1)
    )
    return DiagonalSpec(entries, (binomial(v, t), binomial(v, k)))


def kernel_class(t: int, k: int, p: int) -> KernelTag:
    """Predict the left kernel of ``W[t,k]`` mod ``p`` from base-``p`` digits.

    ``Trivial`` when ``t`` and ``k`` agree on every digit below the leading
    digit of ``t`` and ``k`` is at least as large there. ``AllOnes`` when
    ``t`` is a single digit times a power of ``p`` and ``k`` vanishes on all
    digits up to that power. ``t = 0`` is treated as ``Trivial``.
    """
    require_prime(p)
    if not 0 <= t <= k:
        raise PreconditionError(f"kernel_class requires 0 <= t <= k, got t={t}, k={k}")
    if t == 0:
        return KernelTag.TRIVIAL
    td = digits_base_p(t, p)
    kd = digits_base_p(k, p)
    n = td.top
    if all(kd[j] == td[j] for j in range(n)) and kd[n] >= td[n]:
        return KernelTag.TRIVIAL
    if all(td[j] == 0 for j in range(n)) and all(kd[j] == 0 for j in range(n + 1)):
        return KernelTag.ALL_ONES
    return KernelTag.OTHER


def left_kernel(v: int, t: int, k: int, p: int) -> list[tuple[int, ...]]:
    return left_kernel_mod_p(build_inclusion_matrix(v, t, k).mod(p))


def classify_basis(basis: list[tuple[int, ...]]) -> KernelClass:
    """Tag a computed left-kernel basis as Trivial, AllOnes or Other."""
    if not basis:
        return KernelClass(KernelTag.TRIVIAL, 0)
    if len(basis) == 1 and all(x == 1 for x in basis[0]):
        return KernelClass(KernelTag.ALL_ONES, 1)
    return KernelClass(KernelTag.OTHER, len(basis))


def computed_kernel_class(v: int, t: int, k: int, p: int) -> KernelClass:
    return classify_basis(left_kernel(v, t, k, p))


def kneser_adjacency(t: int, v: int) -> IntegerMatrix:
    """Adjacency of the Kneser graph on ``t``-subsets: 1 iff disjoint."""
    check_ground_set(v)
    if t < 0 or 2 * t > v:
        raise PreconditionError(f"kneser_adjacency requires 0 <= 2t <= v, got t={t}, v={v}")
    masks = subset_masks(v, t)
    return IntegerMatrix([[int(a & b == 0) for b in masks] for a in masks], len(masks))
