"""Set-family reconstruction from (congruences of) inclusion counts.

A family of ``t``-subsets of a ``v``-set is stored as its indicator vector
packed into an int: bit ``i`` is set iff the ``i``-th ``t``-subset in colex
order is a member. The count of members inside a ``k``-subset ``K`` is then
a popcount against the packed column of the inclusion matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .combinatorics import (
    SubsetCode,
    binomial,
    elements_mask,
    mask_elements,
    require_prime,
    subset_index,
    subset_masks,
)
from .config import DEFAULT_SEED, check_ground_set
from .errors import PreconditionError
from .incidence import (
    KernelTag,
    build_inclusion_matrix,
    classify_basis,
    kernel_class,
    left_kernel,
)
from .linalg import gf2_in_span, gf2_rref
from .report import Report, Route, Tally, group_by, group_pairs, population, resolve_route


@dataclass(frozen=True)
class Family:
    """A set of ``t``-subsets of ``{0, ..., v-1}`` as a packed indicator."""

    v: int
    t: int
    bits: int = 0

    def __post_init__(self) -> None:
        check_ground_set(self.v)
        if not 0 <= self.t <= self.v:
            raise PreconditionError(f"member size t={self.t} outside 0..{self.v}")
        if not 0 <= self.bits < 1 << binomial(self.v, self.t):
            raise PreconditionError("indicator has bits past C(v, t)")

    @classmethod
    def from_members(cls, v: int, t: int, members: Iterable[SubsetCode | Sequence[int]]) -> Family:
        index = subset_index(v, t)
        bits = 0
        for m in members:
            mask = m.mask if isinstance(m, SubsetCode) else elements_mask(m)
            if mask not in index:
                raise PreconditionError(f"{mask_elements(mask)} is not a {t}-subset of a {v}-set")
            bits |= 1 << index[mask]
        return cls(v, t, bits)

    @classmethod
    def full(cls, v: int, t: int) -> Family:
        return cls(v, t, (1 << binomial(v, t)) - 1)

    @classmethod
    def empty(cls, v: int, t: int) -> Family:
        return cls(v, t, 0)

    @property
    def size(self) -> int:
        return binomial(self.v, self.t)

    @property
    def members(self) -> tuple[SubsetCode, ...]:
        masks = subset_masks(self.v, self.t)
        return tuple(SubsetCode(masks[i]) for i in range(len(masks)) if self.bits >> i & 1)

    @property
    def indicator(self) -> tuple[int, ...]:
        return tuple(self.bits >> i & 1 for i in range(self.size))

    def complement(self) -> Family:
        return Family(self.v, self.t, self.bits ^ ((1 << self.size) - 1))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, s: SubsetCode | Sequence[int]) -> bool:
        mask = s.mask if isinstance(s, SubsetCode) else elements_mask(s)
        i = subset_index(self.v, self.t).get(mask)
        return i is not None and bool(self.bits >> i & 1)


class VerdictTag(str, enum.Enum):
    HYPOTHESIS_FAILS = "HypothesisFails"
    EQUAL = "Equal"
    FULL_VS_EMPTY = "FullVsEmpty"
    BOOLEAN_COMPLEMENT = "BooleanComplement"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class PairVerdict:
    tag: VerdictTag
    witness: SubsetCode | None = None


def _check_k(u: Family, k: int) -> None:
    if not u.t <= k <= u.v:
        raise PreconditionError(f"k={k} must satisfy t <= k <= v (t={u.t}, v={u.v})")


def inclusion_counts(u: Family, k: int, method: str = "direct") -> list[int]:
    """``n(U, K)`` for every ``k``-subset ``K`` in colex order.

    ``direct`` iterates over members; ``matrix`` multiplies the indicator
    by the inclusion matrix (packed columns and popcounts).
    """
    _check_k(u, k)
    if method == "direct":
        members = [m.mask for m in u.members]
        return [sum(1 for m in members if m & ~K == 0) for K in subset_masks(u.v, k)]
    if method == "matrix":
        cols = build_inclusion_matrix(u.v, u.t, k).col_bits
        return [(u.bits & c).bit_count() for c in cols]
    raise ValueError(f"unknown method {method!r}")


def _same_shape(u: Family, u2: Family) -> None:
    if (u.v, u.t) != (u2.v, u2.t):
        raise PreconditionError(f"families differ in shape: (v,t)={u.v, u.t} vs {u2.v, u2.t}")


def congruent_mod_p(u: Family, u2: Family, k: int, p: int) -> tuple[bool, SubsetCode | None]:
    """Whether inclusion counts agree mod ``p``; else the colex-first witness ``K``."""
    require_prime(p)
    _same_shape(u, u2)
    _check_k(u, k)
    W = build_inclusion_matrix(u.v, u.t, k)
    for K, c in zip(W.col_masks, W.col_bits):
        if ((u.bits & c).bit_count() - (u2.bits & c).bit_count()) % p:
            return False, SubsetCode(K)
    return True, None


def _shape_verdict(a: int, b: int, full: int, p: int) -> VerdictTag:
    if a == b:
        return VerdictTag.EQUAL
    if (a, b) in ((full, 0), (0, full)):
        return VerdictTag.FULL_VS_EMPTY
    if p == 2 and a ^ b == full:
        return VerdictTag.BOOLEAN_COMPLEMENT
    return VerdictTag.UNCLASSIFIED


def classify_pair(u: Family, u2: Family, k: int, p: int) -> PairVerdict:
    _same_shape(u, u2)
    if not u.t <= min(k, u.v - k):
        raise PreconditionError(f"requires t <= min(k, v-k); got v={u.v}, t={u.t}, k={k}")
    ok, witness = congruent_mod_p(u, u2, k, p)
    if not ok:
        return PairVerdict(VerdictTag.HYPOTHESIS_FAILS, witness)
    full = (1 << u.size) - 1
    tag = _shape_verdict(u.bits, u2.bits, full, p)
    if tag is not VerdictTag.UNCLASSIFIED:
        return PairVerdict(tag)
    # a subset on which the pair agrees rules out complementation and full/empty;
    # if they disagree everywhere (only possible for p > 2) any subset is a witness
    agree = ~(u.bits ^ u2.bits) & full
    i = (agree & -agree).bit_length() - 1 if agree else 0
    return PairVerdict(tag, SubsetCode(subset_masks(u.v, u.t)[i]))


def pouzet_count(u: Family, t_prime: SubsetCode, k_prime: SubsetCode) -> int:
    """Members ``T`` of ``u`` with ``t_prime ⊆ T ⊆ k_prime``."""
    if not t_prime.issubset(k_prime):
        raise PreconditionError(f"{t_prime} is not contained in {k_prime}")
    lo, hi = t_prime.mask, k_prime.mask
    return sum(1 for m in u.members if m.mask & lo == lo and m.mask & ~hi == 0)


def kelly_family_identity(u: Family) -> bool:
    """``|U| (v - t)`` equals the sum over points ``x`` of members avoiding ``x``."""
    if u.v <= u.t:
        raise PreconditionError(f"needs v > t, got v={u.v}, t={u.t}")
    masks = [m.mask for m in u.members]
    rhs = sum(sum(1 for m in masks if not m >> x & 1) for x in range(u.v))
    return len(masks) * (u.v - u.t) == rhs


def _family_payload(v: int, t: int, bits: int) -> list[list[int]]:
    masks = subset_masks(v, t)
    return [list(mask_elements(masks[i])) for i in range(len(masks)) if bits >> i & 1]


def verify_pouzet_lemma(
    v: int, t: int, r: int, route: str | None = None, seed: int | None = None, sample: int | None = None
) -> Report:
    """Equal counts on all ``(t+r)``-subsets force equal counts ``n(U; T', K')``
    whenever ``T' ⊆ K'`` and ``|K' \\ T'| >= t + r``."""
    check_ground_set(v)
    if t < 0 or r < 0 or v < t + r:
        raise PreconditionError(f"requires v >= t + r with t, r >= 0; got v={v}, t={t}, r={r}")
    k = t + r
    n = binomial(v, t)
    chosen = resolve_route(route, 1 << n, (Route.EXHAUSTIVE, Route.SAMPLED))
    fams = population(n, chosen, seed, sample)
    W = build_inclusion_matrix(v, t, k)
    tmasks = subset_masks(v, t)
    windows = []
    for K in range(1 << v):
        for T in _submasks(K):
            if (K & ~T).bit_count() >= k:
                sel = 0
                for i, m in enumerate(tmasks):
                    if m & T == T and m & ~K == 0:
                        sel |= 1 << i
                windows.append((T, K, sel))
    tally = Tally()
    tally.bump("instances", len(fams))
    tally.bump("windows", len(windows))
    groups = group_by(fams, lambda b: tuple((b & c).bit_count() for c in W.col_bits))
    tally.bump("groups", len(groups))
    for idx, (a, b) in enumerate(group_pairs(groups)):
        tally.bump("hypothesis_pairs")
        for T, K, sel in windows:
            if (a & sel).bit_count() != (b & sel).bit_count():
                tally.fail(idx, {
                    "U": _family_payload(v, t, a),
                    "U2": _family_payload(v, t, b),
                    "T'": list(mask_elements(T)),
                    "K'": list(mask_elements(K)),
                })
                break
    params = {"v": v, "t": t, "r": r}
    return tally.to_report("lemma-pouzet", params, chosen, _seed_for(chosen, seed))


def _submasks(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def _seed_for(route: Route, seed: int | None) -> int | None:
    if route is not Route.SAMPLED:
        return None
    return DEFAULT_SEED if seed is None else seed


def _kernel_reducer(basis: list[tuple[int, ...]], p: int):
    """Membership test for the span of a reduced-echelon basis over GF(p)."""
    if p == 2:
        packed = gf2_rref(sum(x << i for i, x in enumerate(vec)) for vec in basis)
        return lambda diff_bits, _vec=None: gf2_in_span(diff_bits, packed)
    pivots = [next(i for i, x in enumerate(vec) if x) for vec in basis]

    def in_span(_bits, vec):
        vec = list(vec)
        for piv, row in zip(pivots, basis):
            c = vec[piv] % p
            if c:
                for j, x in enumerate(row):
                    if x:
                        vec[j] = (vec[j] - c * x) % p
        return not any(x % p for x in vec)

    return in_span


def verify_main_theorem(
    v: int, t: int, k: int, p: int,
    route: str | None = None, seed: int | None = None, sample: int | None = None,
) -> Report:
    """Congruent inclusion counts mod ``p`` pin the family down, by regime.

    Runs the kernel comparison (predicted class against the computed left
    kernel) and then sweeps family pairs grouped by their count vector mod
    ``p``, classifying every pair that shares a group.
    """
    require_prime(p)
    check_ground_set(v)
    if not 0 <= t <= min(k, v - k):
        raise PreconditionError(f"requires t <= min(k, v-k); got v={v}, t={t}, k={k}")
    n = binomial(v, t)
    chosen = resolve_route(route, 1 << n, (Route.EXHAUSTIVE, Route.SAMPLED))
    tally = Tally()
    predicted = kernel_class(t, k, p)
    basis = left_kernel(v, t, k, p)
    computed = classify_basis(basis)
    tally.bump("kernel_dim", computed.dim)
    tally.bump("kernel_class_match", int(predicted is computed.tag))
    if predicted is not computed.tag:
        tally.fail(-1, {"kind": "kernel-class", "predicted": predicted.value, "computed": computed.tag.value})

    allowed = {
        KernelTag.TRIVIAL: {VerdictTag.EQUAL},
        KernelTag.ALL_ONES: {VerdictTag.EQUAL, VerdictTag.FULL_VS_EMPTY}
        | ({VerdictTag.BOOLEAN_COMPLEMENT} if p == 2 else set()),
        KernelTag.OTHER: set(VerdictTag),
    }[predicted]
    W = build_inclusion_matrix(v, t, k)
    full = (1 << n) - 1
    in_kernel = _kernel_reducer(basis, p)
    fams = population(n, chosen, seed, sample)
    tally.bump("instances", len(fams))
    groups = group_by(fams, lambda b: tuple((b & c).bit_count() % p for c in W.col_bits))
    tally.bump("groups", len(groups))
    for idx, (a, b) in enumerate(group_pairs(groups)):
        tally.bump("hypothesis_pairs")
        tag = _shape_verdict(a, b, full, p)
        tally.bump(f"verdict:{tag.value}")
        diff_vec = None
        if p != 2:
            diff_vec = [((a >> i & 1) - (b >> i & 1)) % p for i in range(n)]
        if not in_kernel(a ^ b, diff_vec):
            tally.fail(idx, {"kind": "outside-kernel", "U": _family_payload(v, t, a), "U2": _family_payload(v, t, b)})
        elif tag not in allowed:
            tally.fail(idx, {
                "kind": "verdict", "verdict": tag.value, "regime": predicted.value,
                "U": _family_payload(v, t, a), "U2": _family_payload(v, t, b),
            })
    tally.bump(f"regime:{predicted.value}")
    params = {"v": v, "t": t, "k": k, "p": p}
    return tally.to_report("thm-main", params, chosen, _seed_for(chosen, seed))
