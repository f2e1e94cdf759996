"""Finite tournaments on ``{0, ..., v-1}`` as orientation bitsets.

Bit ``pair_index(i, j)`` (``i < j``) of ``Tournament.arcs`` is set iff
``i -> j``; clear means ``j -> i``. Reversing every arc is an XOR with the
all-ones mask, and the boolean sum of two tournaments on the same vertex
set is the graph whose edge bits are the XOR of their orientations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from .combinatorics import binomial, mask_elements, pair_index, pairs, subset_masks
from .config import MAX_CANONICAL_ORDER, check_ground_set
from .errors import ParseError, PreconditionError, ResourceCapError
from .graphs import Graph, full_pairs, induced_code, induced_codes
from .reconstruction import Family


@dataclass(frozen=True)
class Tournament:
    v: int
    arcs: int = 0

    def __post_init__(self) -> None:
        check_ground_set(self.v)
        if not 0 <= self.arcs < 1 << binomial(self.v, 2):
            raise PreconditionError("orientation bits past C(v, 2)")

    @classmethod
    def from_arcs(cls, v: int, arcs: Iterable[Sequence[int]]) -> Tournament:
        """Build from ``(x, y)`` pairs meaning ``x -> y``; every pair exactly once."""
        bits = 0
        seen = set()
        for x, y in arcs:
            if x == y or not (0 <= x < v and 0 <= y < v):
                raise PreconditionError(f"bad arc ({x}, {y}) for v={v}")
            key = (min(x, y), max(x, y))
            if key in seen:
                raise PreconditionError(f"pair {key} oriented twice")
            seen.add(key)
            if x < y:
                bits |= 1 << pair_index(x, y)
        if len(seen) != binomial(v, 2):
            raise PreconditionError(f"{binomial(v, 2) - len(seen)} pairs left unoriented")
        return cls(v, bits)

    @classmethod
    def chain(cls, n: int) -> Tournament:
        """The transitive tournament ``O_n`` with ``x -> y`` iff ``x < y``."""
        return cls(n, full_pairs(n))

    def beats(self, x: int, y: int) -> bool:
        if x == y:
            raise PreconditionError("a vertex does not play itself")
        bit = self.arcs >> pair_index(x, y) & 1
        return bool(bit) if x < y else not bit

    def out_degree(self, x: int) -> int:
        return sum(1 for y in range(self.v) if y != x and self.beats(x, y))

    def out_degrees(self) -> tuple[int, ...]:
        return tuple(self.out_degree(x) for x in range(self.v))

    def arc_list(self) -> list[tuple[int, int]]:
        return [(i, j) if self.arcs >> k & 1 else (j, i) for k, (i, j) in enumerate(pairs(self.v))]

    def induced(self, vertices: Sequence[int]) -> Tournament:
        """Subtournament on ``vertices``, relabelled by position.

        Positions keep the orientation: position ``a`` beats ``b`` iff
        ``vertices[a]`` beats ``vertices[b]``.
        """
        bits = 0
        for (a, b) in pairs(len(vertices)):
            if self.beats(vertices[a], vertices[b]):
                bits |= 1 << pair_index(a, b)
        return Tournament(len(vertices), bits)


def dual(t: Tournament) -> Tournament:
    """Reverse every arc."""
    return Tournament(t.v, t.arcs ^ full_pairs(t.v))


def cycle3() -> Tournament:
    return Tournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


def cycle4() -> Tournament:
    return Tournament.from_arcs(4, [(0, 3), (0, 1), (3, 1), (1, 2), (2, 0), (2, 3)])


def diamond_plus() -> Tournament:
    """A 3-cycle on ``{0,1,2}`` beating vertex 3."""
    return Tournament.from_arcs(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])


def diamond_minus() -> Tournament:
    return dual(diamond_plus())


def boolean_sum(t: Tournament, t2: Tournament) -> Graph:
    """Graph of the pairs on which the two tournaments disagree."""
    if t.v != t2.v:
        raise PreconditionError(f"vertex counts differ: {t.v} vs {t2.v}")
    return Graph(t.v, t.arcs ^ t2.arcs)


# ---------------------------------------------------------------------------
# text format


def parse_tournament(text: str) -> Tournament:
    header = None
    arcs: dict[tuple[int, int], tuple[int, int]] = {}
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        last = lineno
        parts = line.split()
        if header is None:
            if len(parts) != 2 or parts[0] != "v":
                raise ParseError("expected header 'v <n>'", lineno)
            header = _parse_int(parts[1], lineno)
            check_ground_set(header)
            continue
        if len(parts) != 3 or parts[0] != "a":
            raise ParseError(f"expected 'a <i> <j>', got {line!r}", lineno)
        i, j = _parse_int(parts[1], lineno), _parse_int(parts[2], lineno)
        if i == j:
            raise ParseError(f"loop at vertex {i}", lineno)
        if not (0 <= i < header and 0 <= j < header):
            raise ParseError(f"vertex out of range 0..{header - 1}", lineno)
        key = (min(i, j), max(i, j))
        if key in arcs:
            raise ParseError(f"pair {key[0]} {key[1]} oriented twice", lineno)
        arcs[key] = (i, j)
    if header is None:
        raise ParseError("missing header 'v <n>'", 1)
    missing = [pq for pq in pairs(header) if pq not in arcs]
    if missing:
        i, j = missing[0]
        raise ParseError(f"{len(missing)} pairs missing an arc, first {i} {j}", last + 1)
    return Tournament.from_arcs(header, arcs.values())


def serialize_tournament(t: Tournament) -> str:
    """Header plus one ``a i j`` line per pair, pairs in colex order."""
    return "\n".join([f"v {t.v}"] + [f"a {x} {y}" for x, y in t.arc_list()]) + "\n"


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


# ---------------------------------------------------------------------------
# 3-cycles and 4-vertex classes


@lru_cache(maxsize=None)
def _cycle3_codes() -> frozenset[int]:
    # pairs (0,1), (0,2), (1,2) are bits 0, 1, 2; a triple is cyclic iff
    # 0->1 and 1->2 agree in direction while 0->2 goes against them
    return frozenset(c for c in range(8) if (c & 1) == (c >> 2 & 1) != (c >> 1 & 1))


def cycle3_bits(arcs: int, v: int) -> int:
    cyc = _cycle3_codes()
    bits = 0
    for i, c in enumerate(induced_codes(arcs, v, 3)):
        if c in cyc:
            bits |= 1 << i
    return bits


def three_cycles(t: Tournament) -> Family:
    if t.v < 3:
        raise PreconditionError("three_cycles needs v >= 3")
    return Family(t.v, 3, cycle3_bits(t.arcs, t.v))


def c3_count(t: Tournament) -> int:
    if t.v < 3:
        return 0
    return cycle3_bits(t.arcs, t.v).bit_count()


class SubtournamentClass4(str, enum.Enum):
    CHAIN4 = "Chain4"
    CYCLE4 = "Cycle4"
    DIAMOND_PLUS = "DiamondPlus"
    DIAMOND_MINUS = "DiamondMinus"


def _classify4_code(code: int) -> SubtournamentClass4:
    t = Tournament(4, code)
    c3 = c3_count(t)
    if c3 == 0:
        return SubtournamentClass4.CHAIN4
    if c3 == 2:
        return SubtournamentClass4.CYCLE4
    if c3 != 1:
        raise AssertionError(f"4-vertex tournament with {c3} 3-cycles")
    # the vertex outside the 3-cycle is a sink for delta+ and a source for delta-
    if 0 in t.out_degrees():
        return SubtournamentClass4.DIAMOND_PLUS
    return SubtournamentClass4.DIAMOND_MINUS


@lru_cache(maxsize=None)
def _class4_table() -> tuple[SubtournamentClass4, ...]:
    return tuple(_classify4_code(c) for c in range(64))


def classify_4(t: Tournament, s) -> SubtournamentClass4:
    el = s.elements if hasattr(s, "elements") else tuple(sorted(s))
    if len(el) != 4:
        raise PreconditionError(f"classify_4 needs a 4-subset, got {len(el)} elements")
    return _class4_table()[induced_code(t.arcs, tuple(el))]


def diamond_bits(arcs: int, v: int) -> tuple[int, int]:
    table = _class4_table()
    plus = minus = 0
    for i, c in enumerate(induced_codes(arcs, v, 4)):
        tag = table[c]
        if tag is SubtournamentClass4.DIAMOND_PLUS:
            plus |= 1 << i
        elif tag is SubtournamentClass4.DIAMOND_MINUS:
            minus |= 1 << i
    return plus, minus


def diamond_sets(t: Tournament) -> tuple[Family, Family]:
    if t.v < 4:
        raise PreconditionError("diamond_sets needs v >= 4")
    plus, minus = diamond_bits(t.arcs, t.v)
    return Family(t.v, 4, plus), Family(t.v, 4, minus)


def is_diamond_free(t: Tournament) -> bool:
    return t.v < 4 or diamond_bits(t.arcs, t.v) == (0, 0)


# ---------------------------------------------------------------------------
# isomorphism


def _vertex_invariants(n: int, arcs: int) -> list[tuple[int, tuple[int, ...]]]:
    t = Tournament(n, arcs)
    deg = t.out_degrees()
    return [
        (deg[x], tuple(sorted(deg[y] for y in range(n) if y != x and t.beats(x, y))))
        for x in range(n)
    ]


@lru_cache(maxsize=1 << 16)
def canonical_code(n: int, arcs: int) -> tuple[int, int]:
    """Least relabelled orientation over orderings that respect vertex invariants.

    Vertices are sorted by (out-degree, sorted out-degrees of their
    out-neighbours); only permutations inside invariant classes are tried,
    which is enough because any isomorphism preserves these invariants.
    """
    if n > MAX_CANONICAL_ORDER:
        raise ResourceCapError(f"canonical forms are capped at {MAX_CANONICAL_ORDER} vertices, got {n}")
    inv = _vertex_invariants(n, arcs)
    classes: dict = {}
    for x in range(n):
        classes.setdefault(inv[x], []).append(x)
    blocks = [classes[key] for key in sorted(classes)]
    best = None
    for choice in product(*(permutations(b) for b in blocks)):
        order = tuple(x for block in choice for x in block)
        code = induced_code_tournament(arcs, order)
        if best is None or code < best:
            best = code
    return (n, best)


def induced_code_tournament(arcs: int, vertices: tuple[int, ...]) -> int:
    """Orientation bits of the subtournament on ``vertices`` relabelled by position."""
    code = 0
    for (a, b) in pairs(len(vertices)):
        x, y = vertices[a], vertices[b]
        bit = arcs >> pair_index(x, y) & 1
        if (bit if x < y else not bit):
            code |= 1 << pair_index(a, b)
    return code


def canonical_form(t: Tournament) -> Tournament:
    return Tournament(t.v, canonical_code(t.v, t.arcs)[1])


def is_isomorphic(t: Tournament, t2: Tournament) -> bool:
    """Canonical codes up to the cap; backtracking with invariants above it."""
    if t.v != t2.v:
        return False
    if t.v <= MAX_CANONICAL_ORDER:
        return canonical_code(t.v, t.arcs) == canonical_code(t2.v, t2.arcs)
    return find_isomorphism(t, t2) is not None


def find_isomorphism(t: Tournament, t2: Tournament) -> tuple[int, ...] | None:
    """A vertex map ``f`` with ``x -> y`` in ``t`` iff ``f(x) -> f(y)`` in ``t2``."""
    if t.v != t2.v:
        return None
    n = t.v
    inv1 = _vertex_invariants(n, t.arcs)
    inv2 = _vertex_invariants(n, t2.arcs)
    if sorted(inv1) != sorted(inv2):
        return None
    order = sorted(range(n), key=lambda x: inv1[x])
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        x = order[pos]
        for y in range(n):
            if y in used or inv2[y] != inv1[x]:
                continue
            if all(t.beats(x, a) == t2.beats(y, image[a]) for a in order[:pos]):
                image[x] = y
                used.add(y)
                if extend(pos + 1):
                    return True
                del image[x]
                used.discard(y)
        return False

    if not extend(0):
        return None
    return tuple(image[x] for x in range(n))


def _sub_canon(t: Tournament, mask: int) -> tuple[int, int]:
    el = mask_elements(mask)
    return canonical_code(len(el), induced_code_tournament(t.arcs, el))


def is_k_hypomorphic(t: Tournament, t2: Tournament, k: int, up_to_duality: bool = False) -> bool:
    """Every ``k``-subset induces isomorphic subtournaments (or, with the flag,
    ``t2``'s restriction is isomorphic to ``t``'s or to its dual)."""
    if t.v != t2.v:
        raise PreconditionError(f"vertex counts differ: {t.v} vs {t2.v}")
    if k > MAX_CANONICAL_ORDER:
        raise ResourceCapError(f"hypomorphy is capped at k <= {MAX_CANONICAL_ORDER}, got {k}")
    if not 0 <= k <= t.v:
        raise PreconditionError(f"need 0 <= k <= v, got k={k}, v={t.v}")
    if k <= 2:
        return True
    td = dual(t)
    for mask in subset_masks(t.v, k):
        c2 = _sub_canon(t2, mask)
        if c2 == _sub_canon(t, mask):
            continue
        if up_to_duality and c2 == _sub_canon(td, mask):
            continue
        return False
    return True


def is_le_k_hypomorphic(t: Tournament, t2: Tournament, k: int, up_to_duality: bool = False) -> bool:
    return all(is_k_hypomorphic(t, t2, h, up_to_duality) for h in range(1, min(k, t.v) + 1))


def is_hereditarily_isomorphic(t: Tournament, t2: Tournament) -> bool:
    """Every vertex subset induces isomorphic subtournaments."""
    if t.v != t2.v:
        raise PreconditionError(f"vertex counts differ: {t.v} vs {t2.v}")
    for mask in range(1, 1 << t.v):
        el = mask_elements(mask)
        if len(el) <= 2:
            continue
        a = t.induced(el)
        b = t2.induced(el)
        if a.arcs != b.arcs and not is_isomorphic(a, b):
            return False
    return True


# ---------------------------------------------------------------------------
# intervals and the difference relation


def is_interval(t: Tournament, xs: Iterable[int]) -> bool:
    """No outside vertex distinguishes two members."""
    members = sorted(set(xs))
    if any(not 0 <= x < t.v for x in members):
        raise PreconditionError("interval members outside the vertex set")
    inside = set(members)
    for z in range(t.v):
        if z in inside:
            continue
        outs = {t.beats(a, z) for a in members}
        if len(outs) > 1:
            return False
    return True


def interval_closure(t: Tournament, xs: Iterable[int]) -> frozenset[int]:
    """The least interval containing ``xs``."""
    inside = set(xs)
    changed = True
    while changed:
        changed = False
        for z in range(t.v):
            if z in inside:
                continue
            if len({t.beats(a, z) for a in inside}) > 1:
                inside.add(z)
                changed = True
    return frozenset(inside)


@dataclass(frozen=True)
class DifferencePartition:
    classes: tuple[frozenset[int], ...]

    def class_of(self, x: int) -> frozenset[int]:
        return next(c for c in self.classes if x in c)

    @property
    def nontrivial(self) -> tuple[frozenset[int], ...]:
        return tuple(c for c in self.classes if len(c) > 1)


def difference_classes(t: Tournament, t2: Tournament) -> DifferencePartition:
    """Components of the boolean-sum graph; classes sorted by least element."""
    if t.v != t2.v:
        raise PreconditionError(f"vertex counts differ: {t.v} vs {t2.v}")
    parent = list(range(t.v))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    diff = t.arcs ^ t2.arcs
    for k, (i, j) in enumerate(pairs(t.v)):
        if diff >> k & 1:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, set[int]] = {}
    for x in range(t.v):
        groups.setdefault(find(x), set()).add(x)
    return DifferencePartition(tuple(frozenset(g) for _, g in sorted(groups.items())))


# ---------------------------------------------------------------------------
# circular tournaments and lexicographic sums


def circular_tournament(h: int) -> Tournament:
    """``T_{2h+1}``: chains on ``{0..h}`` and ``{h+1..2h}``, and for each
    ``i < h`` the vertices ``i+1..h`` beat ``i+h+1``, which beats ``0..i``."""
    if h < 0:
        raise PreconditionError(f"h must be non-negative, got {h}")
    n = 2 * h + 1
    arcs = []
    for x in range(h + 1):
        for y in range(x + 1, h + 1):
            arcs.append((x, y))
    for x in range(h + 1, n):
        for y in range(x + 1, n):
            arcs.append((x, y))
    for i in range(h):
        z = i + h + 1
        arcs += [(x, z) for x in range(i + 1, h + 1)]
        arcs += [(z, x) for x in range(i + 1)]
    return Tournament.from_arcs(n, arcs)


def rotational_tournament(n: int) -> Tournament:
    """Odd ``n``: ``x`` beats ``x+1, ..., x+(n-1)/2`` mod ``n``."""
    if n < 1 or n % 2 == 0:
        raise PreconditionError(f"needs odd n >= 1, got {n}")
    h = n // 2
    return Tournament.from_arcs(n, [(x, (x + d) % n) for x in range(n) for d in range(1, h + 1)])


def lexicographic_sum(skeleton: Tournament, components: Sequence[Tournament]) -> Tournament:
    """Replace vertex ``i`` of the skeleton by ``components[i]``; blocks are
    numbered consecutively in skeleton order."""
    if len(components) != skeleton.v:
        raise PreconditionError(f"{skeleton.v} skeleton vertices but {len(components)} components")
    if any(c.v == 0 for c in components):
        raise PreconditionError("components must be nonempty")
    owner = []
    local = []
    for i, c in enumerate(components):
        owner += [i] * c.v
        local += list(range(c.v))
    n = len(owner)
    check_ground_set(n)
    bits = 0
    for k, (x, y) in enumerate(pairs(n)):
        bx, by = owner[x], owner[y]
        if bx == by:
            win = components[bx].beats(local[x], local[y])
        else:
            win = skeleton.beats(bx, by)
        if win:
            bits |= 1 << k
    return Tournament(n, bits)


def circular_dilation(lengths: Sequence[int]) -> Tournament:
    """``T_{2h+1}(O_{p_0}, ..., O_{p_{2h}})`` for an odd number of positive lengths."""
    if len(lengths) % 2 == 0:
        raise PreconditionError(f"needs an odd number of blocks, got {len(lengths)}")
    return lexicographic_sum(circular_tournament(len(lengths) // 2), [Tournament.chain(n) for n in lengths])


def beta6_plus() -> Tournament:
    return lexicographic_sum(circular_tournament(1), [Tournament.chain(3), Tournament.chain(2), Tournament.chain(1)])


def beta6_minus() -> Tournament:
    return dual(beta6_plus())


def beta6_bits(arcs: int, v: int) -> tuple[int, int]:
    plus_code = canonical_code(6, beta6_plus().arcs)
    minus_code = canonical_code(6, beta6_minus().arcs)
    plus = minus = 0
    for i, mask in enumerate(subset_masks(v, 6)):
        c = canonical_code(6, induced_code_tournament(arcs, mask_elements(mask)))
        if c == plus_code:
            plus |= 1 << i
        elif c == minus_code:
            minus |= 1 << i
    return plus, minus


def beta6_sets(t: Tournament) -> tuple[Family, Family]:
    if t.v < 6:
        raise PreconditionError("beta6_sets needs v >= 6")
    plus, minus = beta6_bits(t.arcs, t.v)
    return Family(t.v, 6, plus), Family(t.v, 6, minus)


def is_chain(t: Tournament) -> bool:
    return sorted(t.out_degrees()) == list(range(t.v))


@dataclass(frozen=True)
class CircularDecomposition:
    """``t`` is ``T_{2h+1}`` dilated by chains with the given lengths; ``blocks[i]``
    lists block ``i``'s vertices from its first to its last chain element."""

    h: int
    lengths: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]


def _chain_order(t: Tournament, xs: Iterable[int]) -> tuple[int, ...]:
    xs = list(xs)
    return tuple(sorted(xs, key=lambda x: -sum(1 for y in xs if y != x and t.beats(x, y))))


def recognize_circular_decomposition(t: Tournament) -> CircularDecomposition | None:
    """Write a diamond-free tournament as a chain dilation of ``T_{2h+1}``.

    Returns ``None`` when a diamond is present. Blocks are the classes of
    ``x ~ y`` iff the least interval containing ``{x, y}`` is not everything;
    the quotient is then matched against ``T_{2h+1}`` and the labelling with
    the lexicographically least length sequence is returned.
    """
    n = t.v
    if n == 0:
        return CircularDecomposition(0, (), ())
    if not is_diamond_free(t):
        return None
    if is_chain(t):
        return CircularDecomposition(0, (n,), (_chain_order(t, range(n)),))
    everything = frozenset(range(n))
    block_of = list(range(n))
    for x in range(n):
        for y in range(x + 1, n):
            if block_of[y] == y and interval_closure(t, (x, y)) != everything:
                block_of[y] = block_of[x]
    reps = sorted(set(block_of))
    blocks = {r: [x for x in range(n) if block_of[x] == r] for r in reps}
    for r in reps:
        members = blocks[r]
        if not is_interval(t, members) or not is_chain(t.induced(members)):
            raise AssertionError(f"block {members} is not a chain interval of a diamond-free tournament")
    m = len(reps)
    if m % 2 == 0 or m < 3:
        raise AssertionError(f"quotient of order {m} cannot be circular")
    h = m // 2
    quotient = t.induced(reps)
    target = circular_tournament(h)
    best = None
    for start in range(m):
        outs = [q for q in range(m) if q != start and quotient.beats(start, q)]
        ins = [q for q in range(m) if q != start and quotient.beats(q, start)]
        if len(outs) != h:
            continue
        # circular labels: start is 0, its out-neighbours 1..h and
        # in-neighbours h+1..2h, each run ordered as a chain
        label = {start: 0}
        for base, run in ((1, outs), (h + 1, ins)):
            for q in run:
                label[q] = base + sum(1 for r in run if r != q and quotient.beats(r, q))
        if sorted(label.values()) != list(range(m)):
            continue
        at = [0] * m
        for q, lab in label.items():
            at[lab] = q
        if quotient.induced(at).arcs != target.arcs:
            continue
        lengths = tuple(len(blocks[reps[q]]) for q in at)
        cand = (lengths, tuple(_chain_order(t, blocks[reps[q]]) for q in at))
        if best is None or cand < best:
            best = cand
    if best is None:
        raise AssertionError("diamond-free tournament whose quotient is not circular")
    return CircularDecomposition(h, best[0], best[1])


def all_tournaments(v: int) -> Iterable[Tournament]:
    for bits in range(1 << binomial(v, 2)):
        yield Tournament(v, bits)


__all__ = [
    "CircularDecomposition",
    "all_tournaments",
    "DifferencePartition",
    "SubtournamentClass4",
    "Tournament",
    "beta6_minus",
    "beta6_plus",
    "beta6_sets",
    "boolean_sum",
    "c3_count",
    "canonical_code",
    "circular_dilation",
    "circular_tournament",
    "classify_4",
    "cycle3",
    "cycle4",
    "diamond_minus",
    "diamond_plus",
    "diamond_sets",
    "difference_classes",
    "dual",
    "find_isomorphism",
    "interval_closure",
    "is_chain",
    "is_diamond_free",
    "is_hereditarily_isomorphic",
    "is_interval",
    "is_isomorphic",
    "is_k_hypomorphic",
    "is_le_k_hypomorphic",
    "lexicographic_sum",
    "parse_tournament",
    "recognize_circular_decomposition",
    "rotational_tournament",
    "serialize_tournament",
    "three_cycles",
]
