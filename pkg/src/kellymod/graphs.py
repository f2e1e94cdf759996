"""Finite simple graphs on ``{0, ..., v-1}`` as edge bitsets.

Bit ``pair_index(i, j)`` of ``Graph.edges`` is set iff ``{i, j}`` is an edge;
pairs are ranked in colex order. Induced statistics over many subsets go
through precomputed pair masks so each one is an AND plus a popcount.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .combinatorics import (
    SubsetCode,
    binomial,
    mask_elements,
    pair_index,
    pairs,
    subset_masks,
)
from .config import check_ground_set
from .errors import ParseError, PreconditionError, ResourceCapError
from .reconstruction import Family

MAX_PATTERN = 5
MAX_COUNT_ORDER = 12


@dataclass(frozen=True)
class Graph:
    v: int
    edges: int = 0

    def __post_init__(self) -> None:
        check_ground_set(self.v)
        if not 0 <= self.edges < 1 << binomial(self.v, 2):
            raise PreconditionError("edge bits past C(v, 2)")

    @classmethod
    def from_edges(cls, v: int, edge_list: Iterable[Sequence[int]]) -> Graph:
        bits = 0
        for i, j in edge_list:
            if not (0 <= i < v and 0 <= j < v):
                raise PreconditionError(f"edge ({i}, {j}) outside 0..{v - 1}")
            bits |= 1 << pair_index(i, j)
        return cls(v, bits)

    @classmethod
    def complete(cls, v: int) -> Graph:
        return cls(v, full_pairs(v))

    @classmethod
    def empty(cls, v: int) -> Graph:
        return cls(v, 0)

    @classmethod
    def cycle(cls, v: int) -> Graph:
        return cls.from_edges(v, [(i, (i + 1) % v) for i in range(v)])

    @classmethod
    def path(cls, v: int) -> Graph:
        return cls.from_edges(v, [(i, i + 1) for i in range(v - 1)])

    @classmethod
    def star(cls, v: int, center: int = 0) -> Graph:
        return cls.from_edges(v, [(center, x) for x in range(v) if x != center])

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.edges >> pair_index(i, j) & 1)

    @property
    def edge_count(self) -> int:
        return self.edges.bit_count()

    def edge_list(self) -> list[tuple[int, int]]:
        return [p for k, p in enumerate(pairs(self.v)) if self.edges >> k & 1]

    def degree(self, x: int) -> int:
        return sum(1 for y in range(self.v) if y != x and self.has_edge(x, y))

    def complement(self) -> Graph:
        return Graph(self.v, self.edges ^ full_pairs(self.v))

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph relabelled to ``0..len(vertices)-1`` in the given order."""
        return Graph(len(vertices), induced_code(self.edges, tuple(vertices)))

    def delete_vertex(self, x: int) -> Graph:
        return self.induced([y for y in range(self.v) if y != x])


@lru_cache(maxsize=None)
def full_pairs(v: int) -> int:
    return (1 << binomial(v, 2)) - 1


def induced_code(bits: int, vertices: tuple[int, ...]) -> int:
    """Pair bitset of the structure induced on ``vertices`` (positions become labels)."""
    code = 0
    for (a, b) in pairs(len(vertices)):
        if bits >> pair_index(vertices[a], vertices[b]) & 1:
            code |= 1 << pair_index(a, b)
    return code


@lru_cache(maxsize=None)
def _local_pair_indices(v: int, card: int) -> tuple[tuple[int, ...], ...]:
    """For each ``card``-subset in colex order, the global pair indices in local pair order."""
    out = []
    for mask in subset_masks(v, card):
        el = mask_elements(mask)
        out.append(tuple(pair_index(el[a], el[b]) for a, b in pairs(card)))
    return tuple(out)


def induced_codes(bits: int, v: int, card: int) -> list[int]:
    """Induced pair bitsets for every ``card``-subset, colex order."""
    out = []
    for idx in _local_pair_indices(v, card):
        code = 0
        for k, g in enumerate(idx):
            if bits >> g & 1:
                code |= 1 << k
        out.append(code)
    return out


@lru_cache(maxsize=None)
def subset_pair_masks(v: int, card: int) -> tuple[int, ...]:
    """Pair bitmask of each ``card``-subset, colex order."""
    return tuple(sum(1 << g for g in idx) for idx in _local_pair_indices(v, card))


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    header = None
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2 or parts[0] != "v":
                raise ParseError("expected header 'v <n>'", lineno)
            header = _parse_int(parts[1], lineno)
            check_ground_set(header)
            continue
        if len(parts) != 3 or parts[0] != "e":
            raise ParseError(f"expected 'e <i> <j>', got {line!r}", lineno)
        i, j = _parse_int(parts[1], lineno), _parse_int(parts[2], lineno)
        if i == j:
            raise ParseError(f"loop at vertex {i}", lineno)
        if not (0 <= i < header and 0 <= j < header):
            raise ParseError(f"vertex out of range 0..{header - 1}", lineno)
        if i > j:
            raise ParseError(f"edge must be written with i < j, got {i} {j}", lineno)
        if (i, j) in seen:
            raise ParseError(f"duplicate edge {i} {j}", lineno)
        seen.add((i, j))
    if header is None:
        raise ParseError("missing header 'v <n>'", 1)
    return Graph.from_edges(header, seen)


def serialize_graph(g: Graph) -> str:
    out = [f"v {g.v}"]
    out += [f"e {i} {j}" for i, j in g.edge_list()]
    return "\n".join(out) + "\n"


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


# ---------------------------------------------------------------------------
# induced statistics


def induced_edge_count(g: Graph, k_set: SubsetCode, method: str = "bits") -> int:
    """Edges of ``g`` with both ends in ``k_set``."""
    if k_set.mask >> g.v:
        raise PreconditionError(f"{k_set} is not inside the vertex set of size {g.v}")
    if method == "bits":
        return (g.edges & _pair_mask_of(k_set.mask)).bit_count()
    if method == "naive":
        el = k_set.elements
        return sum(1 for a in range(len(el)) for b in range(a + 1, len(el)) if g.has_edge(el[a], el[b]))
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=4096)
def _pair_mask_of(mask: int) -> int:
    el = mask_elements(mask)
    m = 0
    for a in range(len(el)):
        for b in range(a + 1, len(el)):
            m |= 1 << pair_index(el[a], el[b])
    return m


def edge_count_vector(edges: int, v: int, k: int) -> tuple[int, ...]:
    return tuple((edges & m).bit_count() for m in subset_pair_masks(v, k))


def _homogeneous_flags(edges: int, v: int) -> list[bool]:
    return [(edges & m) in (0, m) for m in subset_pair_masks(v, 3)]


def homogeneous_bits(edges: int, v: int) -> int:
    """Packed indicator (over colex triples) of the 3-homogeneous sets."""
    bits = 0
    for i, m in enumerate(subset_pair_masks(v, 3)):
        if edges & m in (0, m):
            bits |= 1 << i
    return bits


def three_homogeneous_sets(g: Graph) -> Family:
    """Triples spanning a triangle in ``g`` or in its complement."""
    if g.v < 3:
        raise PreconditionError("three_homogeneous_sets needs v >= 3")
    return Family(g.v, 3, homogeneous_bits(g.edges, g.v))


def _degrees4(code: int) -> list[int]:
    deg = [0] * 4
    for k, (a, b) in enumerate(pairs(4)):
        if code >> k & 1:
            deg[a] += 1
            deg[b] += 1
    return deg


@lru_cache(maxsize=None)
def _p4_table() -> tuple[bool, ...]:
    """P4 recognition for the 64 labelled graphs on 4 vertices.

    Three edges with degrees {1,1,2,2} can only be a path: a triangle gives
    {0,2,2,2} and a star {1,1,1,3}.
    """
    return tuple(
        code.bit_count() == 3 and sorted(_degrees4(code)) == [1, 1, 2, 2] for code in range(64)
    )


@lru_cache(maxsize=None)
def _claw_table() -> tuple[bool, ...]:
    return tuple(
        code.bit_count() == 3 and sorted(_degrees4(code)) == [1, 1, 1, 3] for code in range(64)
    )


def p4_bits(edges: int, v: int) -> int:
    table = _p4_table()
    bits = 0
    for i, code in enumerate(induced_codes(edges, v, 4)):
        if table[code]:
            bits |= 1 << i
    return bits


def p4_sets(g: Graph) -> Family:
    """4-subsets inducing a path on four vertices."""
    if g.v < 4:
        raise PreconditionError("p4_sets needs v >= 4")
    return Family(g.v, 4, p4_bits(g.edges, g.v))


def boolean_sum(g: Graph, g2: Graph) -> Graph:
    """Pairs on which exactly one of the graphs has an edge."""
    if g.v != g2.v:
        raise PreconditionError(f"vertex counts differ: {g.v} vs {g2.v}")
    return Graph(g.v, g.edges ^ g2.edges)


def is_complete_bipartite(g: Graph) -> bool:
    """Whether the edges are exactly the pairs across some split ``V = A ∪ B``.

    One side may be empty, so the empty graph qualifies.
    """
    if g.edges == 0:
        return True
    side = [0] + [x for x in range(1, g.v) if not g.has_edge(0, x)]
    other = [x for x in range(g.v) if x not in side]
    cut = Graph.from_edges(g.v, [(a, b) for a in side for b in other])
    return cut.edges == g.edges


def is_claw_free(g: Graph) -> bool:
    if g.v < 4:
        return True
    table = _claw_table()
    return not any(table[c] for c in induced_codes(g.edges, g.v, 4))


# ---------------------------------------------------------------------------
# induced copies of small patterns


@lru_cache(maxsize=None)
def _labelled_copies(pattern: Graph) -> frozenset[int]:
    return frozenset(
        induced_code(pattern.edges, perm) for perm in permutations(range(pattern.v))
    )


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Permutation search; intended for patterns of at most five vertices."""
    if g.v != h.v or g.edge_count != h.edge_count:
        return False
    return h.edges in _labelled_copies(g)


def count_induced_copies(g: Graph, pattern: Graph) -> int:
    """Number of vertex subsets of ``g`` inducing a copy of ``pattern``."""
    if pattern.v > MAX_PATTERN:
        raise ResourceCapError(f"patterns are capped at {MAX_PATTERN} vertices, got {pattern.v}")
    if g.v > MAX_COUNT_ORDER:
        raise ResourceCapError(f"host graphs are capped at {MAX_COUNT_ORDER} vertices, got {g.v}")
    if pattern.v > g.v:
        raise PreconditionError("pattern larger than host graph")
    copies = _labelled_copies(pattern)
    return sum(1 for c in induced_codes(g.edges, g.v, pattern.v) if c in copies)


def kelly_identity_holds(pattern: Graph, g: Graph) -> bool:
    """``s(F, G) (|G| - |F|) = sum_x s(F, G - x)``."""
    lhs = count_induced_copies(g, pattern) * (g.v - pattern.v)
    rhs = sum(count_induced_copies(g.delete_vertex(x), pattern) for x in range(g.v))
    return lhs == rhs


def all_graphs(v: int) -> Iterable[Graph]:
    for bits in range(1 << binomial(v, 2)):
        yield Graph(v, bits)


def four_vertex_graphs() -> list[Graph]:
    return list(all_graphs(4))


def kernel_vector_graph(v: int, vec: Sequence[int]) -> Graph:
    """Graph whose edge indicator is a 0/1 vector over colex pairs."""
    return Graph(v, sum(1 << i for i, x in enumerate(vec) if x % 2))


__all__ = [
    "Graph",
    "boolean_sum",
    "count_induced_copies",
    "edge_count_vector",
    "homogeneous_bits",
    "induced_edge_count",
    "is_claw_free",
    "is_complete_bipartite",
    "is_isomorphic",
    "kelly_identity_holds",
    "p4_bits",
    "p4_sets",
    "parse_graph",
    "serialize_graph",
    "three_homogeneous_sets",
]
