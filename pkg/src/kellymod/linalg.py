"""Exact matrix arithmetic over GF(p), Q and Z.

GF(2) matrices keep each row as a Python int (bit ``j`` is column ``j``) so a
row operation is a single XOR. Other primes use a dense ``uint8`` array and
vectorised row operations. Rational rank uses fraction-free elimination on
big integers; the Smith normal form uses elementary row and column moves with
the smallest-magnitude pivot.

Kernels are *left* kernels ``{x : x M = 0}`` so that row indices keep their
meaning; nothing here builds a transpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .combinatorics import require_prime
from .config import SNF_MAX_DIM
from .errors import PreconditionError, ResourceCapError

MAX_BYTE_PRIME = 251


class IntegerMatrix:
    """Immutable dense matrix of Python ints."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Sequence[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in entries)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise PreconditionError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int, cols: int) -> IntegerMatrix:
        if len(diag) > min(rows, cols):
            raise PreconditionError("diagonal longer than the shape allows")
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            m[i][i] = d
        return cls(m, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntegerMatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}x{self.cols})"

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.entries]

    def col_sums(self) -> list[int]:
        return [sum(col) for col in zip(*self.entries)] if self.rows else [0] * self.cols

    def vecmul(self, x: Sequence[int]) -> list[int]:
        """Row vector times matrix."""
        if len(x) != self.rows:
            raise PreconditionError("vector length does not match row count")
        out = [0] * self.cols
        for xi, row in zip(x, self.entries):
            if xi:
                for j, a in enumerate(row):
                    if a:
                        out[j] += xi * a
        return out

    def reduce_mod(self, p: int) -> ResidueMatrix:
        return ResidueMatrix.from_rows([[x % p for x in r] for r in self.entries], p, self.cols)


class ResidueMatrix:
    """Immutable matrix over GF(p).

    For ``p = 2`` the rows are bit-packed ints; otherwise a read-only
    ``uint8`` array holds the residues.
    """

    __slots__ = ("p", "rows", "cols", "_bits", "_array")

    def __init__(self, p: int, rows: int, cols: int, bits=None, array=None):
        require_prime(p)
        if p > MAX_BYTE_PRIME:
            raise PreconditionError(f"prime modulus must be <= {MAX_BYTE_PRIME}, got {p}")
        self.p = p
        self.rows = rows
        self.cols = cols
        self._bits: tuple[int, ...] | None = None
        self._array: np.ndarray | None = None
        if p == 2:
            if bits is None:
                raise PreconditionError("GF(2) matrix needs bit rows")
            self._bits = tuple(bits)
            if len(self._bits) != rows:
                raise PreconditionError("row count mismatch")
        else:
            arr = np.asarray(array, dtype=np.uint8).reshape(rows, cols).copy()
            if arr.size and int(arr.max()) >= p:
                raise PreconditionError("residue out of range")
            arr.flags.writeable = False
            self._array = arr

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> ResidueMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if p == 2:
            bits = []
            for r in rows:
                if len(r) != cols:
                    raise PreconditionError("ragged matrix rows")
                b = 0
                for j, x in enumerate(r):
                    if x % 2:
                        b |= 1 << j
                bits.append(b)
            return cls(2, len(rows), cols, bits=bits)
        arr = np.array([[x % p for x in r] for r in rows], dtype=np.int64).reshape(len(rows), cols)
        return cls(p, len(rows), cols, array=arr)

    @classmethod
    def from_bits(cls, bits: Sequence[int], cols: int) -> ResidueMatrix:
        return cls(2, len(bits), cols, bits=bits)

    @classmethod
    def identity(cls, n: int, p: int) -> ResidueMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], p, n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def bit_rows(self) -> tuple[int, ...]:
        if self._bits is None:
            raise AttributeError("bit rows exist only for p = 2")
        return self._bits

    def to_array(self) -> np.ndarray:
        if self._array is not None:
            return self._array.astype(np.int64)
        arr = np.zeros((self.rows, self.cols), dtype=np.int64)
        for i, b in enumerate(self._bits):
            for j in range(self.cols):
                if b >> j & 1:
                    arr[i, j] = 1
        return arr

    def to_lists(self) -> list[list[int]]:
        return self.to_array().tolist()

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if self._bits is not None:
            return self._bits[i] >> j & 1
        return int(self._array[i, j])

    def __repr__(self) -> str:
        return f"ResidueMatrix(p={self.p}, {self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# GF(2) kernels on bit rows


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank of a list of bit-packed rows over GF(2)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            b = basis.get(low)
            if b is None:
                basis[low] = r
                break
            r ^= b
    return len(basis)


def gf2_rref(vectors: Iterable[int]) -> list[int]:
    """Reduced echelon basis of the span, pivots at the lowest set bit, sorted by pivot."""
    basis: dict[int, int] = {}
    for r in vectors:
        for low, b in basis.items():
            if r & low:
                r ^= b
        if not r:
            continue
        low = r & -r
        for k in list(basis):
            if basis[k] & low:
                basis[k] ^= r
        basis[low] = r
    return [basis[k] for k in sorted(basis)]


def gf2_left_kernel(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of ``{x : x M = 0}`` with ``x`` bit-packed over the row indices."""
    n = len(rows)
    work = [r | (1 << (ncols + i)) for i, r in enumerate(rows)]
    low_mask = (1 << ncols) - 1
    r = 0
    for c in range(ncols):
        bit = 1 << c
        piv = next((i for i in range(r, n) if work[i] & bit), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pr = work[r]
        for i in range(r + 1, n):
            if work[i] & bit:
                work[i] ^= pr
        r += 1
        if r == n:
            break
    kernel = [w >> ncols for w in work[r:] if not w & low_mask]
    return gf2_rref(kernel)


def gf2_in_span(vec: int, rref_basis: Sequence[int]) -> bool:
    for b in rref_basis:
        low = b & -b
        if vec & low:
            vec ^= b
    return vec == 0


# ---------------------------------------------------------------------------
# GF(p) elimination on arrays


def _forward_eliminate(a: np.ndarray, p: int, pivot_cols: int) -> int:
    """Row-reduce ``a`` in place on its first ``pivot_cols`` columns; return the rank."""
    nrows = a.shape[0]
    r = 0
    for c in range(pivot_cols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        below = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
    return r


def _rref_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """Reduced row echelon form of ``a`` over GF(p) with zero rows dropped."""
    a = a.copy() % p
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        r += 1
    return a[:r]


def rank_mod_p(m: ResidueMatrix) -> int:
    if m.p == 2:
        return gf2_rank(m.bit_rows)
    if m.rows == 0 or m.cols == 0:
        return 0
    return _forward_eliminate(m.to_array(), m.p, m.cols)


def left_kernel_mod_p(m: ResidueMatrix) -> list[tuple[int, ...]]:
    """Reduced-echelon basis of the left kernel of ``m`` over GF(p)."""
    if m.p == 2:
        basis = gf2_left_kernel(m.bit_rows, m.cols)
        return [tuple(b >> i & 1 for i in range(m.rows)) for b in basis]
    if m.rows == 0:
        return []
    aug = np.hstack([m.to_array(), np.eye(m.rows, dtype=np.int64)])
    r = _forward_eliminate(aug, m.p, m.cols)
    kernel = aug[r:, m.cols :]
    if kernel.shape[0] == 0:
        return []
    return [tuple(int(x) for x in row) for row in _rref_mod_p(kernel, m.p)]


def in_span_mod_p(vec: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> bool:
    """Whether ``vec`` lies in the row space spanned by ``basis`` over GF(p)."""
    if not basis:
        return all(x % p == 0 for x in vec)
    a = np.array(basis, dtype=np.int64) % p
    before = _rref_mod_p(a, p).shape[0]
    after = _rref_mod_p(np.vstack([a, np.array(vec, dtype=np.int64) % p]), p).shape[0]
    return before == after


# ---------------------------------------------------------------------------
# rational rank


def rank_rational(m: IntegerMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Every intermediate entry is a minor of ``m``, so each division is exact.
    """
    rows = [list(r) for r in m.entries if any(r)]
    rank = 0
    prev = 1
    while rows and rows[0]:
        piv = next((i for i, r in enumerate(rows) if r[0]), None)
        if piv is None:
            rows = [r[1:] for r in rows]
            continue
        pr = rows.pop(piv)
        pv = pr[0]
        tail = pr[1:]
        new_rows = []
        for r in rows:
            f = r[0]
            if f:
                nr = [(x * pv - f * y) // prev for x, y in zip(r[1:], tail)]
            else:
                nr = [x * pv // prev for x in r[1:]]
            if any(nr):
                new_rows.append(nr)
        rows = new_rows
        prev = pv
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Smith normal form


def invariant_factors(diagonal: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a diagonal matrix, zeros trailing."""
    nz = [abs(d) for d in diagonal if d]
    zeros = len(diagonal) - len(nz)
    n = len(nz)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = nz[i], nz[j]
            if b % a:
                g = gcd(a, b)
                nz[i], nz[j] = g, a // g * b
    return tuple(nz) + (0,) * zeros


@dataclass(frozen=True)
class DiagonalSpec:
    """A diagonal matrix given as ``(entry, multiplicity)`` runs plus its shape.

    Positions past the listed runs are zero.
    """

    entries: tuple[tuple[int, int], ...]
    shape: tuple[int, int]

    def __post_init__(self) -> None:
        if any(mult < 0 for _, mult in self.entries):
            raise PreconditionError("negative multiplicity")
        if sum(mult for _, mult in self.entries) > min(self.shape):
            raise PreconditionError(
                f"multiplicities sum past the diagonal length of shape {self.shape}"
            )

    @classmethod
    def from_diagonal(cls, diag: Sequence[int], shape: tuple[int, int]) -> DiagonalSpec:
        runs: list[list[int]] = []
        for d in diag:
            if runs and runs[-1][0] == d:
                runs[-1][1] += 1
            else:
                runs.append([d, 1])
        return cls(tuple((d, m) for d, m in runs), tuple(shape))

    def diagonal(self) -> list[int]:
        out = [d for d, mult in self.entries for _ in range(mult)]
        return out + [0] * (min(self.shape) - len(out))

    def invariant_factors(self) -> tuple[int, ...]:
        return invariant_factors(self.diagonal())

    def to_matrix(self) -> IntegerMatrix:
        return IntegerMatrix.diagonal(self.diagonal(), *self.shape)


def _min_abs_entry(a: list[list[int]]) -> tuple[int, int] | None:
    best = None
    best_val = 0
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x and (best is None or abs(x) < best_val):
                best, best_val = (i, j), abs(x)
                if best_val == 1:
                    return best
    return best


def _swap_cols(a: list[list[int]], j: int, k: int) -> None:
    if j != k:
        for row in a:
            row[j], row[k] = row[k], row[j]


def smith_normal_form(m: IntegerMatrix) -> DiagonalSpec:
    """Invariant factors ``d_1 | d_2 | ...`` of ``m`` (nonnegative, zeros last)."""
    if max(m.rows, m.cols) > SNF_MAX_DIM:
        raise ResourceCapError(
            f"Smith normal form capped at dimension {SNF_MAX_DIM}, got {m.rows}x{m.cols}"
        )
    a = [list(r) for r in m.entries]
    diag: list[int] = []
    while a and a[0]:
        pos = _min_abs_entry(a)
        if pos is None:
            break
        i, j = pos
        a[0], a[i] = a[i], a[0]
        _swap_cols(a, 0, j)
        while True:
            p = a[0][0]
            top = a[0]
            clean = True
            for i in range(1, len(a)):
                x = a[i][0]
                if x:
                    q = x // p
                    a[i] = [u - q * w for u, w in zip(a[i], top)]
                    if a[i][0]:
                        clean = False
            for j in range(1, len(top)):
                x = top[j]
                if x:
                    q = x // p
                    for row in a:
                        row[j] -= q * row[0]
                    if top[j]:
                        clean = False
            if clean:
                break
            # a remainder is smaller than the pivot; bring the smallest one up
            best, where = abs(p), None
            for i in range(1, len(a)):
                x = abs(a[i][0])
                if x and x < best:
                    best, where = x, ("r", i)
            for j in range(1, len(top)):
                x = abs(top[j])
                if x and x < best:
                    best, where = x, ("c", j)
            kind, idx = where
            if kind == "r":
                a[0], a[idx] = a[idx], a[0]
            else:
                _swap_cols(a, 0, idx)
        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:]]
    factors = invariant_factors(diag + [0] * (min(m.rows, m.cols) - len(diag)))
    return DiagonalSpec.from_diagonal(factors, (m.rows, m.cols))


def diagonal_specs_equivalent(a: DiagonalSpec, b: DiagonalSpec) -> bool:
    """Whether two diagonal matrices are unimodularly equivalent."""
    if a.shape != b.shape:
        raise PreconditionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a.invariant_factors() == b.invariant_factors()
