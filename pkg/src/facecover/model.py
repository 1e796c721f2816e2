"""Zero-matrix model of Boolean functions with a small set of zeros.

A function f(x_1, ..., x_n) is stored as the k x n 0/1 matrix whose rows
are exactly the points where f evaluates to 0.  Rows and cube points are
plain ints with bit i-1 holding the value of variable i; ``BitVector``
wraps an int together with its length for the public surface.  Row order
is canonical (sorted as 0/1 strings), so equality of functions is
equality of their matrices.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, DuplicateRowError, MatrixFormatError

#: Default cap on n and k so vectors stay in one machine word.  Generators
#: that legitimately need wider matrices pass an explicit limit.
DEFAULT_DIMENSION_LIMIT = 63


def lex01(mask: int, length: int) -> str:
    """0/1 string with variable 1 first; string order is the canonical
    lexicographic order used for rows, columns and representatives."""
    return format(mask, f"0{length}b")[::-1]


@functools.total_ordering
@dataclass(frozen=True)
class BitVector:
    """Fixed-length 0/1 vector over {0,1}^length.

    Serves as a cube point, a zero-matrix column, and a literal-associated
    incidence vector.  Bit i-1 of ``mask`` is coordinate i.
    """

    length: int
    mask: int

    def __post_init__(self):
        if self.length < 1:
            raise DimensionError("BitVector length must be >= 1")
        if not 0 <= self.mask < (1 << self.length):
            raise DimensionError("mask out of range for length")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        if not s or any(c not in "01" for c in s):
            raise MatrixFormatError(f"not a 0/1 string: {s!r}")
        return cls(len(s), int(s[::-1], 2))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        mask = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise MatrixFormatError(f"bit {i + 1} is not 0/1")
            mask |= b << i
        return cls(len(bits), mask)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.length))

    def to01(self) -> str:
        return lex01(self.mask, self.length)

    def bit(self, i: int) -> int:
        """Coordinate i, 1-based."""
        if not 1 <= i <= self.length:
            raise DimensionError(f"coordinate {i} out of range 1..{self.length}")
        return (self.mask >> (i - 1)) & 1

    @property
    def ones(self) -> int:
        return self.mask.bit_count()

    @property
    def zeros(self) -> int:
        return self.length - self.ones

    def complement(self) -> "BitVector":
        return BitVector(self.length, self.mask ^ ((1 << self.length) - 1))

    def _same_length(self, other: "BitVector") -> None:
        if self.length != other.length:
            raise DimensionError(f"length mismatch: {self.length} vs {other.length}")

    def __or__(self, other: "BitVector") -> "BitVector":
        self._same_length(other)
        return BitVector(self.length, self.mask | other.mask)

    def __and__(self, other: "BitVector") -> "BitVector":
        self._same_length(other)
        return BitVector(self.length, self.mask & other.mask)

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._same_length(other)
        return BitVector(self.length, self.mask ^ other.mask)

    def __lt__(self, other: "BitVector") -> bool:
        return (self.length, self.to01()) < (other.length, other.to01())

    def __repr__(self) -> str:
        return f"BitVector({self.to01()!r})"


def weight(v: BitVector) -> int:
    """min(#ones, #zeros) of the vector."""
    return min(v.ones, v.zeros)


def hamming_adjacent(p: BitVector, q: BitVector) -> bool:
    """True iff the two equal-length vectors differ in exactly one bit."""
    p._same_length(q)
    return (p.mask ^ q.mask).bit_count() == 1


def _as_row_int(row, n: int | None):
    """Normalize a row given as BitVector / 0-1 string / int into (int, n)."""
    if isinstance(row, BitVector):
        return row.mask, row.length
    if isinstance(row, str):
        v = BitVector.from_string(row)
        return v.mask, v.length
    if isinstance(row, int):
        if n is None:
            raise DimensionError("n is required when rows are given as ints")
        if not 0 <= row < (1 << n):
            raise DimensionError("row value out of range for n")
        return row, n
    raise MatrixFormatError(f"unsupported row type: {type(row).__name__}")


@dataclass(frozen=True)
class ZeroMatrix:
    """k x n 0/1 test matrix (pairwise distinct rows), rows sorted
    canonically.  Rows are ints, bit i-1 = column i."""

    n: int
    k: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise DimensionError("need n >= 1 and k >= 1")
        if self.k != len(self.rows):
            raise DimensionError("k does not match number of rows")
        if len(set(self.rows)) != self.k:
            raise DuplicateRowError("duplicate rows in zero matrix")
        if self.k > (1 << self.n):
            raise DimensionError("more rows than points of the cube")
        keys = [lex01(r, self.n) for r in self.rows]
        if keys != sorted(keys):
            raise MatrixFormatError("rows are not in canonical order")

    @classmethod
    def from_rows(cls, rows: Iterable, n: int | None = None,
                  limit: int | None = None) -> "ZeroMatrix":
        """Build a matrix from rows (BitVectors, 0/1 strings, or ints with
        explicit n), sorting them into canonical order."""
        ints = []
        for row in rows:
            mask, row_n = _as_row_int(row, n)
            if n is None:
                n = row_n
            elif row_n != n:
                raise DimensionError("rows of unequal length")
            ints.append(mask)
        if n is None or not ints:
            raise DimensionError("matrix needs at least one row")
        cap = DEFAULT_DIMENSION_LIMIT if limit is None else limit
        if n > cap:
            raise DimensionError(f"n={n} exceeds limit {cap}")
        if len(ints) > cap:
            raise DimensionError(f"k={len(ints)} exceeds limit {cap}")
        ints.sort(key=lambda r: lex01(r, n))
        return cls(n, len(ints), tuple(ints))

    def row_vectors(self) -> tuple[BitVector, ...]:
        return tuple(BitVector(self.n, r) for r in self.rows)

    def column_int(self, t: int) -> int:
        """Column t (1-based) as a k-bit int; bit i-1 = row i's entry."""
        if not 1 <= t <= self.n:
            raise DimensionError(f"column {t} out of range 1..{self.n}")
        shift = t - 1
        col = 0
        for i, row in enumerate(self.rows):
            col |= ((row >> shift) & 1) << i
        return col

    def column(self, t: int) -> BitVector:
        return BitVector(self.k, self.column_int(t))

    def column_ints(self) -> list[int]:
        return [self.column_int(t) for t in range(1, self.n + 1)]

    def to_text(self) -> str:
        return "".join(lex01(r, self.n) + "\n" for r in self.rows)


@dataclass(frozen=True)
class FewZeroFunction:
    """Boolean function whose zeros are exactly the rows of ``matrix``."""

    matrix: ZeroMatrix

    @classmethod
    def from_rows(cls, rows: Iterable, n: int | None = None,
                  limit: int | None = None) -> "FewZeroFunction":
        return cls(ZeroMatrix.from_rows(rows, n=n, limit=limit))

    @classmethod
    def from_text(cls, text: str, limit: int | None = None) -> "FewZeroFunction":
        """Parse the zero-matrix text format: one 0/1 row per line, blank
        lines and '#'-comment lines ignored."""
        rows: list[str] = []
        lines_of: dict[str, int] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if any(c not in "01" for c in line):
                raise MatrixFormatError("row contains characters other than 0/1",
                                        line=lineno)
            if rows and len(line) != len(rows[0]):
                raise MatrixFormatError("row length differs from first row",
                                        line=lineno)
            if line in lines_of:
                raise DuplicateRowError(
                    f"duplicate row (lines {lines_of[line]} and {lineno})",
                    lines=(lines_of[line], lineno))
            lines_of[line] = lineno
            rows.append(line)
        if not rows:
            raise MatrixFormatError("no rows in input")
        return cls.from_rows(rows, limit=limit)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def k(self) -> int:
        return self.matrix.k

    @functools.cached_property
    def zero_ints(self) -> frozenset[int]:
        return frozenset(self.matrix.rows)

    def evaluate_int(self, p: int) -> int:
        return 0 if p in self.zero_ints else 1

    def evaluate(self, p: BitVector) -> int:
        if p.length != self.n:
            raise DimensionError(f"point has length {p.length}, function has n={self.n}")
        return self.evaluate_int(p.mask)

    def to_text(self) -> str:
        return self.matrix.to_text()

    def __repr__(self) -> str:
        return f"FewZeroFunction(n={self.n}, k={self.k})"


def column_sets(f: FewZeroFunction, t: int) -> tuple[frozenset[int], frozenset[int]]:
    """(E(t), Z(t)): 1-based row indices with a 1 / with a 0 in column t.

    The two sets always partition {1, ..., k}.
    """
    col = f.matrix.column_int(t)
    ones = frozenset(i + 1 for i in range(f.k) if (col >> i) & 1)
    zeros = frozenset(i + 1 for i in range(f.k) if not (col >> i) & 1)
    return ones, zeros


@dataclass(frozen=True)
class ClassMembership:
    """Structural flags of a zero matrix (proper / reduced / complete
    hierarchy plus the weight-class data)."""

    has_constant_column: bool
    rows_distinct: bool
    has_adjacent_zeros: bool
    is_proper: bool
    is_reduced: bool
    is_complete: bool
    min_column_weight: int
    ones_le_zeros_all_columns: bool

    def in_weight_class(self, min_weight: int) -> bool:
        """Member of the reduced, isolated-zeros class with all column
        weights >= min_weight."""
        return (self.is_reduced and not self.has_adjacent_zeros
                and self.min_column_weight >= min_weight)


def classify_matrix(f: FewZeroFunction) -> ClassMembership:
    """Compute all structural flags of f's zero matrix.

    proper: no constant columns, equal columns contiguous, at most one of
    each complementary column pair.  reduced: proper with pairwise
    distinct columns.  complete: reduced with n = 2^(k-1) - 1.
    """
    m = f.matrix
    k, n = m.k, m.n
    full = (1 << k) - 1
    cols = m.column_ints()

    has_constant = any(c == 0 or c == full for c in cols)

    rows = m.rows
    adjacent = any((rows[i] ^ rows[j]).bit_count() == 1
                   for i in range(k) for j in range(i + 1, k))

    # equal columns must occupy a contiguous block of positions
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    count: dict[int, int] = {}
    for j, c in enumerate(cols):
        first.setdefault(c, j)
        last[c] = j
        count[c] = count.get(c, 0) + 1
    contiguous = all(last[c] - first[c] + 1 == count[c] for c in count)

    col_set = set(cols)
    has_complement_pair = any((c ^ full) in col_set and (c ^ full) != c
                              for c in col_set)
    all_distinct = len(col_set) == n

    proper = not has_constant and contiguous and not has_complement_pair
    reduced = proper and all_distinct
    complete = reduced and n == (1 << (k - 1)) - 1

    min_w = min(min(c.bit_count(), k - c.bit_count()) for c in cols)
    ones_le = all(c.bit_count() <= k - c.bit_count() for c in cols)

    return ClassMembership(
        has_constant_column=has_constant,
        rows_distinct=True,
        has_adjacent_zeros=adjacent,
        is_proper=proper,
        is_reduced=reduced,
        is_complete=complete,
        min_column_weight=min_w,
        ones_le_zeros_all_columns=ones_le,
    )


def iter_points(n: int) -> Iterator[int]:
    """All points of the n-cube in numeric order."""
    return iter(range(1 << n))
