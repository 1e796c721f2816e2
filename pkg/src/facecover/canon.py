"""Complexity-invariant transforms, proper/reduced canonical forms, the
duplicated-column lifting, and the complete / heavy-column generators.

A signed permutation (variable permutation plus per-variable negation)
does not change the minimal rank or length of a function's DNFs; it is
the only normalization applied here.  The project-wide representative of
a complementary column pair is the member with fewer ones, ties broken
by the lexicographically smaller 0/1 string.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (ConstantColumnError, DimensionError, NotProperError,
                     PreconditionError)
from .implicants import Conjunction
from .model import (DEFAULT_DIMENSION_LIMIT, FewZeroFunction, ZeroMatrix,
                    classify_matrix, lex01)
from .solver import Dnf


@dataclass(frozen=True)
class SignedPermutation:
    """Variable permutation with per-variable negation.

    Column j of the image is column perm[j-1] of the source, XORed with
    bit j-1 of ``neg``; equivalently a point p maps to q with
    q_j = p_perm(j) ^ neg_j.
    """

    perm: tuple[int, ...]
    neg: int

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise DimensionError("perm is not a permutation of 1..n")
        if not 0 <= self.neg < (1 << n):
            raise DimensionError("negation mask out of range")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)), 0)

    @property
    def n(self) -> int:
        return len(self.perm)

    def map_point(self, p: int) -> int:
        q = 0
        for j, src in enumerate(self.perm):
            q |= (((p >> (src - 1)) & 1) ^ ((self.neg >> j) & 1)) << j
        return q

    def inverse(self) -> "SignedPermutation":
        n = self.n
        inv = [0] * n
        neg = 0
        for j, src in enumerate(self.perm):
            inv[src - 1] = j + 1
            neg |= ((self.neg >> j) & 1) << (src - 1)
        return SignedPermutation(tuple(inv), neg)

    def compose(self, inner: "SignedPermutation") -> "SignedPermutation":
        """Transform equal to applying ``inner`` first, then self."""
        if self.n != inner.n:
            raise DimensionError("cannot compose transforms of different arity")
        perm = tuple(inner.perm[s - 1] for s in self.perm)
        neg = 0
        for j, src in enumerate(self.perm):
            neg |= (((inner.neg >> (src - 1)) & 1) ^ ((self.neg >> j) & 1)) << j
        return SignedPermutation(perm, neg)


def apply_transform(f: FewZeroFunction, t: SignedPermutation,
                    limit: int | None = None) -> FewZeroFunction:
    """Image of f under the signed permutation (rows re-sorted)."""
    if t.n != f.n:
        raise DimensionError(f"transform arity {t.n} != n={f.n}")
    return FewZeroFunction.from_rows(
        (t.map_point(r) for r in f.matrix.rows), n=f.n,
        limit=f.n if limit is None and f.n > DEFAULT_DIMENSION_LIMIT else limit)


@dataclass(frozen=True)
class ColumnGrouping:
    """Intervals of equal columns of a proper matrix (1-based, inclusive)
    and one representative index per interval."""

    groups: tuple[tuple[int, int], ...]
    representatives: tuple[int, ...]

    def __post_init__(self):
        if len(self.groups) != len(self.representatives):
            raise DimensionError("one representative per group required")
        expect = 1
        for (s, e), rep in zip(self.groups, self.representatives):
            if s != expect or e < s or not s <= rep <= e:
                raise DimensionError("groups must tile 1..n in order")
            expect = e + 1

    @property
    def n(self) -> int:
        return self.groups[-1][1]

    @property
    def t(self) -> int:
        return len(self.groups)


def _canonical_column(col: int, k: int) -> tuple[int, bool]:
    """Representative of {col, ~col}: fewer ones, ties -> lexicographically
    smaller string.  Returns (representative, flipped?)."""
    comp = col ^ ((1 << k) - 1)
    ones, cones = col.bit_count(), comp.bit_count()
    if ones > cones or (ones == cones and lex01(comp, k) < lex01(col, k)):
        return comp, True
    return col, False


def to_proper(f: FewZeroFunction) -> tuple[FewZeroFunction, SignedPermutation]:
    """Proper form of f and the transform that produces it.

    Columns with more ones than zeros are negated; complementary tie
    pairs that both occur are unified to the canonical representative;
    columns are then sorted by value, so equal columns are contiguous.
    """
    k, n = f.k, f.n
    full = (1 << k) - 1
    cols = f.matrix.column_ints()
    if any(c == 0 or c == full for c in cols):
        raise ConstantColumnError("matrix has a constant column")

    normalized: list[int] = []
    flips: list[bool] = []
    for c in cols:
        if c.bit_count() > k - c.bit_count():
            normalized.append(c ^ full)
            flips.append(True)
        else:
            normalized.append(c)
            flips.append(False)
    present = set(normalized)
    for i, c in enumerate(normalized):
        if (c ^ full) in present:  # both members of a tie pair occur
            rep, flip = _canonical_column(c, k)
            if flip:
                normalized[i] = rep
                flips[i] = not flips[i]

    order = sorted(range(n), key=lambda i: (lex01(normalized[i], k), i))
    perm = tuple(i + 1 for i in order)
    neg = 0
    for j, i in enumerate(order):
        neg |= flips[i] << j

    new_cols = [normalized[i] for i in order]
    rows = [sum(((new_cols[j] >> r) & 1) << j for j in range(n)) for r in range(k)]
    limit = n if n > DEFAULT_DIMENSION_LIMIT else None
    result = FewZeroFunction.from_rows(rows, n=n, limit=limit)
    return result, SignedPermutation(perm, neg)


def extract_reduced(f: FewZeroFunction) -> tuple[FewZeroFunction, ColumnGrouping]:
    """Keep one column per group of equal columns of a proper matrix."""
    if not classify_matrix(f).is_proper:
        raise NotProperError("input matrix is not proper")
    cols = f.matrix.column_ints()
    groups: list[tuple[int, int]] = []
    reps: list[int] = []
    start = 1
    for j in range(2, f.n + 2):
        if j > f.n or cols[j - 1] != cols[start - 1]:
            groups.append((start, j - 1))
            reps.append(start)
            start = j
    kept = [cols[r - 1] for r in reps]
    t = len(kept)
    rows = [sum(((kept[j] >> r) & 1) << j for j in range(t)) for r in range(f.k)]
    limit = t if t > DEFAULT_DIMENSION_LIMIT else None
    reduced = FewZeroFunction.from_rows(rows, n=t, limit=limit)
    return reduced, ColumnGrouping(tuple(groups), tuple(reps))


def not_all_equal_dnf(variables: Sequence[int]) -> Dnf:
    """Cyclic chain x_a ~x_b or x_b ~x_c or ... or x_z ~x_a over the given
    variables: evaluates to 1 exactly when they are not all equal."""
    m = len(variables)
    if m < 2:
        raise PreconditionError("need at least two variables")
    if len(set(variables)) != m:
        raise PreconditionError("variables must be distinct")
    conjs = []
    for i, v in enumerate(variables):
        w = variables[(i + 1) % m]
        conjs.append(Conjunction((1 << (v - 1)), (1 << (w - 1))))
    return Dnf.of(conjs)


def lift_reduced_dnf(dnf: Dnf, grouping: ColumnGrouping) -> Dnf:
    """Rewrite a DNF of the reduced function over the original variables.

    Variable s of the reduced function becomes the group representative;
    each group of two or more equal columns contributes one cyclic
    not-all-equal chain.
    """
    if dnf.max_var > grouping.t:
        raise DimensionError(
            f"DNF uses variable {dnf.max_var} but grouping has {grouping.t} groups")
    conjs = []
    for c in dnf.conjunctions:
        pos = neg = 0
        for lit in c.literals():
            bit = 1 << (grouping.representatives[lit.var - 1] - 1)
            if lit.positive:
                pos |= bit
            else:
                neg |= bit
        conjs.append(Conjunction(pos, neg))
    for (s, e) in grouping.groups:
        if e > s:
            conjs.extend(not_all_equal_dnf(range(s, e + 1)).conjunctions)
    return Dnf.of(conjs)


def _pair_representatives(k: int, min_weight: int = 1) -> list[int]:
    """Canonical representatives of all non-constant complementary column
    pairs of length k whose weight is at least min_weight, sorted."""
    full = (1 << k) - 1
    reps = set()
    for c in range(1, full):
        ones = c.bit_count()
        if min(ones, k - ones) < min_weight:
            continue
        reps.add(_canonical_column(c, k)[0])
    return sorted(reps, key=lambda c: lex01(c, k))


def _function_from_columns(cols: Sequence[int], k: int) -> FewZeroFunction:
    n = len(cols)
    rows = [sum(((cols[j] >> r) & 1) << j for j in range(n)) for r in range(k)]
    limit = max(n, DEFAULT_DIMENSION_LIMIT) if n > DEFAULT_DIMENSION_LIMIT else None
    return FewZeroFunction.from_rows(rows, n=n, limit=limit)


def complete_function(k: int, limit: int | None = None) -> FewZeroFunction:
    """The reduced function on 2^(k-1)-1 variables whose columns are all
    representatives of non-constant complementary pairs."""
    if k < 2:
        raise PreconditionError("complete function needs k >= 2")
    cap = DEFAULT_DIMENSION_LIMIT if limit is None else limit
    if (1 << (k - 1)) - 1 > cap:
        raise PreconditionError(f"k={k} gives n beyond the limit {cap}")
    return _function_from_columns(_pair_representatives(k), k)


def heavy_column_threshold(k: int) -> int:
    """Weight threshold max(1, ceil(k/2 - sqrt(k ln k)))."""
    return max(1, math.ceil(k / 2 - math.sqrt(k * math.log(k))))


def heavy_column_function(k: int) -> FewZeroFunction:
    """Zero matrix holding every representative column of weight at least
    heavy_column_threshold(k); the extremal high-rank family."""
    if k < 4:
        raise PreconditionError("heavy-column family needs k >= 4")
    cols = _pair_representatives(k, heavy_column_threshold(k))
    return _function_from_columns(cols, k)


@dataclass(frozen=True)
class HeavyColumnReport:
    k: int
    threshold: int
    column_count: int
    count_lower_bound: int  # 2^(k-1) * (1 - 2/k), rounded up
    meets_bound: bool
    has_adjacent_zeros: bool


def heavy_column_metadata(k: int) -> HeavyColumnReport:
    f = heavy_column_function(k)
    flags = classify_matrix(f)
    lower = -(-((1 << (k - 1)) * (k - 2)) // k)  # exact integer ceiling
    return HeavyColumnReport(
        k=k,
        threshold=heavy_column_threshold(k),
        column_count=f.n,
        count_lower_bound=lower,
        meets_bound=f.n >= lower,
        has_adjacent_zeros=flags.has_adjacent_zeros,
    )
