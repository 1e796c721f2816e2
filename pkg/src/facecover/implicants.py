"""Literal-associated vectors, decomposition predicates, and prime
implicant enumeration for few-zero functions.

A literal's associated vector is the corresponding zero-matrix column
(positive literal) or its componentwise complement (negative literal).
A conjunction is an implicant iff every zero row disagrees with at least
one of its literals, i.e. the complements of its literal vectors OR to
the all-ones vector over the rows.  Prime implicants are exactly the
irredundant such covers, which is how the enumerator searches for them.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetError, DecompositionError, DimensionError
from .model import BitVector, FewZeroFunction


@dataclass(frozen=True)
class Literal:
    """A variable (1-based) or its negation."""

    var: int
    positive: bool = True

    def __post_init__(self):
        if self.var < 1:
            raise DimensionError("variable index must be >= 1")

    @classmethod
    def from_signed(cls, s: int) -> "Literal":
        if s == 0:
            raise DimensionError("signed literal 0 is invalid")
        return cls(abs(s), s > 0)

    @property
    def signed(self) -> int:
        return self.var if self.positive else -self.var

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __repr__(self) -> str:
        return f"Literal({'+' if self.positive else '-'}{self.var})"


def literal_vector(f: FewZeroFunction, lit: Literal) -> BitVector:
    """The k-bit vector associated with the literal: column ``var`` of the
    zero matrix for a positive literal, its complement for a negative one."""
    col = f.matrix.column(lit.var)
    return col if lit.positive else col.complement()


def kill_mask(f: FewZeroFunction, lit: Literal) -> int:
    """Rows (as a k-bit mask) where the literal disagrees with the zero;
    this is the complement of the literal's associated vector."""
    full = (1 << f.k) - 1
    col = f.matrix.column_int(lit.var)
    return (full ^ col) if lit.positive else col


@functools.total_ordering
@dataclass(frozen=True)
class Conjunction:
    """A set of literals, at most one per variable, as two disjoint
    variable masks (bit i-1 = variable i)."""

    pos: int
    neg: int

    def __post_init__(self):
        if self.pos & self.neg:
            raise DimensionError("a variable cannot appear with both polarities")
        if not (self.pos | self.neg):
            raise DimensionError("empty conjunction")

    @classmethod
    def from_literals(cls, literals: Iterable[Literal]) -> "Conjunction":
        pos = neg = 0
        for lit in literals:
            bit = 1 << (lit.var - 1)
            if (pos | neg) & bit:
                raise DimensionError(f"variable {lit.var} used twice")
            if lit.positive:
                pos |= bit
            else:
                neg |= bit
        return cls(pos, neg)

    @classmethod
    def from_signed(cls, signed: Iterable[int]) -> "Conjunction":
        return cls.from_literals(Literal.from_signed(s) for s in signed)

    @property
    def vars_mask(self) -> int:
        return self.pos | self.neg

    @property
    def rank(self) -> int:
        return self.vars_mask.bit_count()

    @property
    def rank_plus(self) -> int:
        return self.pos.bit_count()

    @property
    def rank_minus(self) -> int:
        return self.neg.bit_count()

    @property
    def max_var(self) -> int:
        return self.vars_mask.bit_length()

    def literals(self) -> tuple[Literal, ...]:
        out = []
        for i in range(self.vars_mask.bit_length()):
            bit = 1 << i
            if self.pos & bit:
                out.append(Literal(i + 1, True))
            elif self.neg & bit:
                out.append(Literal(i + 1, False))
        return tuple(out)

    def signed(self) -> tuple[int, ...]:
        return tuple(l.signed for l in self.literals())

    def satisfied_by(self, p: int) -> bool:
        return (p & self.vars_mask) == self.pos

    def without(self, lit: Literal) -> "Conjunction":
        bit = 1 << (lit.var - 1)
        return Conjunction(self.pos & ~bit, self.neg & ~bit)

    def face_points(self, n: int) -> Iterator[int]:
        """All points of the subcube N_K inside the n-cube (2^(n-rank))."""
        if self.max_var > n:
            raise DimensionError("conjunction mentions variables beyond n")
        free = ((1 << n) - 1) & ~self.vars_mask
        s = free
        while True:
            yield self.pos | s
            if s == 0:
                return
            s = (s - 1) & free

    def __lt__(self, other: "Conjunction") -> bool:
        return self.signed() < other.signed()

    def __repr__(self) -> str:
        return "Conjunction(%s)" % " ".join(
            ("x%d" % l.var) if l.positive else ("~x%d" % l.var)
            for l in self.literals())


def is_decomposition(alpha: BitVector, parts: Sequence[BitVector]) -> bool:
    """True iff alpha equals the OR of the parts and every part is
    orthogonal to alpha's complement (i.e. lies inside alpha's support).

    Zero parts are accepted; they satisfy both conditions vacuously.
    """
    if alpha.mask == 0:
        raise DimensionError("alpha must be nonzero")
    union = 0
    not_alpha = alpha.complement().mask
    for p in parts:
        alpha._same_length(p)
        if p.mask & not_alpha:
            return False
        union |= p.mask
    return union == alpha.mask


def is_orthogonal_decomposition(alpha: BitVector, parts: Sequence[BitVector]) -> bool:
    """True iff the parts have pairwise disjoint supports and cover alpha
    exactly: XOR of parts == OR of parts == alpha."""
    if alpha.mask == 0:
        raise DimensionError("alpha must be nonzero")
    union = acc = 0
    for p in parts:
        alpha._same_length(p)
        union |= p.mask
        acc ^= p.mask
    return union == alpha.mask and acc == alpha.mask


def is_implicant(f: FewZeroFunction, conj: Conjunction) -> bool:
    """True iff the conjunction's face avoids every zero of f."""
    if conj.max_var > f.n:
        raise DimensionError("conjunction mentions variables beyond n")
    full = (1 << f.k) - 1
    covered = 0
    for lit in conj.literals():
        covered |= kill_mask(f, lit)
        if covered == full:
            return True
    return covered == full


def is_prime_implicant(f: FewZeroFunction, conj: Conjunction) -> bool:
    """Implicant from which no literal can be dropped: the literal kill
    sets form an irredundant cover of the rows."""
    if conj.max_var > f.n:
        return False
    full = (1 << f.k) - 1
    kills = [kill_mask(f, lit) for lit in conj.literals()]
    union = 0
    for m in kills:
        union |= m
    if union != full:
        return False
    for i, m in enumerate(kills):
        rest = 0
        for j, other in enumerate(kills):
            if j != i:
                rest |= other
        if rest == full:  # literal i has no private row
            return False
    return True


def enumerate_prime_implicants(f: FewZeroFunction,
                               node_budget: int | None = None) -> tuple[Conjunction, ...]:
    """All prime implicants of f, canonically sorted.

    Depth-first search over irredundant covers of the k rows by literal
    kill sets, branching on the uncovered row with the fewest remaining
    covering literals.  Each irredundant cover is generated exactly once
    (later branches ban the candidates of earlier ones).
    """
    if f.k > 30:
        raise BudgetError("prime implicant enumeration is limited to k <= 30")
    k, n = f.k, f.n
    full = (1 << k) - 1

    lits: list[tuple[Literal, int]] = []
    for var in range(1, n + 1):
        for positive in (True, False):
            lit = Literal(var, positive)
            m = kill_mask(f, lit)
            if m:
                lits.append((lit, m))

    row_killers: list[list[int]] = [[] for _ in range(k)]
    for idx, (_, m) in enumerate(lits):
        for r in range(k):
            if (m >> r) & 1:
                row_killers[r].append(idx)

    if any(not rk for rk in row_killers):
        # some row disagrees with no literal: impossible for a valid matrix
        return ()

    found: set[tuple[tuple[int, int], ...]] = set()
    nodes = 0

    def record(chosen: list[int]) -> None:
        key = tuple(sorted((lits[i][0].var, lits[i][0].signed) for i in chosen))
        found.add(key)

    def irredundant_after_add(masks: list[int]) -> bool:
        # every chosen literal must still kill a row nobody else kills
        for i, m in enumerate(masks):
            rest = 0
            for j, other in enumerate(masks):
                if j != i:
                    rest |= other
            if m & ~rest == 0:
                return False
        return True

    def rec(covered: int, chosen: list[int], masks: list[int],
            used_vars: int, banned: set[int]) -> None:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetError("prime implicant enumeration budget exhausted")
        if covered == full:
            record(chosen)
            return
        best_row, best_cands = -1, None
        for r in range(k):
            if (covered >> r) & 1:
                continue
            cands = [i for i in row_killers[r]
                     if i not in banned and not (used_vars >> (lits[i][0].var - 1)) & 1]
            if best_cands is None or len(cands) < len(best_cands):
                best_row, best_cands = r, cands
                if not cands:
                    return
        assert best_cands is not None
        newly_banned: set[int] = set()
        for i in best_cands:
            lit, m = lits[i]
            masks.append(m)
            if irredundant_after_add(masks):
                rec(covered | m, chosen + [i], masks,
                    used_vars | (1 << (lit.var - 1)), banned | newly_banned)
            masks.pop()
            newly_banned.add(i)

    rec(0, [], [], 0, set())

    conjs = [Conjunction.from_signed(s for _, s in key) for key in sorted(found)]
    return tuple(sorted(conjs))


def conjunction_from_decomposition(f: FewZeroFunction, lit: Literal,
                                   parts: Sequence[Literal],
                                   with_witness: bool = False):
    """Build the implicant lit & parts guaranteed by a decomposition of
    lit's vector by the complemented vectors of the parts.

    With empty parts the literal must disagree with every zero on its own
    (its associated vector is the zero vector); the result is the rank-1
    conjunction.  Raises DecompositionError when the hypothesis fails.
    When ``with_witness`` is set, also returns a point of the face (all
    unconstrained coordinates 0) at which the conjunction evaluates to 1.
    """
    if lit.var > f.n or any(p.var > f.n for p in parts):
        raise DimensionError("literal beyond n")
    if any(p.var == lit.var for p in parts):
        raise DecompositionError("parts must use variables other than the literal's")
    alpha = literal_vector(f, lit)
    if not parts:
        if alpha.mask != 0:
            raise DecompositionError("empty decomposition needs a zero literal vector")
    else:
        if alpha.mask == 0 or not is_decomposition(
                alpha, [literal_vector(f, p).complement() for p in parts]):
            raise DecompositionError("parts do not decompose the literal's vector")
    conj = Conjunction.from_literals([lit, *parts])
    assert is_implicant(f, conj)
    if with_witness:
        witness = conj.pos  # unconstrained coordinates set to 0
        assert conj.satisfied_by(witness)
        return conj, BitVector(f.n, witness)
    return conj
