"""Near-zero point machinery, structural classification of conjunctions,
rank lower-bound evaluators, tail checks, cut oracles, and the seeded
randomized experiments.

Counting conventions: near-zero quantities are tracked both as incidence
pairs (zero row, flipped coordinate) and as point sets; the counting
inequalities use incidences.  Rank-bound arithmetic is exact (Fraction);
floating point appears only where a formula is irrational (exp, sqrt,
log), with an upward nudge on the tail-bound side so a true inequality
is never reported as violated.
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .canon import to_proper, extract_reduced
from .errors import BudgetError, PreconditionError
from .implicants import Conjunction, Literal, literal_vector
from .model import (DEFAULT_DIMENSION_LIMIT, FewZeroFunction, classify_matrix,
                    lex01)
from .solver import Dnf, all_minimal_dnfs, minimal_dnf


# ---------------------------------------------------------------------------
# near-zero points


@dataclass(frozen=True)
class NearZeroReport:
    """Points of the cube at Hamming distance 1 from a zero that are ones
    of the function, split by the value of the flipped matrix entry."""

    n: int
    k: int
    theta_points: frozenset[int]
    theta0_points: frozenset[int]
    theta1_points: frozenset[int]
    theta0_incidences: frozenset[tuple[int, int]]  # (zero row, coordinate), 1-based
    theta1_incidences: frozenset[tuple[int, int]]


def near_zero_sets(f: FewZeroFunction) -> NearZeroReport:
    zeros = f.zero_ints
    rows = f.matrix.rows
    inc0, inc1 = set(), set()
    pts0, pts1 = set(), set()
    for i, row in enumerate(rows, start=1):
        for j in range(1, f.n + 1):
            theta = row ^ (1 << (j - 1))
            if theta in zeros:
                continue  # flipped onto another zero: excluded
            if (row >> (j - 1)) & 1:
                inc1.add((i, j))
                pts1.add(theta)
            else:
                inc0.add((i, j))
                pts0.add(theta)
    return NearZeroReport(
        n=f.n, k=f.k,
        theta_points=frozenset(pts0 | pts1),
        theta0_points=frozenset(pts0),
        theta1_points=frozenset(pts1),
        theta0_incidences=frozenset(inc0),
        theta1_incidences=frozenset(inc1),
    )


@dataclass(frozen=True)
class IncidenceReport:
    """Maximum, over conjunctions K and zero rows i, of the number of
    neighbours of zero i lying in K's face."""

    max_count: int
    worst: tuple[tuple[int, ...], int] | None  # (signed conjunction, row)


def near_zero_incidence_check(f: FewZeroFunction, dnf: Dnf) -> IncidenceReport:
    best = 0
    worst = None
    for conj in dnf.conjunctions:
        for i, row in enumerate(f.matrix.rows, start=1):
            count = sum(1 for j in range(f.n)
                        if conj.satisfied_by(row ^ (1 << j)))
            if count > best:
                best, worst = count, (conj.signed(), i)
    return IncidenceReport(best, worst)


# ---------------------------------------------------------------------------
# conjunction classification


class ConjunctionClass(enum.Enum):
    POS_ANTIMONOTONE = "pos_antimonotone"    # one positive literal, negative tail
    ALL_NEGATIVE = "all_negative"            # own negative literal, no positives
    MIXED_NEGATIVE = "mixed_negative"        # own negative, >=1 pos and >=2 neg
    SINGLE_NEGATIVE = "single_negative"      # own negative is the only negative
    POS_PAIR = "pos_pair"                    # x_i x_j
    MIXED_PAIR = "mixed_pair"                # x_i ~x_j
    UNCLASSIFIED = "unclassified"


#: Order in which the six class counters are reported.
CLASS_ORDER = (
    ConjunctionClass.POS_ANTIMONOTONE,
    ConjunctionClass.ALL_NEGATIVE,
    ConjunctionClass.MIXED_NEGATIVE,
    ConjunctionClass.SINGLE_NEGATIVE,
    ConjunctionClass.POS_PAIR,
    ConjunctionClass.MIXED_PAIR,
)


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    k: int
    min_weight: int
    epsilon: Fraction
    assignments: tuple[tuple[Conjunction, ConjunctionClass], ...]
    class_counts: tuple[int, int, int, int, int, int]
    unclassified: int
    literal_multiplicity: dict[int, int]  # signed literal -> occurrences in D
    precondition_ok: bool

    @property
    def total(self) -> int:
        return sum(self.class_counts) + self.unclassified


def _classify_one(conj: Conjunction, own: set[int]) -> ConjunctionClass:
    rp, rm = conj.rank_plus, conj.rank_minus
    if conj.rank == 2:
        if rp == 2:
            return ConjunctionClass.POS_PAIR
        if rp == 1:
            return ConjunctionClass.MIXED_PAIR
        return ConjunctionClass.UNCLASSIFIED
    signed = conj.signed()
    has_own_neg = any(s < 0 and s in own for s in signed)
    if has_own_neg:
        if rp == 0:
            return ConjunctionClass.ALL_NEGATIVE
        if rm >= 2:
            return ConjunctionClass.MIXED_NEGATIVE
        return ConjunctionClass.SINGLE_NEGATIVE
    if rp == 1 and rm >= 2:
        # single positive with an antimonotone tail; the positive may be
        # own or the conjunction may have no own literals at all
        return ConjunctionClass.POS_ANTIMONOTONE
    return ConjunctionClass.UNCLASSIFIED


def classify_conjunctions(f: FewZeroFunction, dnf: Dnf,
                          strict: bool = False) -> ClassificationReport:
    """Assign each conjunction to one of the six structural classes.

    Meaningful for reduced functions without adjacent zeros; outside that
    class the report is still produced with precondition_ok=False unless
    ``strict`` is set.
    """
    flags = classify_matrix(f)
    ok = flags.is_reduced and not flags.has_adjacent_zeros
    if strict and not ok:
        raise PreconditionError("function is not reduced with isolated zeros")
    mult: dict[int, int] = {}
    for conj in dnf.conjunctions:
        for s in conj.signed():
            mult[s] = mult.get(s, 0) + 1
    own = {s for s, c in mult.items() if c == 1}
    counts = {cls: 0 for cls in ConjunctionClass}
    assignments = []
    for conj in dnf.conjunctions:
        cls = _classify_one(conj, own)
        counts[cls] += 1
        assignments.append((conj, cls))
    m = flags.min_column_weight
    return ClassificationReport(
        n=f.n, k=f.k, min_weight=m,
        epsilon=Fraction(f.k - 2 * m, f.k),
        assignments=tuple(assignments),
        class_counts=tuple(counts[cls] for cls in CLASS_ORDER),
        unclassified=counts[ConjunctionClass.UNCLASSIFIED],
        literal_multiplicity=mult,
        precondition_ok=ok,
    )


# ---------------------------------------------------------------------------
# counting and rank inequalities


@dataclass(frozen=True)
class Verdict:
    lhs: Fraction
    rhs: Fraction
    holds: bool


@dataclass(frozen=True)
class InequalityReport:
    applicable: bool
    theta1_counting: Verdict | None
    theta0_counting: Verdict | None
    positive_rank: Verdict | None
    negative_rank: Verdict | None

    def all_hold(self) -> bool | None:
        if not self.applicable:
            return None
        return all(v.holds for v in (self.theta1_counting, self.theta0_counting,
                                     self.positive_rank, self.negative_rank))


def check_inequalities(f: FewZeroFunction, dnf: Dnf,
                       report: ClassificationReport) -> InequalityReport:
    """Evaluate the four structural inequalities in exact rationals.

    Not applicable (verdicts None) when any conjunction is unclassified.
    """
    if report.unclassified > 0:
        return InequalityReport(False, None, None, None, None)
    mu1, mu2, mu3, mu4, mu5, mu6 = report.class_counts
    eps = report.epsilon
    n = Fraction(f.n)

    lhs1 = (1 + 3 * eps) * mu2 + 2 * eps * mu1 + mu6 + mu4 + mu3
    v1 = Verdict(lhs1, n * (1 - eps), lhs1 > n * (1 - eps))

    lhs0 = (1 + eps) * mu1 + (1 + eps) * mu6 + 2 * mu5 + eps * mu4 + 2 * eps * mu3
    v0 = Verdict(lhs0, n, lhs0 > n)

    pos_bound = Fraction(max(2 * f.n - mu1, mu1 + 2 * mu5 + mu6 + 2 * mu4 + mu3))
    vp = Verdict(Fraction(dnf.rank_plus), pos_bound, dnf.rank_plus >= pos_bound)

    neg_bound = Fraction(max(2 * f.n - mu2 - mu4 - mu3,
                             3 * mu2 + 2 * mu1 + mu6 + mu4 + 2 * mu3))
    vn = Verdict(Fraction(dnf.rank_minus), neg_bound, dnf.rank_minus >= neg_bound)

    return InequalityReport(True, v1, v0, vp, vn)


# ---------------------------------------------------------------------------
# rank lower bounds


@dataclass(frozen=True)
class RankBound:
    n: int
    k: int
    m: int
    delta: Fraction
    epsilon: Fraction
    value: Fraction
    regime: str  # "eps_le_quarter" | "quarter_lt_eps_lt_third"


def rank_lower_bound(n: int, k: int, m: int) -> RankBound:
    """Strict lower bound on the rank of every DNF of a reduced function
    with k isolated zeros and all column weights >= m (exact rational)."""
    if n < 1 or k < 1:
        raise PreconditionError("need n >= 1 and k >= 1")
    if m > k // 2:
        raise PreconditionError(f"m={m} exceeds k/2={k / 2}")
    if m < k // 3 + 1:
        raise PreconditionError(
            f"m={m} below floor(k/3)+1={k // 3 + 1}: bound not applicable")
    eps = Fraction(k - 2 * m, k)
    assert 0 <= eps < Fraction(1, 3)
    if eps <= Fraction(1, 4):
        value = Fraction(10, 3) * n - Fraction(5 * n) * eps / (3 * (1 + eps))
        regime = "eps_le_quarter"
    else:
        value = Fraction(10, 3) * n - Fraction(13 * n) * eps / (9 + 3 * eps)
        regime = "quarter_lt_eps_lt_third"
    return RankBound(n, k, m, Fraction(k, 2) - m, eps, value, regime)


def rank_lower_bound_formulas(n: int, eps: Fraction) -> tuple[Fraction, Fraction]:
    """Both printed bound expressions at an arbitrary epsilon (for seam
    and regime tests)."""
    low = Fraction(10, 3) * n - Fraction(5 * n) * eps / (3 * (1 + eps))
    high = Fraction(10, 3) * n - Fraction(13 * n) * eps / (9 + 3 * eps)
    return low, high


@dataclass(frozen=True)
class TailRankBound:
    m: int
    k: int
    alpha: float
    lam: float
    low_regime_value: float        # applicable when log m <= k/32
    mid_regime_value: float | None  # applicable when k/162 < log m < k/32
    low_regime: bool
    mid_regime: bool


def almost_all_rank_bound(m: int, k: int, alpha: float) -> TailRankBound:
    """Rank lower bound holding for almost all reduced functions on m
    variables with k isolated zeros, at tail parameter alpha in (0, 1).

    lam = alpha * sqrt(2 log m / k) with natural log; float evaluation.
    """
    if not 0 < alpha < 1:
        raise PreconditionError("alpha must lie strictly between 0 and 1")
    if m < 1 or k < 1:
        raise PreconditionError("need m >= 1 and k >= 1")
    logm = math.log(m)
    if logm > k / 32:
        raise PreconditionError("out of regime: log m exceeds k/32")
    lam = alpha * math.sqrt(2 * logm / k)
    low = 10 * m / 3 - 5 * m * (1 - lam) / (3 + 3 * lam)
    mid_applicable = k / 162 < logm < k / 32
    mid = 10 * m / 3 - 13 * m * (1 - lam) / (9 + 3 * lam) if mid_applicable else None
    return TailRankBound(m, k, alpha, lam, low, mid, True, mid_applicable)


@dataclass(frozen=True)
class TailCheck:
    k: int
    lam: float
    exact_sum: int
    bound: float
    holds: bool


def chernoff_tail_check(k: int, lam: float) -> TailCheck:
    """Exact binomial tail sum_{t<=k/2-lam} C(k,t) against 2^k e^{-2 lam^2 / k}."""
    if k < 1:
        raise PreconditionError("need k >= 1")
    if not 0 <= lam <= k / 2:
        raise PreconditionError("need 0 <= lambda <= k/2")
    top = math.floor(k / 2 - lam)
    exact = sum(math.comb(k, t) for t in range(top + 1)) if top >= 0 else 0
    bound = (1 << k) * math.exp(-2 * lam * lam / k)
    # upward nudge: a float rounding error must not flag a true inequality
    holds = exact <= bound * (1 + 1e-12)
    return TailCheck(k, lam, exact, bound, holds)


# ---------------------------------------------------------------------------
# cuttings and the literal-multiplicity oracle


def enumerate_cuts(f: FewZeroFunction, t: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of the row set {1..k} into t nonempty parts sharing
    the full column set.  Parts are ordered by smallest element."""
    k = f.k
    if not 1 <= t <= k:
        raise PreconditionError(f"need 1 <= t <= k={k}")
    if k > 10:
        raise BudgetError("cut enumeration is limited to k <= 10")

    blocks: list[list[int]] = []

    def rec(i: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i > k:
            if len(blocks) == t:
                yield tuple(tuple(b) for b in blocks)
            return
        remaining = k - i  # elements after i
        for b in blocks:
            if len(blocks) + remaining >= t:  # can still reach t blocks
                b.append(i)
                yield from rec(i + 1)
                b.pop()
        if len(blocks) < t:
            blocks.append([i])
            yield from rec(i + 1)
            blocks.pop()

    return rec(1)


def _restricted_vector(f: FewZeroFunction, lit: Literal,
                       rows: Sequence[int]) -> int:
    """Literal's associated vector restricted to the given 1-based rows,
    re-indexed densely."""
    full_vec = literal_vector(f, lit).mask
    out = 0
    for pos, r in enumerate(rows):
        out |= ((full_vec >> (r - 1)) & 1) << pos
    return out


def part_admits_decomposition(f: FewZeroFunction, lit: Literal,
                              rows: Sequence[int]) -> bool:
    """Whether, on the subfunction given by these rows, some set of other
    variables' literals decomposes the restricted vector of ``lit``.

    The zero restricted vector counts as decomposable: the literal alone
    already disagrees with every zero of the part (rank-1 conjunction).
    """
    alpha = _restricted_vector(f, lit, rows)
    if alpha == 0:
        return True
    union = 0
    for var in range(1, f.n + 1):
        if var == lit.var:
            continue
        for positive in (True, False):
            v = _restricted_vector(f, Literal(var, positive), rows)
            if v & ~alpha == 0:
                union |= v
    return union == alpha


@dataclass(frozen=True)
class CutLemmaReport:
    literal: int  # signed
    t: int
    hypothesis_holds: bool
    conclusion_holds: bool | None  # over all optimal DNFs, both objectives
    min_multiplicity: int | None
    dnfs_checked: int


def check_literal_multiplicity(f: FewZeroFunction, lit: Literal,
                               t: int) -> CutLemmaReport:
    """Cut-based oracle: if every partition of the rows into t parts has a
    part admitting no decomposition of the literal, the literal must occur
    in more than t conjunctions of every DNF; the conclusion is
    cross-checked against all optimal DNFs for both objectives."""
    if f.k > 6 or f.n > 10:
        raise BudgetError("cut-lemma checking is limited to k <= 6, n <= 10")
    if lit.var > f.n:
        raise PreconditionError("literal beyond n")
    hypothesis = all(
        any(not part_admits_decomposition(f, lit, part) for part in cut)
        for cut in enumerate_cuts(f, t))

    dnfs: list[Dnf] = []
    for objective in ("rank", "length"):
        dnfs.extend(all_minimal_dnfs(f, objective))
    signed = lit.signed
    mults = [sum(1 for c in d.conjunctions if signed in c.signed()) for d in dnfs]
    min_mult = min(mults) if mults else None
    conclusion = None
    if hypothesis:
        conclusion = all(m >= t + 1 for m in mults)
    return CutLemmaReport(signed, t, hypothesis, conclusion, min_mult, len(dnfs))


# ---------------------------------------------------------------------------
# seeded sampling and experiments


def _weight_class_size(k: int, min_weight: int) -> int:
    """Number of complementary column-pair classes with weight >= min_weight."""
    lo = max(min_weight, 1)
    total = sum(math.comb(k, j) for j in range(lo, k - lo + 1))
    return total // 2


def sample_function(n: int, k: int, min_weight: int, seed,
                    max_tries: int = 2_000_000) -> FewZeroFunction:
    """Rejection-sample a reduced function with k pairwise non-adjacent
    zeros and all column weights >= min_weight (polarity-normalized).

    Draws k distinct rows uniformly, normalizes column polarities, and
    accepts iff the result is reduced with no adjacent zeros and meets the
    weight threshold.  Deterministic for a fixed seed.
    """
    if n < 1 or k < 1 or k > (1 << n):
        raise PreconditionError("invalid n/k")
    if min_weight > k // 2:
        raise PreconditionError(f"infeasible: min_weight={min_weight} > k/2")
    if _weight_class_size(k, min_weight) < n:
        raise PreconditionError(
            "infeasible: fewer distinct heavy column classes than variables")
    rng = random.Random(seed)
    full = (1 << k) - 1
    space = range(1 << n)
    for _ in range(max_tries):
        rows = rng.sample(space, k)
        if any((rows[a] ^ rows[b]).bit_count() == 1
               for a in range(k) for b in range(a + 1, k)):
            continue
        cols = []
        ok = True
        for j in range(n):
            col = 0
            for i in range(k):
                col |= ((rows[i] >> j) & 1) << i
            ones = col.bit_count()
            if min(ones, k - ones) < max(min_weight, 1):
                ok = False
                break
            if 2 * ones > k:
                col ^= full
            cols.append(col)
        if not ok:
            continue
        if len(set(cols)) != n or any((c ^ full) in cols for c in cols):
            continue
        out_rows = [sum(((cols[j] >> i) & 1) << j for j in range(n))
                    for i in range(k)]
        return FewZeroFunction.from_rows(out_rows, n=n)
    raise BudgetError(f"rejection budget exhausted after {max_tries} tries")


@dataclass(frozen=True)
class CompletenessReport:
    n: int
    k: int
    trials: int
    successes: int
    fraction: float
    seed: int
    within_threshold: bool  # k < log2 n - log2 log2 n + 1
    #: sampling measure: uniform over distinct-row matrices without
    #: constant columns (the paper leaves the measure unspecified)
    sampling: str = "uniform-no-constant-columns-distinct-rows"


def _sample_no_constant_columns(rng: random.Random, n: int, k: int) -> list[int]:
    """Uniform k x n matrix with no constant column and distinct rows,
    returned as rows.  Column-wise uniform sampling conditioned on
    non-constant columns, rejecting row collisions."""
    full = (1 << k) - 1
    while True:
        cols = [rng.randrange(1, full) for _ in range(n)]
        rows = [sum(((cols[j] >> i) & 1) << j for j in range(n))
                for i in range(k)]
        if len(set(rows)) == k:
            return rows


def reduction_completeness_rate(n: int, k: int, trials: int,
                                seed: int) -> CompletenessReport:
    """Fraction of sampled no-constant-column functions whose reduced
    image is complete.  Each trial has its own RNG stream derived from
    (seed, trial), so results do not depend on scheduling."""
    if trials < 1:
        raise PreconditionError("need trials >= 1")
    if k < 2 or n < 1:
        raise PreconditionError("need k >= 2 and n >= 1")
    limit = max(n, DEFAULT_DIMENSION_LIMIT)
    successes = 0
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        rows = _sample_no_constant_columns(rng, n, k)
        f = FewZeroFunction.from_rows(rows, n=n, limit=limit)
        proper, _ = to_proper(f)
        reduced, _ = extract_reduced(proper)
        if classify_matrix(reduced).is_complete:
            successes += 1
    threshold = k < math.log2(n) - math.log2(math.log2(n)) + 1 if n >= 2 else False
    return CompletenessReport(n=n, k=k, trials=trials, successes=successes,
                              fraction=successes / trials, seed=seed,
                              within_threshold=threshold)


def exhaustive_completeness_fraction(n: int, k: int) -> Fraction:
    """Exact fraction of distinct-row, no-constant-column functions whose
    reduced image is complete (enumeration; tiny n and k only)."""
    if (1 << n) > 64 or k > 4:
        raise BudgetError("exhaustive enumeration is limited to 2^n <= 64, k <= 4")
    total = 0
    good = 0
    for rows in itertools.combinations(range(1 << n), k):
        f = FewZeroFunction.from_rows(rows, n=n)
        cols = f.matrix.column_ints()
        full = (1 << k) - 1
        if any(c == 0 or c == full for c in cols):
            continue
        total += 1
        proper, _ = to_proper(f)
        reduced, _ = extract_reduced(proper)
        if classify_matrix(reduced).is_complete:
            good += 1
    if total == 0:
        raise PreconditionError("no admissible matrices at this size")
    return Fraction(good, total)


# ---------------------------------------------------------------------------
# bound-dominance sweeps


@dataclass(frozen=True)
class SweepRow:
    function_id: str
    n: int
    k: int
    m: int
    epsilon: Fraction
    exact_rank: int
    bound: Fraction
    margin: Fraction
    proved_optimal: bool
    function: FewZeroFunction
    dnf: Dnf


def rank_bound_sweep(n: int, k: int, m: int, trials: int, seed: int,
                     node_budget: int | None = None) -> list[SweepRow]:
    """Sample ``trials`` functions from the weight class, solve each for
    minimal rank, and pair the optimum with the structural lower bound."""
    rows = []
    for trial in range(trials):
        f = sample_function(n, k, m, seed=f"{seed}:{trial}")
        result = minimal_dnf(f, "rank", node_budget)
        bound = rank_lower_bound(n, k, m)
        digest = hashlib.sha256(f.to_text().encode()).hexdigest()[:12]
        rank = result.optimum
        rows.append(SweepRow(
            function_id=f"{n}x{k}m{m}-{trial}-{digest}",
            n=n, k=k, m=m,
            epsilon=bound.epsilon,
            exact_rank=rank,
            bound=bound.value,
            margin=Fraction(rank) - bound.value,
            proved_optimal=result.proved_optimal,
            function=f,
            dnf=result.dnf,
        ))
    return rows
