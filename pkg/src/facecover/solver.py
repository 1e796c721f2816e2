"""Exact minimal-rank / shortest-length DNF construction for few-zero
functions, plus equivalence checking and a greedy baseline.

Any DNF realizing f can be turned, conjunction by conjunction, into a
DNF of prime implicants without increasing rank or length (dropping
literals keeps implicanthood and only enlarges faces), so the search
space is restricted to subsets of the prime implicant set.  Coverage
requirements collapse to the subset-minimal "signatures" (sets of primes
covering a point), and a branch-and-bound over those rows with a
disjoint-row admissible bound proves optimality.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetError, DimensionError, PreconditionError
from .implicants import Conjunction, enumerate_prime_implicants, is_implicant
from .model import FewZeroFunction

OBJECTIVES = ("rank", "length")

#: Exhaustive truth-table equivalence is used up to this many variables;
#: beyond it realizes() falls back to implicant + coverage certificates.
EXHAUSTIVE_N = 24

#: Proved optimality is a desk-scale activity.
SOLVE_N_LIMIT = 22
SOLVE_K_LIMIT = 8


@dataclass(frozen=True)
class Dnf:
    """A set of distinct conjunctions, canonically ordered."""

    conjunctions: tuple[Conjunction, ...]

    def __post_init__(self):
        if list(self.conjunctions) != sorted(set(self.conjunctions)):
            raise DimensionError("conjunctions must be distinct and sorted; use Dnf.of")

    @classmethod
    def of(cls, conjunctions: Iterable[Conjunction]) -> "Dnf":
        return cls(tuple(sorted(set(conjunctions))))

    @classmethod
    def from_signed(cls, signed_lists: Iterable[Iterable[int]]) -> "Dnf":
        return cls.of(Conjunction.from_signed(s) for s in signed_lists)

    @property
    def length(self) -> int:
        return len(self.conjunctions)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.conjunctions)

    @property
    def rank_plus(self) -> int:
        return sum(c.rank_plus for c in self.conjunctions)

    @property
    def rank_minus(self) -> int:
        return sum(c.rank_minus for c in self.conjunctions)

    @property
    def max_var(self) -> int:
        return max((c.max_var for c in self.conjunctions), default=0)

    def evaluate(self, p: int) -> int:
        return 1 if any(c.satisfied_by(p) for c in self.conjunctions) else 0

    def signed(self) -> list[list[int]]:
        return [list(c.signed()) for c in self.conjunctions]

    def measure(self, objective: str) -> int:
        _check_objective(objective)
        return self.rank if objective == "rank" else self.length

    def __repr__(self) -> str:
        return f"Dnf({self.signed()})"


@dataclass(frozen=True)
class SolveResult:
    dnf: Dnf
    optimum: int
    objective: str
    nodes_explored: int
    proved_optimal: bool


def _check_objective(objective: str) -> None:
    if objective not in OBJECTIVES:
        raise PreconditionError(f"objective must be one of {OBJECTIVES}")


@functools.lru_cache(maxsize=16)
def _var_masks(n: int) -> tuple[int, ...]:
    """For each variable, the 2^n-bit truth-table mask of points where it
    is 1 (point p <-> bit p)."""
    full_bits = 1 << n
    masks = []
    for i in range(1, n + 1):
        half = 1 << (i - 1)
        block = ((1 << half) - 1) << half  # one period: half zeros, half ones
        size = half * 2
        while size < full_bits:
            block |= block << size
            size *= 2
        masks.append(block)
    return tuple(masks)


def _face_table(conj: Conjunction, n: int) -> int:
    table = (1 << (1 << n)) - 1
    masks = _var_masks(n)
    for lit in conj.literals():
        m = masks[lit.var - 1]
        table &= m if lit.positive else ~m
    return table


def _dnf_table(dnf: Dnf, n: int) -> int:
    table = 0
    for c in dnf.conjunctions:
        table |= _face_table(c, n)
    return table


def _find_uncovered(n: int, conjs: Sequence[Conjunction], zeros: frozenset[int],
                    node_budget: int) -> int | None:
    """A point outside every face and not a zero, or None if the faces
    cover everything but the zeros.  Recursive cube splitting."""
    nodes = 0

    def rec(fixed_mask: int, fixed_val: int, alive: list[Conjunction]) -> int | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetError("coverage check budget exhausted")
        still = []
        for c in alive:
            if (fixed_val ^ c.pos) & c.vars_mask & fixed_mask:
                continue  # face disjoint from this region
            if c.vars_mask & ~fixed_mask == 0:
                return None  # face contains the whole region
            still.append(c)
        free = ((1 << n) - 1) & ~fixed_mask
        if not still:
            # region entirely uncovered; any non-zero point in it witnesses
            # failure, and at most len(zeros) probes can miss
            s = free
            tries = 0
            while True:
                p = fixed_val | s
                if p not in zeros:
                    return p
                tries += 1
                if s == 0 or tries > len(zeros):
                    return None  # region consists of zeros only
                s = (s - 1) & free
        split = (still[0].vars_mask & free)
        split_bit = split & -split
        for val in (0, split_bit):
            hit = rec(fixed_mask | split_bit, fixed_val | val, still)
            if hit is not None:
                return hit
        return None

    return rec(0, 0, list(conjs))


def realizes(f: FewZeroFunction, dnf: Dnf, node_budget: int = 10_000_000) -> bool:
    """True iff the DNF agrees with f at every point of the cube.

    Exhaustive truth tables up to n=24; beyond that every conjunction is
    checked to be an implicant and face coverage of the ones is verified
    by complement-cube decomposition.
    """
    if dnf.max_var > f.n:
        raise DimensionError("DNF mentions variables beyond n")
    if f.n <= EXHAUSTIVE_N:
        on = ((1 << (1 << f.n)) - 1) ^ sum(1 << z for z in f.zero_ints)
        return _dnf_table(dnf, f.n) == on
    if not all(is_implicant(f, c) for c in dnf.conjunctions):
        return False
    return _find_uncovered(f.n, dnf.conjunctions, f.zero_ints, node_budget) is None


#: Apply the quadratic subset-minimality filter to signatures only below
#: this count; above it, redundant (superset) rows are kept, which is
#: harmless for correctness.
_MINIMAL_FILTER_CAP = 4096


class _CoverProblem:
    """Set-cover view: rows are the distinct coverage signatures of the
    one-points (hardest first), columns are prime implicants."""

    def __init__(self, f: FewZeroFunction, primes: Sequence[Conjunction]):
        self.f = f
        self.primes = tuple(primes)
        n = f.n
        cover: dict[int, int] = {}
        for idx, prime in enumerate(self.primes):
            bit = 1 << idx
            for p in prime.face_points(n):
                cover[p] = cover.get(p, 0) | bit
        zeros = f.zero_ints
        assert not any(z in cover for z in zeros), "a prime covers a zero"
        expected = (1 << n) - f.k
        if len(cover) != expected:
            raise AssertionError("prime implicants fail to cover the ones")

        sig_first: dict[int, int] = {}
        for p in sorted(cover):
            s = cover[p]
            if s not in sig_first:
                sig_first[s] = p
        sigs = sorted(sig_first, key=lambda s: (s.bit_count(), sig_first[s]))
        if len(sigs) <= _MINIMAL_FILTER_CAP:
            minimal: list[int] = []
            for s in sigs:
                if not any(t & s == t for t in minimal):
                    minimal.append(s)
            sigs = minimal
        self.rows = sigs  # candidate masks over primes, hardest first
        self.witnesses = [sig_first[s] for s in sigs]
        self.all_rows_mask = (1 << len(sigs)) - 1

        # per-prime row-hit masks, built via bytearrays to avoid
        # quadratic bigint updates
        nbytes = (len(sigs) + 7) // 8
        buffers = [bytearray(nbytes) for _ in self.primes]
        for ri, sig in enumerate(sigs):
            byte, bit = ri >> 3, 1 << (ri & 7)
            s = sig
            while s:
                low = s & -s
                buffers[low.bit_length() - 1][byte] |= bit
                s ^= low
        self.rowhits = [int.from_bytes(b, "little") for b in buffers]

        self.row_cands: list[list[int]] = []
        for sig in sigs:
            cand = []
            s = sig
            while s:
                low = s & -s
                cand.append(low.bit_length() - 1)
                s ^= low
            self.row_cands.append(cand)

    def costs(self, objective: str) -> list[int]:
        if objective == "rank":
            return [p.rank for p in self.primes]
        return [1] * len(self.primes)


#: Deterministic destroy-and-repair rounds applied after the plain greedy
#: pass; each round ejects one chosen prime and re-covers the hole.
_GREEDY_REPAIR_ROUNDS = 40


def _greedy_cover(problem: _CoverProblem, costs: Sequence[int]) -> list[int]:
    """Cost-effectiveness greedy, redundancy prune, and a deterministic
    eject-and-repair improvement loop."""
    rows = problem.rows
    if not rows:
        return []
    hits = problem.rowhits
    all_rows = problem.all_rows_mask

    def fill(covered: int, chosen: list[int]) -> list[int]:
        while covered != all_rows:
            best, best_new, best_cost = -1, 0, 0
            for i, h in enumerate(hits):
                new = (h & ~covered).bit_count()
                if new == 0:
                    continue
                # maximize new/cost, then lower cost, then lower index
                if (best == -1 or new * best_cost > best_new * costs[i]
                        or (new * best_cost == best_new * costs[i]
                            and (costs[i], i) < (best_cost, best))):
                    best, best_new, best_cost = i, new, costs[i]
            assert best >= 0
            chosen.append(best)
            covered |= hits[best]
        return chosen

    def prune(chosen: list[int]) -> list[int]:
        for i in sorted(chosen, key=lambda i: (-costs[i], -i)):
            rest = 0
            for j in chosen:
                if j != i:
                    rest |= hits[j]
            if rest == all_rows:
                chosen.remove(i)
        return chosen

    def total(chosen: list[int]) -> int:
        return sum(costs[i] for i in chosen)

    chosen = prune(fill(0, []))
    for _ in range(_GREEDY_REPAIR_ROUNDS):
        improved = False
        for eject in sorted(chosen, key=lambda i: (-costs[i], -i)):
            rest = [j for j in chosen if j != eject]
            covered = 0
            for j in rest:
                covered |= hits[j]
            trial = prune(fill(covered, rest))
            if total(trial) < total(chosen):
                chosen = trial
                improved = True
                break
        if not improved:
            break
    return sorted(chosen)


#: The admissible dual bound examines at most this many uncovered rows
#: per node (rows are ordered hardest first, so the cap rarely binds on
#: small instances).
_LB_ROW_CAP = 256


def _search_covers(problem: _CoverProblem, objective: str,
                   node_budget: int | None,
                   collect_all_at: int | None = None):
    """Branch-and-bound over the signature rows.

    Branches on the hardest uncovered row (rows are pre-sorted by
    candidate count, then lexicographically first witness).  The
    admissible lower bound is dual water-filling: scanning uncovered rows
    hardest first, each row claims the minimum remaining cost among its
    candidate primes and that amount is subtracted from all of them, so
    no prime is charged more than its cost.  Returns (best_cost,
    best_set, nodes, proved, all_optima); all_optima is filled only when
    collect_all_at is given (enumerate every cover of exactly that cost).
    """
    costs = problem.costs(objective)
    rows = problem.rows
    hits = problem.rowhits
    row_cands = problem.row_cands
    nrows = len(rows)
    all_rows = problem.all_rows_mask

    if nrows == 0:
        return 0, [], 0, True, [[]] if collect_all_at is not None else None

    def lower_bound(covered: int) -> int:
        remaining = list(costs)
        lb = 0
        examined = 0
        u = all_rows & ~covered
        while u and examined < _LB_ROW_CAP:
            low = u & -u
            ri = low.bit_length() - 1
            u ^= low
            examined += 1
            cand = row_cands[ri]
            delta = min(remaining[i] for i in cand)
            if delta > 0:
                lb += delta
                for i in cand:
                    remaining[i] -= delta
        return lb

    greedy = _greedy_cover(problem, costs)
    best_cost = sum(costs[i] for i in greedy)
    best_set = sorted(greedy)
    collecting = collect_all_at is not None
    if collecting:
        best_cost = collect_all_at + 1  # prune bound; never replaced
    all_optima: list[list[int]] | None = [] if collecting else None

    nodes = 0
    proved = True

    def dfs(covered: int, cost: int, chosen: list[int], banned: int) -> None:
        nonlocal nodes, best_cost, best_set
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetError("search budget exhausted")
        if covered == all_rows:
            if collecting:
                if cost == collect_all_at:
                    all_optima.append(sorted(chosen))
            elif cost < best_cost:
                best_cost = cost
                best_set = sorted(chosen)
            return
        bound = cost + lower_bound(covered)
        if collecting:
            if bound > collect_all_at:
                return
        elif bound >= best_cost:
            return
        # hardest uncovered row: rows are pre-sorted, take the first
        u = all_rows & ~covered
        ri = (u & -u).bit_length() - 1
        avail = [i for i in row_cands[ri] if not (banned >> i) & 1]
        if not avail:
            return
        # explore high-coverage cheap candidates first
        order = sorted(avail,
                       key=lambda i: (-(hits[i] & ~covered).bit_count(), costs[i], i))
        newly_banned = 0
        for i in order:
            dfs(covered | hits[i], cost + costs[i], chosen + [i],
                banned | newly_banned)
            newly_banned |= 1 << i
            if node_budget is not None and nodes > node_budget:
                return

    try:
        dfs(0, 0, [], 0)
    except BudgetError:
        proved = False

    return best_cost, best_set, nodes, proved, all_optima


def _problem_for(f: FewZeroFunction) -> _CoverProblem | None:
    """Cover problem or None for the degenerate all-zeros function."""
    if f.k == 1 << f.n:
        return None
    if f.n > SOLVE_N_LIMIT:
        raise BudgetError(f"exact solving is limited to n <= {SOLVE_N_LIMIT}")
    primes = enumerate_prime_implicants(f)
    return _CoverProblem(f, primes)


def minimal_dnf(f: FewZeroFunction, objective: str = "rank",
                node_budget: int | None = None) -> SolveResult:
    """Exact optimum over prime-implicant covers of the ones of f.

    On budget exhaustion the best cover found so far is returned with
    proved_optimal=False.
    """
    _check_objective(objective)
    problem = _problem_for(f)
    if problem is None:
        return SolveResult(Dnf.of([]), 0, objective, 0, True)
    best_cost, best_set, nodes, proved, _ = _search_covers(
        problem, objective, node_budget)
    dnf = Dnf.of(problem.primes[i] for i in best_set)
    return SolveResult(dnf, best_cost, objective, nodes, proved)


def all_minimal_dnfs(f: FewZeroFunction, objective: str = "rank",
                     node_budget: int | None = None) -> tuple[Dnf, ...]:
    """Every optimal realization composed of prime implicants (tiny scale)."""
    _check_objective(objective)
    if f.n > 10 or f.k > 5:
        raise BudgetError("all_minimal_dnfs is limited to n <= 10, k <= 5")
    problem = _problem_for(f)
    if problem is None:
        return (Dnf.of([]),)
    opt = minimal_dnf(f, objective, node_budget)
    if not opt.proved_optimal:
        raise BudgetError("could not prove the optimum within budget")
    _, _, _, proved, optima = _search_covers(
        problem, objective, node_budget, collect_all_at=opt.optimum)
    if not proved:
        raise BudgetError("enumeration budget exhausted")
    assert optima is not None
    return tuple(sorted((Dnf.of(problem.primes[i] for i in sel) for sel in optima),
                        key=lambda d: d.signed()))


def greedy_dnf(f: FewZeroFunction, objective: str = "rank") -> Dnf:
    """Greedy cover baseline; realizes f, never better than the optimum."""
    _check_objective(objective)
    problem = _problem_for(f)
    if problem is None:
        return Dnf.of([])
    chosen = _greedy_cover(problem, problem.costs(objective))
    return Dnf.of(problem.primes[i] for i in chosen)
