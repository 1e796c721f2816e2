"""Command-line front end: matrix file parsing, report emission, seeds
and budgets.  Every report carries a versioned schema header and the
run's provenance fields, and identical invocations produce identical
output.

Exit codes: 0 success, 2 precondition/input violations, 3 budget
exhaustion (including unproved optima).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from . import analysis, canon, solver
from .errors import BudgetError, FaceCoverError
from .implicants import Literal, enumerate_prime_implicants
from .model import FewZeroFunction
from .solver import Dnf

SCHEMA = "facecover/1"

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3


def worker_cap() -> int:
    """Upper bound on worker count from FACECOVER_THREADS (>= 1).  The
    current implementation runs serially, which always respects the cap;
    per-trial RNG streams keep results schedule-independent anyway."""
    raw = os.environ.get("FACECOVER_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def parse_matrix_file(path: str) -> FewZeroFunction:
    """Zero-matrix text from a file path, or stdin when path is '-'."""
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    return FewZeroFunction.from_text(text)


def _frac(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return x


def _report(payload: dict, **provenance) -> dict:
    out = {"schema": SCHEMA, "version": __version__}
    out.update({k: v for k, v in provenance.items() if v is not None})
    out.update(payload)
    return out


def _emit(obj: dict, out) -> None:
    json.dump(obj, out, indent=2, default=str)
    out.write("\n")


def _write_text(text: str, path: str | None, out) -> None:
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_gen(args, out) -> int:
    if args.family == "complete":
        f = canon.complete_function(args.k)
        meta = {"family": "complete", "k": args.k, "n": f.n}
    else:
        f = canon.heavy_column_function(args.k)
        hk = canon.heavy_column_metadata(args.k)
        meta = {
            "family": "hk", "k": args.k, "n": f.n,
            "weight_threshold": hk.threshold,
            "count_lower_bound": hk.count_lower_bound,
            "meets_bound": hk.meets_bound,
            "has_adjacent_zeros": hk.has_adjacent_zeros,
        }
    _write_text(f.to_text(), args.out, out)
    if args.out:
        with open(args.out + ".json", "w", encoding="ascii") as fh:
            _emit(_report(meta), fh)
    return EXIT_OK


def cmd_canon(args, out) -> int:
    f = parse_matrix_file(args.infile)
    proper, transform = canon.to_proper(f)
    reduced, grouping = canon.extract_reduced(proper)
    sidecar = _report({
        "transform": {"perm": list(transform.perm), "neg": transform.neg},
        "grouping": {
            "groups": [list(g) for g in grouping.groups],
            "representatives": list(grouping.representatives),
        },
        "proper_matrix": proper.to_text().splitlines(),
    })
    _write_text(reduced.to_text(), args.out, out)
    if args.out:
        with open(args.out + ".json", "w", encoding="ascii") as fh:
            _emit(sidecar, fh)
    else:
        for line in json.dumps(sidecar, default=str, indent=2).splitlines():
            out.write("# " + line + "\n")
    return EXIT_OK


def cmd_implicants(args, out) -> int:
    f = parse_matrix_file(args.infile)
    primes = enumerate_prime_implicants(f)
    signed = [list(c.signed()) for c in primes]
    if args.json:
        _emit(_report({"n": f.n, "k": f.k, "count": len(signed),
                       "implicants": signed}), out)
    else:
        for s in signed:
            out.write(" ".join(f"{v:+d}" for v in s) + "\n")
    return EXIT_OK


def cmd_minimize(args, out) -> int:
    f = parse_matrix_file(args.infile)
    result = solver.minimal_dnf(f, args.objective, args.budget)
    payload = {
        "n": f.n, "k": f.k,
        "objective": args.objective,
        "optimum": result.optimum,
        "dnf": result.dnf.signed(),
        "rank": result.dnf.rank,
        "length": result.dnf.length,
        "proved_optimal": result.proved_optimal,
        "nodes_explored": result.nodes_explored,
    }
    if args.all:
        optima = solver.all_minimal_dnfs(f, args.objective, args.budget)
        payload["all_optima"] = [d.signed() for d in optima]
    _emit(_report(payload, budget=args.budget), out)
    return EXIT_OK if result.proved_optimal else EXIT_BUDGET


def cmd_analyze(args, out) -> int:
    f = parse_matrix_file(args.infile)
    with open(args.dnf, "r", encoding="ascii") as fh:
        data = json.load(fh)
    signed = data["dnf"] if isinstance(data, dict) else data
    dnf = Dnf.from_signed(signed)
    report = analysis.classify_conjunctions(f, dnf)
    ineq = analysis.check_inequalities(f, dnf, report)
    incidence = analysis.near_zero_incidence_check(f, dnf)

    def verdict(v):
        if v is None:
            return None
        return {"lhs": _frac(v.lhs), "rhs": _frac(v.rhs), "holds": v.holds}

    _emit(_report({
        "n": f.n, "k": f.k,
        "min_weight": report.min_weight,
        "epsilon": _frac(report.epsilon),
        "precondition_ok": report.precondition_ok,
        "class_counts": list(report.class_counts),
        "unclassified": report.unclassified,
        "classes": [{"conjunction": list(c.signed()), "class": cls.value}
                    for c, cls in report.assignments],
        "literal_multiplicity": {str(s): m for s, m
                                 in sorted(report.literal_multiplicity.items())},
        "max_near_zero_incidence": incidence.max_count,
        "inequalities": {
            "applicable": ineq.applicable,
            "theta1_counting": verdict(ineq.theta1_counting),
            "theta0_counting": verdict(ineq.theta0_counting),
            "positive_rank": verdict(ineq.positive_rank),
            "negative_rank": verdict(ineq.negative_rank),
        },
    }), out)
    return EXIT_OK


def cmd_bound(args, out) -> int:
    if args.kind == "t2":
        b = analysis.rank_lower_bound(args.n, args.k, args.m)
        _emit(_report({
            "kind": "t2", "n": b.n, "k": b.k, "m": b.m,
            "delta": _frac(b.delta), "epsilon": _frac(b.epsilon),
            "value": _frac(b.value), "regime": b.regime,
        }), out)
    else:
        b = analysis.almost_all_rank_bound(args.m, args.k, args.alpha)
        _emit(_report({
            "kind": "t3", "m": b.m, "k": b.k, "alpha": b.alpha,
            "lambda": b.lam,
            "low_regime_value": b.low_regime_value,
            "mid_regime_value": b.mid_regime_value,
            "low_regime": b.low_regime, "mid_regime": b.mid_regime,
        }), out)
    return EXIT_OK


def cmd_chernoff(args, out) -> int:
    c = analysis.chernoff_tail_check(args.k, getattr(args, "lambda"))
    _emit(_report({"k": c.k, "lambda": c.lam, "exact_sum": c.exact_sum,
                   "bound": c.bound, "holds": c.holds}), out)
    return EXIT_OK


def cmd_experiment(args, out) -> int:
    if args.kind == "t1":
        rep = analysis.reduction_completeness_rate(args.n, args.k,
                                                   args.trials, args.seed)
        _emit(_report({
            "kind": "t1", "n": rep.n, "k": rep.k, "trials": rep.trials,
            "successes": rep.successes, "fraction": rep.fraction,
            "within_threshold": rep.within_threshold,
            "sampling": rep.sampling,
        }, seed=args.seed), out)
        return EXIT_OK
    rows = analysis.rank_bound_sweep(args.n, args.k, args.m,
                                     args.trials, args.seed, args.budget)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["function_id", "n", "k", "m", "epsilon", "exact_rank",
                     "bound", "margin", "proved_optimal"])
    for r in rows:
        writer.writerow([r.function_id, r.n, r.k, r.m, str(r.epsilon),
                         r.exact_rank, str(r.bound), str(r.margin),
                         r.proved_optimal])
    return EXIT_OK


def cmd_verify(args, out) -> int:
    f = parse_matrix_file(args.infile)
    lit = Literal.from_signed(args.literal)
    rep = analysis.check_literal_multiplicity(f, lit, args.t)
    _emit(_report({
        "literal": rep.literal, "t": rep.t,
        "hypothesis_holds": rep.hypothesis_holds,
        "conclusion_holds": rep.conclusion_holds,
        "min_multiplicity": rep.min_multiplicity,
        "dnfs_checked": rep.dnfs_checked,
    }), out)
    return EXIT_OK


def cmd_sample(args, out) -> int:
    f = analysis.sample_function(args.n, args.k, getattr(args, "lambda"),
                                 seed=args.seed)
    _write_text(f.to_text(), args.out, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="facecover",
        description="DNF minimization and structural audits for Boolean "
                    "functions with few zeros (zero-matrix text format).")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a named zero matrix")
    gs = g.add_subparsers(dest="family", required=True)
    for fam in ("complete", "hk"):
        fp = gs.add_parser(fam)
        fp.add_argument("--k", type=int, required=True)
        fp.add_argument("--out")
        fp.set_defaults(func=cmd_gen)

    c = sub.add_parser("canon", help="proper + reduced canonical form")
    c.add_argument("--in", dest="infile", default="-")
    c.add_argument("--out")
    c.set_defaults(func=cmd_canon)

    i = sub.add_parser("implicants", help="enumerate all prime implicants")
    i.add_argument("--in", dest="infile", default="-")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_implicants)

    m = sub.add_parser("minimize", help="exact minimal-rank/shortest DNF")
    m.add_argument("--in", dest="infile", default="-")
    m.add_argument("--objective", choices=solver.OBJECTIVES, required=True)
    m.add_argument("--all", action="store_true",
                   help="also enumerate every optimum (tiny scale)")
    m.add_argument("--budget", type=int, help="search node budget")
    m.set_defaults(func=cmd_minimize)

    a = sub.add_parser("analyze", help="classify a DNF and check inequalities")
    a.add_argument("--in", dest="infile", default="-")
    a.add_argument("--dnf", required=True, help="JSON file with signed literals")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bound", help="rank lower-bound evaluators")
    bs = b.add_subparsers(dest="kind", required=True)
    b2 = bs.add_parser("t2")
    b2.add_argument("--n", type=int, required=True)
    b2.add_argument("--k", type=int, required=True)
    b2.add_argument("--m", type=int, required=True)
    b2.set_defaults(func=cmd_bound)
    b3 = bs.add_parser("t3")
    b3.add_argument("--m", type=int, required=True)
    b3.add_argument("--k", type=int, required=True)
    b3.add_argument("--alpha", type=float, required=True)
    b3.set_defaults(func=cmd_bound)

    ch = sub.add_parser("chernoff", help="exact binomial tail vs. bound")
    ch.add_argument("--k", type=int, required=True)
    ch.add_argument("--lambda", type=float, required=True)
    ch.set_defaults(func=cmd_chernoff)

    e = sub.add_parser("experiment", help="seeded randomized experiments")
    es = e.add_subparsers(dest="kind", required=True)
    e1 = es.add_parser("t1")
    e1.add_argument("--n", type=int, required=True)
    e1.add_argument("--k", type=int, required=True)
    e1.add_argument("--trials", type=int, required=True)
    e1.add_argument("--seed", type=int, required=True)
    e1.set_defaults(func=cmd_experiment)
    e2 = es.add_parser("t2sweep")
    e2.add_argument("--n", type=int, required=True)
    e2.add_argument("--k", type=int, required=True)
    e2.add_argument("--m", type=int, required=True)
    e2.add_argument("--trials", type=int, required=True)
    e2.add_argument("--seed", type=int, required=True)
    e2.add_argument("--budget", type=int)
    e2.set_defaults(func=cmd_experiment)

    v = sub.add_parser("verify", help="cut-based literal multiplicity oracle")
    v.add_argument("--in", dest="infile", default="-")
    v.add_argument("--literal", type=int, required=True,
                   help="signed literal: +j for x_j, -j for its negation")
    v.add_argument("--t", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sample", help="sample from the isolated-zero weight class")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--lambda", type=int, required=True, help="minimum column weight")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    return p


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except BudgetError as exc:
        _emit({"schema": SCHEMA, "error": type(exc).__name__,
               "message": str(exc)}, sys.stderr)
        return EXIT_BUDGET
    except (FaceCoverError, OSError, json.JSONDecodeError) as exc:
        _emit({"schema": SCHEMA, "error": type(exc).__name__,
               "message": str(exc)}, sys.stderr)
        return EXIT_PRECONDITION


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
