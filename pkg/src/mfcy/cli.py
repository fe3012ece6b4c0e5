"""Command line front end.

Exit codes: 0 success, 1 validation failure, 2 parse failure, 3 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from types import SimpleNamespace

from . import cy
from .hochschild import OPERATORS, ChainSum
from .mfcat import NotAFactorizationError, ObjectMismatchError
from .polyring import PolyParseError
from .problem import (
    ProblemError,
    ProblemParseError,
    Settings,
    _task_residue,
    chain_sum_json,
    emit,
    load_problem,
    parse_point,
    rational,
    run,
)
from .verify import run_suite

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _settings(args) -> Settings:
    return Settings(mode=args.mode, point=parse_point(args.point), budget=args.budget or None,
                    threads=args.threads, seed=args.seed, timing=getattr(args, "timing", False))


def cmd_residue(args) -> object:
    raw = _read(args.input)
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as err:
        raise ProblemParseError(err.msg, err.lineno, err.colno) from None
    names = data.get("vars")
    if not isinstance(names, list) or not names:
        raise ProblemError("missing field 'vars'")
    bare = SimpleNamespace(raw=raw, names=names)
    value, diag = _task_residue(bare, data, _settings(args))
    return {"value": value, **diag}


def cmd_mf_check(args) -> object:
    prob = load_problem(_read(args.input))
    return [{"object": name, "rank": d.k, "valid": True} for name, d in prob.objects.items()]


def cmd_chain_apply(args) -> object:
    prob = load_problem(_read(args.input))
    name = args.chain or next(iter(prob.chains), None)
    if name not in prob.chains:
        raise ProblemError(f"unknown chain {name!r}")
    return chain_sum_json(prob, ChainSum.of(prob.chains[name]).apply(OPERATORS[args.op]))


def cmd_theta(args) -> object:
    raw = _read(args.input)
    prob = load_problem(raw)
    data = json.loads(raw)
    st = _settings(args)
    mode = data.get("mode", st.mode) if args.mode_given is None else args.mode_given
    point = parse_point(data["point"]) if "point" in data and args.point is None else st.point
    name = args.chain or ("chain" if "chain" in prob.chains else next(iter(prob.chains), None))
    if name not in prob.chains:
        raise ProblemError("no chain given")
    t0 = time.perf_counter()
    res = cy.evaluate_theta(prob.chains[name], prob.omega, mode, point, st.budget, st.threads)
    return {"value": rational(res.value), "term_count": res.term_count,
            "elapsed": round(time.perf_counter() - t0, 6)}


def cmd_verify(args) -> object:
    report = run_suite(args.corpus, args.seed, args.threads, args.chains, args.cocycles, args.pairs)
    args.verify_failed = not report.passed
    return report.as_dict()


def cmd_run(args) -> object:
    return run(load_problem(_read(args.input)), _settings(args))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("total", "point"), default=None,
                        help="sum residues over all critical points (default) or take one point")
    common.add_argument("--point", default=None, help="rational point for --mode point, e.g. 0,1/2")
    common.add_argument("--budget", type=int, default=cy.DEFAULT_BUDGET,
                        help="refuse Theta evaluations above this many enumerated terms (0: no limit)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="mfcy", description="Exact residue functionals on matrix factorizations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("residue", parents=[common], help="residue of polynomial data")
    p.add_argument("input", help="JSON file with vars, numerator, denominators (or - for stdin)")
    p.set_defaults(func=cmd_residue)

    mf = sub.add_parser("mf", help="matrix factorization utilities")
    mf_sub = mf.add_subparsers(dest="mf_command", required=True)
    p = mf_sub.add_parser("check", parents=[common], help="validate the objects of a problem file")
    p.add_argument("input")
    p.set_defaults(func=cmd_mf_check)

    ch = sub.add_parser("chain", help="Hochschild chain operators")
    ch_sub = ch.add_subparsers(dest="chain_command", required=True)
    p = ch_sub.add_parser("apply", parents=[common], help="apply b, b(delta), b(mu), tau or N to a chain")
    p.add_argument("--op", required=True, choices=sorted(OPERATORS))
    p.add_argument("--chain", default=None, help="chain name (default: the first chain in the file)")
    p.add_argument("input")
    p.set_defaults(func=cmd_chain_apply)

    p = sub.add_parser("theta", parents=[common], help="evaluate Theta on a chain")
    p.add_argument("--chain", default=None)
    p.add_argument("input")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--corpus", default="standard")
    p.add_argument("--chains", type=int, default=6, help="random chains per corpus entry and check")
    p.add_argument("--cocycles", type=int, default=8)
    p.add_argument("--pairs", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", parents=[common], help="execute the tasks of a problem file")
    p.add_argument("--timing", action="store_true", help="add elapsed seconds to each record")
    p.add_argument("input")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.mode_given = args.mode
    if args.mode is None:
        args.mode = "total"
    args.verify_failed = False
    try:
        out = args.func(args)
    except cy.BudgetError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (ProblemParseError, PolyParseError) as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (ProblemError, NotAFactorizationError, ObjectMismatchError, cy.NotACocycleError,
            cy.VolumeFormError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(emit(out, args.format) + "\n")
    return EXIT_INVALID if args.verify_failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
