"""Command-line front end.

Every subcommand prints one JSON document to stdout.  Exit codes:
0 success / all checks pass, 1 verification found violations, 2 invalid
input (with a machine-readable error object on stdout).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from importlib import resources
from typing import List, Optional

from .arith import InvalidInputError, UnfactorableError
from .codes import code_from_json, code_to_json, load_code
from .combinatorics import check_occupation, iter_support_representatives
from .config import Config, load_config
from .oracle import dense_apply, dense_symmetric_vector, states_agree
from .operators import StateVector, apply_generator, error_basis
from .reptheory import branching_multiplicity, sym_dim
from .solver import build_qf_system, family_code, search, solve_system
from .verifier import run_level

DATA_PACKAGE = "quditcodes.data"
SHIPPED_CODES = ("qutrit13.json", "c2_d5_n16.json", "c3_d7_n36.json",
                 "c4_d7_n20_eta6.json")


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _resolve_code(path: str):
    try:
        return load_code(path)
    except FileNotFoundError:
        pass
    entry = resources.files(DATA_PACKAGE).joinpath(path)
    if entry.is_file():
        return code_from_json(json.loads(entry.read_text()))
    raise InvalidInputError(f"no such code file: {path}")


def _parse_support(text: str):
    try:
        return [tuple(int(x) for x in part.split(","))
                for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"malformed support string {text!r}") from exc


def cmd_branching(args, config: Config) -> int:
    eta = args.eta if args.eta is not None else args.N % args.d
    _emit({"d": args.d, "N": args.N, "dim": sym_dim(args.d, args.N),
           "eta": eta,
           "multiplicity": branching_multiplicity(args.d, args.N, eta)})
    return 0


def cmd_orbits(args, config: Config) -> int:
    reps = []
    for rep in iter_support_representatives(args.d, args.N):
        reps.append(list(rep))
        if args.limit is not None and len(reps) >= args.limit:
            break
    _emit({"d": args.d, "N": args.N, "count": len(reps),
           "representatives": reps})
    return 0


def cmd_check(args, config: Config) -> int:
    code = _resolve_code(args.code)
    mode = args.mode or config.mode
    report = run_level(code, args.level, mode, config.float_tolerance,
                       config.max_d, config.max_n)
    _emit(report.to_json())
    return 0 if report.passed else 1


def cmd_solve(args, config: Config) -> int:
    support = [check_occupation(u, args.d, args.N)
               for u in _parse_support(args.support)]
    system = build_qf_system(args.d, args.N, support)
    solutions = solve_system(system)
    payload = {
        "system": system.to_json(),
        "codes": [code_to_json(s.code) for s in solutions],
        "xi": [[[x.numerator, x.denominator] for x in s.xi] for s in solutions],
    }
    if not solutions:
        payload["notice"] = "no strictly positive solution; choose another support"
    _emit(payload)
    return 0


def cmd_family(args, config: Config) -> int:
    code, note = family_code(args.d)
    _emit({"code": code_to_json(code), "discrepancy": note.to_json()})
    return 0


def cmd_search(args, config: Config) -> int:
    result = search(args.d, args.N, args.k, max_candidates=args.max)
    _emit({"codes": [code_to_json(c) for c in result.codes],
           "candidates_tried": result.candidates_tried,
           "exhausted": result.exhausted})
    return 0


def cmd_oracle(args, config: Config) -> int:
    """Differential test: combinatorial vs dense action on random basis
    vectors, all generators each."""
    rng = random.Random(args.seed)
    basis = [op for op in error_basis(args.d) if op.kind != "I"]
    for _ in range(args.trials):
        cuts = sorted(rng.randint(0, args.N) for _ in range(args.d - 1))
        u = tuple(b - a for a, b in zip([0] + cuts, cuts + [args.N]))
        dense_u = dense_symmetric_vector(u, term_cap=config.oracle_term_cap)
        for op in basis:
            sparse = apply_generator(op, StateVector.basis(u))
            dense = dense_apply(op, dense_u, config.oracle_term_cap)
            if not states_agree(dense, sparse, config.oracle_term_cap):
                _emit({"pass": False, "witness": {"u": list(u),
                                                  "operator": op.name()}})
                return 1
    _emit({"pass": True, "d": args.d, "N": args.N, "trials": args.trials,
           "generators": len(basis)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quditcodes",
        description="Exact construction and verification of permutation-"
                    "invariant qudit error-correcting codes.")
    parser.add_argument("--config", help="JSON config file (overrides $QECC_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("branching", help="irrep dimension and multiplicity")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--eta", type=int)
    p.set_defaults(func=cmd_branching)

    p = sub.add_parser("orbits", help="eligible support orbit representatives")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("check", help="verify a code file")
    p.add_argument("--code", required=True)
    p.add_argument("--level", choices=("full", "reduced", "qf"), default="full")
    p.add_argument("--mode", choices=("exact", "float"))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve the quadratic forms on a support")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--support", required=True,
                   help='semicolon-separated occupation vectors, e.g. '
                        '"13,0,0;4,9,0;3,5,5"')
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("family", help="three-orbit code at N=(d-1)^2")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("search", help="search supports of a given size")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("oracle", help="differential test vs dense tensor action")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        return args.func(args, config)
    except (InvalidInputError, UnfactorableError, json.JSONDecodeError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 2


if __name__ == "__main__":
    sys.exit(main())
