"""Command-line front end.

Every subcommand prints one JSON report on stdout (sorted keys, so identical
inputs give identical bytes) and exits with

* 0 when the computation succeeded and every check held,
* 1 when a mathematical check failed,
* 2 on a usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence

from .errors import W3Error
from .hexquot import Restriction, reduce_mod_R
from .parallel import workers_from_env
from .pi1cfg import Parity
from .suites import SUITES, run_suite
from .w3 import aggregate, delta_ledger, independence_certificate, load_ledger, w3_closed_form

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so errors become JSON reports."""

    def error(self, message):
        raise UsageError(message)


def _report(command: str, inputs: dict, outputs: dict, ok: bool) -> dict:
    return {"command": command, "inputs": inputs, "outputs": outputs,
            "status": "ok" if ok else "fail"}


def cmd_w3(args) -> tuple[dict, list[str]]:
    parity = Parity.parse(args.parity)
    inputs = {"k": args.k, "parity": parity.value, "mod_r": args.mod_r,
              "from_ledger": args.from_ledger}
    closed = w3_closed_form(args.k, parity)
    outputs: dict[str, Any] = {}
    ok = True
    if args.from_ledger is None:
        poly = closed
    else:
        ledger = (delta_ledger(args.k) if args.from_ledger == "bundled"
                  else load_ledger(args.from_ledger, args.k))
        poly = aggregate(ledger, parity)
        ok = poly == closed
        outputs["matches_closed_form"] = ok
    outputs["polynomial"] = poly.to_json()
    human = [f"W3(delta_{args.k}), n {parity.value}: {poly}"]
    if args.mod_r:
        residue = reduce_mod_R(poly, parity)
        outputs["residue"] = residue.to_json()
        human.append(f"mod R: {residue.as_poly()}")
    if args.from_ledger is not None:
        human.append(f"ledger agrees with closed form: {ok}")
    return _report("w3", inputs, outputs, ok), human


def cmd_independence(args) -> tuple[dict, list[str]]:
    parity = Parity.parse(args.parity)
    restriction = Restriction.TOPOLOGICAL if args.topological else Restriction.NONE
    inputs = {"kmin": args.kmin, "kmax": args.kmax, "parity": parity.value,
              "restriction": restriction.value}
    cert = independence_certificate(args.kmin, args.kmax, parity, restriction,
                                    workers=workers_from_env())
    ok = cert.independent and cert.check()
    outputs = {"certificate": cert.to_json(), "independent": cert.independent,
               "witness_verified": cert.check()}
    human = [f"rank {cert.rank} of {len(cert.labels)} ({restriction.value}, n {parity.value})"]
    return _report("independence", inputs, outputs, ok), human


def cmd_verify(args) -> tuple[dict, list[str]]:
    results = run_suite(args.suite, args.seed)
    ok = all(c.passed for checks in results.values() for c in checks)
    outputs = {name: [c.to_json() for c in checks] for name, checks in results.items()}
    human = [f"{'PASS' if c.passed else 'FAIL'} {name}: {c.name} ({c.cases} cases)"
             for name, checks in results.items() for c in checks]
    return _report("verify", {"suite": args.suite, "seed": args.seed}, outputs, ok), human


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="w3calc", description="Exact W3 computations for the delta_k family.")
    parser.add_argument("--human", action="store_true",
                        help="also print a readable summary on stderr")
    parser.add_argument("--timing", action="store_true",
                        help="add wall-clock seconds to the report (breaks byte-identical output)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("w3", help="W3(delta_k) from the closed form or a crossing ledger")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--parity", choices=["even", "odd"], required=True)
    p.add_argument("--mod-r", action="store_true", help="also reduce modulo the hexagon relators")
    p.add_argument("--from-ledger", metavar="PATH|bundled",
                   help="aggregate this ledger file (or the bundled one) instead")
    p.set_defaults(func=cmd_w3)

    p = sub.add_parser("independence", help="rank certificate for W3(delta_k), kmin <= k <= kmax")
    p.add_argument("--kmin", type=int, default=4)
    p.add_argument("--kmax", type=int, default=64)
    p.add_argument("--parity", choices=["even", "odd"], required=True)
    p.add_argument("--topological", action="store_true",
                   help="kill every monomial outside the survival region as well")
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(report: dict):
    sys.stdout.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _emit({"command": argv[0] if argv else None, "error": str(exc), "status": "fail"})
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        report, human = args.func(args)
    except W3Error as exc:
        _emit({"command": args.command, "error": f"{type(exc).__name__}: {exc}", "status": "fail"})
        return EXIT_USAGE
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    _emit(report)
    if args.human:
        for line in human:
            print(line, file=sys.stderr)
    return EXIT_OK if report["status"] == "ok" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
