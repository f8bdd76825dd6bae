"""Command line front end: ``padicps classify`` and ``padicps suite``.

Exit status: 0 all checks pass, 1 a check failed, 2 usage or parse error,
3 precision exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .characters import CharacterSpecError, classify, parse_character
from .padic import PrecisionError
from .suites import SUITES, RunConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=5, help="the prime")
    common.add_argument("--precision", type=int, default=30, help="working precision N (digits)")
    common.add_argument("--slack", type=int, default=5, help="digits of tolerance below N")
    common.add_argument("--chi", default="m=2;cond=0;unit=;at_p=1",
                        help="character spec m=<int>;cond=<n>;unit=<v,..>;at_p=<scalar>")
    common.add_argument("--level", type=int, default=1, help="slice level h")
    common.add_argument("--degree", type=int, default=9, help="slice degree bound D")
    common.add_argument("--smooth-level", type=int, default=1, help="level n of the smooth module")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=20, help="random trials per sampled check")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="padicps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="classify Ind_P^G(chi)")
    s = sub.add_parser("suite", parents=[common], help="run verification suites")
    s.add_argument("--suite", action="append", default=None,
                   help=f"suite name(s), comma separated or repeated; 'all' (default) or one of {', '.join(SUITES)}; "
                        "an empty value selects nothing")
    return parser


def _selected(values: Optional[List[str]]) -> List[str]:
    if values is None:
        return list(SUITES)
    names = [n.strip() for v in values for n in v.split(",") if n.strip()]
    if "all" in names:
        return list(SUITES)
    bad = [n for n in names if n not in SUITES]
    if bad:
        raise ValueError(f"unknown suite(s): {', '.join(bad)}")
    return list(dict.fromkeys(names))


def _text(report: dict) -> str:
    if "suites" not in report:
        return "\n".join(f"{k}: {v}" for k, v in report.items()) + "\n"
    lines = []
    for s in report["suites"]:
        for c in s["checks"]:
            lines.append(f"{'PASS' if c['passed'] else 'FAIL'} {s['suite']}/{c['name']}")
    lines.append(f"overall: {'PASS' if report['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _emit(report: dict, fmt: str, out: Optional[str]):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n" if fmt == "json" else _text(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "classify":
            chi = parse_character(args.chi, args.p, args.precision)
            report = classify(chi).to_json()
            report["p"] = args.p
            _emit(report, args.format, args.out)
            return EXIT_OK
        cfg = RunConfig(p=args.p, precision=args.precision, slack=args.slack, chi=args.chi,
                        level=args.level, degree=args.degree, smooth_level=args.smooth_level,
                        seed=args.seed, trials=args.trials, suites=_selected(args.suite))
        cfg.character()  # validate before running anything
        results = [run_suite(name, cfg) for name in cfg.suites]
        report = {"config": cfg.to_json(), "suites": results,
                  "passed": all(r["passed"] for r in results)}
        _emit(report, args.format, args.out)
        return EXIT_OK if report["passed"] else EXIT_FAIL
    except CharacterSpecError as exc:
        print(f"padicps: bad --chi: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"padicps: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ValueError as exc:
        print(f"padicps: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
