"""Command-line entry point: ``forbidwords <command> ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys

from .canonical import canonical_system, defines, dumps_system, loads_system
from .extremal import extremal_row, verify_extremal
from .forks import ClassificationError, all_forks, classify
from .improve import REWRITES, lemma_4_5_conditions, sample_application
from .report import Report
from .sweep import CHECKS, DEFAULT_MAX_LEN, sweep
from .systems import BudgetExceeded, generate, verify_theorem_4_15
from .words import PeriodicWord, WordError, parse_word

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _periodic(text: str) -> PeriodicWord:
    try:
        return PeriodicWord(text)
    except WordError as exc:
        raise UsageError(str(exc)) from exc


def _read_system(spec: str) -> frozenset[str]:
    """A forbidden system from a file, a JSON array, or ``aa,bab,...``."""
    text = spec
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    text = text.strip()
    try:
        if text.startswith("["):
            return loads_system(text)
        return frozenset(parse_word(w.strip()) for w in text.replace("\n", ",").split(",") if w.strip())
    except ValueError as exc:
        raise UsageError(f"cannot read forbidden system: {exc}") from exc


def _emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_canon(args) -> int:
    print(dumps_system(canonical_system(_periodic(args.word))))
    return OK


def cmd_forks(args) -> int:
    W = _periodic(args.word)
    try:
        table = classify(all_forks(W))
    except ClassificationError as exc:
        print(json.dumps({"word": W.period, "error": str(exc)}))
        return FAILED
    print(table.to_json())
    return OK


def cmd_defines(args) -> int:
    print(json.dumps(defines(_read_system(args.system)).to_dict()))
    return OK


def cmd_extremal(args) -> int:
    if args.max_i < 1:
        raise UsageError("--max-i must be at least 1")
    rows, ok = [], True
    for i in range(1, args.max_i + 1):
        rep = verify_extremal(i)
        ok &= rep.ok
        rows.append({**extremal_row(i), "ok": rep.ok, "failures": rep.failures})
    if args.format == "csv":
        cols = ["i", "len_s", "len_t", "C_s", "C_t", "ok"]
        lines = [",".join(cols)] + [",".join(str(r[c]).lower() if c == "ok" else str(r[c]) for c in cols) for r in rows]
        print("\n".join(lines))
    else:
        print(json.dumps(rows, indent=2))
    return OK if ok else FAILED


def cmd_systems(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    try:
        rep = verify_theorem_4_15(args.n)
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps(rep.to_dict(), indent=2))
    return OK if rep.ok else FAILED


def cmd_sweep(args) -> int:
    checks = args.checks.split(",") if args.checks else CHECKS
    try:
        report = sweep(args.max_len, checks, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(report.to_csv() if args.format == "csv" else report.to_json(), args.out)
    return OK if report.ok else FAILED


def cmd_improve(args) -> int:
    rng = random.Random(args.seed)
    rep = Report(data={"seed": args.seed, "trials": args.trials})
    for kind in REWRITES:
        changed = 0
        for _ in range(args.trials):
            S, S2, ell = sample_application(rng, kind)
            changed += S2 != S
            rep.check(kind, generate(S2).last >= generate(S).last, f"{S} -> {S2}")
            if ell is not None and S2 != S:
                rep.check(f"{kind}_lemma", lemma_4_5_conditions(S, S2, ell), f"{S} -> {S2} at {ell}")
        rep.data[f"{kind}_changed"] = changed
    print(json.dumps(rep.to_dict(), indent=2))
    return OK if rep.ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="forbidwords", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("canon", help="minimal forbidden words of (WORD)^inf")
    s.add_argument("word")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("forks", help="classified fork table of (WORD)^inf")
    s.add_argument("word")
    s.set_defaults(func=cmd_forks)

    s = sub.add_parser("defines", help="which periodic word a forbidden system pins down")
    s.add_argument("system", help="file, JSON array or comma-separated words")
    s.set_defaults(func=cmd_defines)

    s = sub.add_parser("extremal", help="check the Fibonacci-length extremal family")
    s.add_argument("--max-i", type=int, default=5)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("systems", help="enumerate all systems on 0..N")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_systems)

    s = sub.add_parser("sweep", help="exhaustive check over all periods up to a length")
    s.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("improve", help="randomized monotonicity checks of the rewrites")
    s.add_argument("--trials", type=int, default=1000)
    s.set_defaults(func=cmd_improve)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"forbidwords: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
