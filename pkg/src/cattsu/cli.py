"""Command line interface: ``cattsu <check|normalize|eq|rehydrate> ...``.

Exit status is 0 on success (or equality), 1 on a semantic failure (or
inequality) and 2 on usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .elaborate import DEFAULT_PRELUDE, Environment
from .errors import CattError, FuelExhausted, ParseError, RehydrationError, TypingError
from .pasting import check_pasting
from .pretty import Printer
from .reduction import DEFAULT_FUEL, normalize
from .rehydrate import rehydrated_normal_form
from .syntax import count_coherences
from .typecheck import DEFAULT_MAX_DIM, Checker, Mode

CORPUS_DIR = Path(__file__).with_name("corpus")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def resolve_path(name: str) -> Path:
    """A path on disk, or else a file of the bundled corpus with the same base name."""
    p = Path(name)
    if p.exists():
        return p
    bundled = CORPUS_DIR / p.name
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"no such file: {name}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["su", "catt"], default="su", help="theory: Catt_su (default) or Catt")
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="maximum number of standard reduction steps")
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="reject cells above this dimension")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--trace", action="store_true", help="print every standard reduction step")
    common.add_argument("--lm-only", action="store_true", help="print only locally maximal arguments")
    common.add_argument("--prelude", default=None, help="prelude file (default: $CATTSU_PRELUDE or the bundled one)")

    ap = argparse.ArgumentParser(prog="cattsu", description="Type checker and normalizer for Catt and Catt_su.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="type check files")
    p.add_argument("files", nargs="+")
    p = sub.add_parser("normalize", parents=[common], help="print the normal form of a declaration")
    p.add_argument("file")
    p.add_argument("name")
    p = sub.add_parser("eq", parents=[common], help="decide equality of two declarations")
    p.add_argument("file")
    p.add_argument("name1")
    p.add_argument("name2")
    p = sub.add_parser("rehydrate", parents=[common], help="print the rehydrated normal form and verify it")
    p.add_argument("file")
    p.add_argument("name")
    return ap


def load(args, files: Sequence[str]) -> Environment:
    prelude = args.prelude or os.environ.get("CATTSU_PRELUDE") or DEFAULT_PRELUDE
    env = Environment(args.mode, fuel=args.fuel, max_dim=args.max_dim)
    env.load_file(prelude)
    for f in files:
        env.load_file(resolve_path(f))
    return env


def emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_check(args) -> int:
    env = Environment(args.mode, fuel=args.fuel, max_dim=args.max_dim)
    env.load_file(args.prelude or os.environ.get("CATTSU_PRELUDE") or DEFAULT_PRELUDE)
    report = []
    for f in args.files:
        entries = env.load_file(resolve_path(f))
        report.append({"file": f, "declarations": [e.name for e in entries]})
    lines = [f"{r['file']}: {len(r['declarations'])} declarations checked" for r in report]
    emit(args, {"mode": args.mode, "ok": True, "files": report}, "\n".join(lines))
    return EXIT_OK


def cmd_normalize(args) -> int:
    env = load(args, [args.file])
    entry = env[args.name]
    printer = Printer(env, args.lm_only)
    nf, trace = normalize(entry.term, fuel=args.fuel)
    records = [
        {
            "index": i,
            "rule": st.rule,
            "labels": list(st.labels),
            "locus": st.locus,
            "result": printer.term(st.result, entry.ctx),
        }
        for i, st in enumerate(trace)
    ]
    shown = printer.term(nf, entry.ctx)
    if args.json:
        payload = {
            "name": entry.name,
            "mode": args.mode,
            "normal_form": shown,
            "coherences": count_coherences(nf),
            "input_coherences": count_coherences(entry.term),
            "steps": len(trace),
        }
        if args.trace:
            payload["trace"] = records
        print(json.dumps(payload, indent=2))
    else:
        if args.trace:
            for r in records:
                print(json.dumps(r))
        print(shown)
    return EXIT_OK


def cmd_eq(args) -> int:
    env = load(args, [args.file])
    a, b = env[args.name1], env[args.name2]
    if a.ctx != b.ctx:
        print(f"ContextMismatch: {a.name} and {b.name} are declared over different contexts", file=sys.stderr)
        return EXIT_FAIL
    same = env.checker.equal(a.term, b.term)
    emit(args, {"mode": args.mode, "equal": same, "left": a.name, "right": b.name},
         "equal" if same else "not equal")
    return EXIT_OK if same else EXIT_FAIL


def cmd_rehydrate(args) -> int:
    env = load(args, [args.file])
    entry = env[args.name]
    check_pasting(entry.ctx)
    out = rehydrated_normal_form(entry.term, entry.ctx, fuel=args.fuel, verify=False)
    catt_ok, catt_msg = True, "ok"
    try:
        Checker(Mode.CATT, args.fuel, args.max_dim).check_term(entry.ctx, out)
    except TypingError as e:
        catt_ok, catt_msg = False, str(e)
    su = Checker(Mode.SU, args.fuel, args.max_dim)
    su_ok = su.nf(out) == su.nf(entry.term)
    printer = Printer(env, args.lm_only)
    shown = printer.term(out, entry.ctx)
    payload = {
        "name": entry.name,
        "rehydrated": shown,
        "coherences": count_coherences(out),
        "catt_valid": catt_ok,
        "catt_message": catt_msg,
        "cattsu_equal": su_ok,
    }
    text = "\n".join([
        shown,
        f"catt check: {catt_msg}",
        f"cattsu equality: {'ok' if su_ok else 'FAILED'}",
    ])
    emit(args, payload, text)
    return EXIT_OK if catt_ok and su_ok else EXIT_FAIL


COMMANDS = {"check": cmd_check, "normalize": cmd_normalize, "eq": cmd_eq, "rehydrate": cmd_rehydrate}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except ParseError as e:
        where = getattr(e, "where", "")
        print(f"parse error: {where}:{e}" if where else f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FuelExhausted as e:
        print(f"FuelExhausted: {e}", file=sys.stderr)
        return EXIT_FAIL
    except RehydrationError as e:
        print(f"RehydrationError: {e}", file=sys.stderr)
        return EXIT_FAIL
    except CattError as e:
        where = getattr(e, "where", None)
        kind = getattr(e, "kind", type(e).__name__)
        msg = str(e)
        if not msg.startswith(kind):
            msg = f"{kind}: {msg}"
        print(f"{where}: {msg}" if where else msg, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
