"""Command line interface: ``permc {check,analyze,lambda,verify}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import infinite_word
from .errors import CapExceeded, ConsistencyError, InputError, MalformedSpec

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_NOT_Q = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4
EXIT_INVARIANT = 5


def _morphism(args):
    from .morphism import Morphism, parse_morphism

    if args.phi0 is not None or args.phi1 is not None:
        if args.spec or args.phi0 is None or args.phi1 is None:
            raise MalformedSpec("give either <block0>/<block1> or both --phi0 and --phi1")
        return Morphism(args.phi0, args.phi1)
    if not args.spec:
        raise MalformedSpec("missing morphism")
    return parse_morphism(args.spec)


def _membership(m):
    from .morphism import FormA, FormB, classify_q

    q = classify_q(m)
    if isinstance(q, FormA):
        return q, {"form": "A", "n": q.n, "m": q.m}
    if isinstance(q, FormB):
        return q, {"form": "B", "n": q.n}
    return q, {"form": None, "reason": q.reason}


def _require_q(m) -> bool:
    _, info = _membership(m)
    if info["form"] is None:
        print(f"{m} is not in class Q: {info['reason']}", file=sys.stderr)
        return False
    return True


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise MalformedSpec(f"bad length or range {text!r}") from None


def cmd_check(args, out) -> int:
    from .infinite_word import synchronization_length

    m = _morphism(args)
    q, info = _membership(m)
    sync = synchronization_length(m) if info["form"] else None
    if args.format == "json":
        doc = {"morphism": str(m), "l": m.l, "valid": True, "class_q": info, "sync_length": sync}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["morphism", "l", "form", "n", "m", "sync_length"])
        w.writerow([str(m), m.l, info["form"] or "", info.get("n", ""), info.get("m", ""), sync or ""])
    else:
        out.write(f"morphism: {m} (l={m.l})\n")
        if info["form"] is None:
            out.write(f"class Q: no ({info['reason']})\n")
        else:
            params = ", ".join(f"{k}={v}" for k, v in info.items() if k != "form")
            out.write(f"class Q: Form{info['form']}({params})\n")
            out.write(f"synchronization length: {sync}\n")
    return EXIT_OK if sync else EXIT_NOT_Q


def _tables(args, m):
    from .ancestry import build_seed_tables

    return build_seed_tables(m, args.base_threshold_override)


def cmd_analyze(args, out) -> int:
    m = _morphism(args)
    if not _require_q(m):
        return EXIT_NOT_Q
    t = _tables(args, m)
    if args.format == "json":
        out.write(t.to_json() + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["set", "word", "m", "n", "k", "t", "r"])
        for a, (m_a, n_a) in sorted(t.a1.items()):
            w.writerow(["A1", a, m_a, n_a, "", "", ""])
        for a, m_a in sorted(t.a2.items()):
            w.writerow(["A2", a, m_a, "", "", "", ""])
        for b, s in sorted(t.b.items()):
            w.writerow(["B", b, "", "", s.k, s.t, s.r])
    else:
        out.write(f"morphism: {m}\n")
        out.write(f"synchronization length: {t.sync_length}\n")
        out.write(f"base threshold: {t.base_threshold}\n")
        out.write("A1 (word: m, n):\n")
        for a, (m_a, n_a) in sorted(t.a1.items()):
            out.write(f"  {a}: {m_a}, {n_a}\n")
        out.write("A2 (word: m):\n")
        for a, m_a in sorted(t.a2.items()):
            out.write(f"  {a}: {m_a}\n")
        out.write("B (word: k, t, r):\n")
        for b, s in sorted(t.b.items()):
            out.write(f"  {b}: {s.k}, {s.t}, {s.r}\n")
    return EXIT_OK


def cmd_lambda(args, out) -> int:
    from .engine import Engine
    from .oracle import oracle_lambda

    m = _morphism(args)
    lo, hi = _parse_range(args.n)
    if not 2 <= lo <= hi:
        raise MalformedSpec("need 2 <= n_lo <= n_hi")
    if not _require_q(m):
        return EXIT_NOT_Q
    rows = []
    if args.engine == "oracle":
        rows = [{"n": n, "lambda": oracle_lambda(m, n)} for n in range(lo, hi + 1)]
    else:
        eng = Engine(_tables(args, m))
        for n, value in eng.lambda_range(lo, hi):
            row = {"n": n, "lambda": value}
            if args.engine == "both":
                row["lambda_oracle"] = oracle_lambda(m, n)
                row["match"] = row["lambda_oracle"] == value
            rows.append(row)
    columns = list(rows[0])
    if args.format == "json":
        out.write(json.dumps(rows, sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow(["true" if v is True else "false" if v is False else v for v in row.values()])
    else:
        out.write("  ".join(f"{c:>13}" for c in columns) + "\n")
        for row in rows:
            out.write("  ".join(f"{str(v):>13}" for v in row.values()) + "\n")
    if any(row.get("match") is False for row in rows):
        print("recurrence and oracle disagree", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .checks import run_all

    m = _morphism(args)
    if not _require_q(m):
        return EXIT_NOT_Q
    results = run_all(m, args.window, args.samples)
    if args.format == "json":
        doc = [
            {"name": r.name, "passed": r.passed, "checked": r.checked, "counterexample": r.counterexample}
            for r in results
        ]
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["name", "passed", "checked", "counterexample"])
        for r in results:
            w.writerow([r.name, "true" if r.passed else "false", r.checked, r.counterexample])
    else:
        for r in results:
            out.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permc",
        description="Factor complexity of permutations generated by fixed points of class-Q morphisms.",
    )
    parser.add_argument("--max-prefix", type=int, help="cap on prefix length in symbols")
    parser.add_argument("--lookahead-cap", type=int, help="cap on symbols scanned per suffix comparison")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("spec", nargs="?", help="morphism as <block0>/<block1>, e.g. 01/10")
        p.add_argument("--phi0", help="image of 0")
        p.add_argument("--phi1", help="image of 1")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--base-threshold-override", type=int, default=None)
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "validate a morphism and test membership in class Q")
    add("analyze", cmd_analyze, "print the seed tables")
    p = add("lambda", cmd_lambda, "compute lambda(n) for one n or a range lo..hi")
    p.add_argument("--n", required=True, help="length n or inclusive range lo..hi")
    p.add_argument("--engine", choices=("recurrence", "oracle", "both"), default="recurrence")
    p = add("verify", cmd_verify, "run the invariant suite")
    p.add_argument("--window", type=int, default=None, help="longest factor length checked")
    p.add_argument("--samples", type=int, default=10_000, help="position pairs per order check")
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    out = sys.stdout if out is None else out
    saved_env, saved_lookahead = os.environ.get("PERMC_MAX_PREFIX"), infinite_word.LOOKAHEAD_CAP
    if args.max_prefix:
        os.environ["PERMC_MAX_PREFIX"] = str(args.max_prefix)
    if args.lookahead_cap:
        infinite_word.LOOKAHEAD_CAP = args.lookahead_cap
    buffer = io.StringIO()
    try:
        code = args.func(args, buffer)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except CapExceeded as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConsistencyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    finally:
        if saved_env is None:
            os.environ.pop("PERMC_MAX_PREFIX", None)
        else:
            os.environ["PERMC_MAX_PREFIX"] = saved_env
        infinite_word.LOOKAHEAD_CAP = saved_lookahead
    out.write(buffer.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
