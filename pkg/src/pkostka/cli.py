"""Command-line front end.

Exit codes: 0 success, 1 input error or failed verification, 2 unresolved
(oracle budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .cache import ResultCache, resolve_dir, write_json_atomic
from .characters import block_split, permutation_character
from .engine import Engine
from .indecomposable import has_nonprincipal_summand, indecomposable_partitions, is_indecomposable
from .partitions import format_partition, parse_partition

EXIT_OK, EXIT_INPUT, EXIT_UNRESOLVED = 0, 1, 2


class InputError(Exception):
    pass


class Unresolved(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise InputError(f"--p: {text!r} is not an integer") from None
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise InputError(f"--p: {text!r} is not prime")
    return p


def _positive(flag: str, text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise InputError(f"{flag}: {text!r} is not an integer") from None
    if v < 1:
        raise InputError(f"{flag}: {text!r} must be positive")
    return v


def _partition(flag: str, text: str, compose: bool):
    try:
        return parse_partition(text, compose=compose)
    except ValueError as exc:
        raise InputError(f"{flag}: {exc}") from None


def _budget(args):
    from .oracle import OracleBudget
    if args.budget is None:
        return OracleBudget()
    return OracleBudget(max_tabloids=_positive("--budget", args.budget))


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# ---------------------------------------------------------------- commands

def cmd_pkostka(args, cache):
    p = _prime(args.p)
    lam = _partition("--lambda", args.lam, args.compose)
    mu = _partition("--mu", args.mu, args.compose)
    if lam.degree != mu.degree:
        raise InputError(f"degree mismatch: --lambda {args.lam!r} has degree {lam.degree}, "
                         f"--mu {args.mu!r} has degree {mu.degree}")
    budget = _budget(args)

    def compute():
        res = Engine(budget=budget).pkostka(lam, mu, p)
        return {"multiplicity": res.value, "kind": res.kind, "trace": res.rules}

    key = (list(lam), list(mu), budget.max_tabloids, budget.max_end_dim)
    out = compute() if cache is None else cache.get_or_compute("pkostka", p, key, compute, args.seed)
    if args.format == "json":
        text = _dumps(out)
    else:
        value = "unresolved" if out["multiplicity"] is None else out["multiplicity"]
        text = (f"[M^({format_partition(lam)}) : Y^({format_partition(mu)})] = {value} "
                f"at p={p} ({out['kind']}; {' -> '.join(out['trace'])})")
    if out["kind"] == "unresolved":
        return text, EXIT_UNRESOLVED
    return text, EXIT_OK


def cmd_indec(args, cache):
    p = _prime(args.p)
    if (args.degree is None) == (args.lam is None):
        raise InputError("indec: give exactly one of --degree and --lambda")
    if args.degree is not None:
        r = _positive("--degree", args.degree)
        parts = indecomposable_partitions(r, p)
        if args.format == "json":
            return _dumps({"p": p, "degree": r, "partitions": [list(x) for x in parts]}), EXIT_OK
        return "\n".join(f"({format_partition(x)})" for x in parts), EXIT_OK
    lam = _partition("--lambda", args.lam, args.compose)
    verdict = is_indecomposable(lam, p)
    out = {"lambda": list(lam), "p": p, **verdict.to_json(),
           "nonprincipal": has_nonprincipal_summand(lam, p)}
    if args.format == "json":
        return _dumps(out), EXIT_OK
    word = "indecomposable" if verdict.indecomposable else "decomposable"
    line = f"M^({format_partition(lam)}) at p={p}: {word} [{verdict.rule}]"
    if verdict.witness is not None:
        line += f"; Y^({format_partition(verdict.witness)}) is a summand"
    if out["nonprincipal"]:
        line += "; has summands outside the principal block"
    return line, EXIT_OK


def cmd_character(args, cache):
    lam = _partition("--lambda", args.lam, args.compose)
    chi = permutation_character(lam)
    out = {"lambda": list(lam), "character": chi.to_json()}
    groups = None
    if args.blocks is not None:
        p = _prime(args.blocks)
        groups = sorted(block_split(chi, p).items(), key=lambda kv: (-kv[0].weight, tuple(kv[0].core)))
        out["p"] = p
        out["blocks"] = [{"core": list(b.core), "weight": b.weight, "character": v.to_json()} for b, v in groups]
    if args.format == "json":
        return _dumps(out), EXIT_OK

    def show(v):
        return " + ".join(f"{m}*chi({format_partition(mu)})" if m > 1 else f"chi({format_partition(mu)})"
                          for mu, m in v.items())

    lines = [f"xi({format_partition(lam)}) = {show(chi)}"]
    for b, v in groups or ():
        lines.append(f"  core ({format_partition(b.core)}), weight {b.weight}: {show(v)}")
    return "\n".join(lines), EXIT_OK


def _oracle_call(fn):
    from .oracle import BudgetExceeded
    try:
        return fn()
    except BudgetExceeded as exc:
        raise Unresolved(str(exc)) from None


def cmd_oracle(args, cache):
    from . import oracle
    p = _prime(args.p)
    budget = _budget(args)
    if args.action == "decompose":
        lam = _partition("--lambda", args.lam, args.compose)

        def compute():
            rec = oracle.oracle_record(lam, p, budget=budget, seed=args.seed)
            return oracle.table_to_json(lam.degree, p, [rec])
        kind, key = "decompose", [list(lam)]
    else:
        r = _positive("--degree", args.degree)

        def compute():
            return oracle.table_to_json(r, p, oracle.table_records(r, p, budget=budget, seed=args.seed))
        kind, key = "table", [r]
    key = key + [budget.max_tabloids, budget.max_end_dim]
    if cache is None:
        out = _oracle_call(compute)
    else:
        out = _oracle_call(lambda: cache.get_or_compute(kind, p, key, compute, args.seed))
    if args.out:
        try:
            write_json_atomic(args.out, out)
        except OSError as exc:
            raise InputError(f"--out: cannot write {args.out!r} ({exc.strerror})") from None
    if args.format == "json":
        return _dumps(out), EXIT_OK
    lines = []
    for row in out["rows"]:
        parts = ", ".join(f"Y^({format_partition(s['mu'])}) dim {s['dim']}" + (f" x{s['mult']}" if s["mult"] > 1 else "")
                          for s in row["summands"])
        lines.append(f"M^({format_partition(row['lambda'])}) = {parts}")
    return "\n".join(lines), EXIT_OK


def cmd_verify(args, cache):
    from .verify import run_suite
    try:
        checks = run_suite(args.suite)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    code = EXIT_OK if all(c.ok for c in checks) else EXIT_INPUT
    if args.format == "json":
        return _dumps([c.to_json() for c in checks]), code
    return "\n".join(c.line() for c in checks), code


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--compose", action="store_true", help="sort partition input instead of rejecting it")
    common.add_argument("--cache-dir", default=None, help="result cache directory (overrides $PKOSTKA_CACHE_DIR)")
    common.add_argument("--seed", type=int, default=0, help="seed for the oracle's randomized splitting")
    common.add_argument("--budget", default=None, help="oracle cap on the number of tabloids")

    parser = argparse.ArgumentParser(prog="pkostka",
                                     description="p-Kostka numbers and Young permutation modules")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pkostka", parents=[common], help="multiplicity [M^lambda : Y^mu]")
    s.add_argument("--p", required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--mu", required=True)
    s.set_defaults(func=cmd_pkostka)

    s = sub.add_parser("indec", parents=[common], help="indecomposability of M^lambda")
    s.add_argument("--p", required=True)
    s.add_argument("--degree", default=None)
    s.add_argument("--lambda", dest="lam", default=None)
    s.set_defaults(func=cmd_indec)

    s = sub.add_parser("character", parents=[common], help="ordinary character of M^lambda")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--blocks", default=None, metavar="P", help="group constituents by p-core")
    s.set_defaults(func=cmd_character)

    s = sub.add_parser("oracle", help="brute-force decompositions over F_p")
    osub = s.add_subparsers(dest="action", required=True)
    d = osub.add_parser("decompose", parents=[common])
    d.add_argument("--p", required=True)
    d.add_argument("--lambda", dest="lam", required=True)
    d.add_argument("--out", default=None, help="also write the JSON record to this file")
    d.set_defaults(func=cmd_oracle)
    t = osub.add_parser("table", parents=[common])
    t.add_argument("--p", required=True)
    t.add_argument("--degree", required=True)
    t.add_argument("--out", default=None, help="also write the JSON table to this file")
    t.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("suite")
    s.set_defaults(func=cmd_verify)
    return parser


def run(argv=None):
    """Returns (output text, exit code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return "", int(exc.code or 0) and EXIT_INPUT
    directory = resolve_dir(args.cache_dir)
    cache = ResultCache(directory) if directory else None
    try:
        return args.func(args, cache)
    except InputError as exc:
        return f"error: {exc}", EXIT_INPUT
    except Unresolved as exc:
        if args.format == "json":
            return _dumps({"kind": "unresolved", "reason": str(exc)}), EXIT_UNRESOLVED
        return f"unresolved: {exc}", EXIT_UNRESOLVED


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    text, code = run(argv)
    if text:
        stream = sys.stderr if code == EXIT_INPUT and text.startswith("error:") else sys.stdout
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
