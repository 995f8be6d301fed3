"""Command-line front end: ``uwm <command> ...``.

Exit codes: 0 success or true, 1 checked and false, 2 usage or input error,
3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import blocks as B
from .compose import (
    Existence,
    PartMultiset,
    compose_from_parts,
    decomposition_table,
    exists_uw,
    exists_w_real,
)
from .cyclotomic import X, UnitEntry
from .errors import BudgetExceeded, UWMError
from .fileformat import format_entry, parse_matrix, serialize_matrix
from .matrix import UnitMatrix, gram_check, is_standard_form, standardize_with_ops
from .refute import SYMBOLS, format_certificate, uw75_refute, verify_certificate
from .search import DEFAULT_BUDGET, SearchConfig, dfs_search

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ALPHABET_CAVEAT = (
    "note: the search only uses entries 0 and zeta_L^k, so an empty or single result "
    "is proven for this alphabet only; for weight <= 4 and the order-7 weight-5 case the "
    "short orthogonality relations force 12th roots up to equivalence, apart from free "
    "parameters such as x in E_2m(x)"
)


class UsageError(Exception):
    pass


def _matrix_json(W: UnitMatrix) -> dict:
    return {
        "n": W.n,
        "w": W.w,
        "L": W.L,
        "vars": W.v,
        "rows": [[format_entry(e) for e in r] for r in W.entries],
    }


def _emit(args, payload: dict, text: str | None) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif text is not None:
        print(text)


def _write_matrix(args, W: UnitMatrix, payload: dict) -> None:
    text = serialize_matrix(W)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(args, payload, f"wrote {args.output}")
    else:
        _emit(args, payload, text.rstrip("\n"))


def _read(path: str) -> UnitMatrix:
    if path == "-":
        return parse_matrix(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_matrix(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _parse_x(text: str | None) -> UnitEntry | None:
    if text is None:
        return None
    if text in ("var", "x"):
        return X
    try:
        return UnitEntry(int(text) % B.L12)
    except ValueError:
        raise UsageError(f"--x expects a root index k (for zeta_12^k) or 'var', got {text!r}") from None


def _budget(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("UWM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"UWM_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args) -> int:
    W = _read(args.file)
    ok = gram_check(W)
    std = None if W.v else is_standard_form(W)
    payload = {"command": "verify", "n": W.n, "w": W.w, "L": W.L, "vars": W.v,
               "gram_check": ok, "standard_form": std}
    lines = [f"UW({W.n},{W.w}) over L={W.L}: gram check {'passed' if ok else 'FAILED'}"]
    if std is not None:
        lines.append(f"standard form: {'yes' if std else 'no'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FALSE


def cmd_standardize(args) -> int:
    W = _read(args.file)
    if W.v:
        raise UsageError("standardize needs a matrix without the formal variable x")
    if not gram_check(W):
        _emit(args, {"command": "standardize", "gram_check": False}, "input fails the gram check")
        return EXIT_FALSE
    S, ops = standardize_with_ops(W)
    payload = {"command": "standardize", "gram_check": True, "matrix": _matrix_json(S),
               "ops": [list(op[:1]) + [list(a) if isinstance(a, tuple) else a for a in op[1:]] for op in ops]}
    _write_matrix(args, S, payload)
    return EXIT_OK


def cmd_block(args) -> int:
    x = _parse_x(args.x)
    try:
        bid = B.BlockId(args.label, args.m, x)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    W = B.build_block(bid)
    payload = {"command": "block", "label": args.label, "m": args.m, "x": args.x,
               "gram_check": gram_check(W), "matrix": _matrix_json(W)}
    _write_matrix(args, W, payload)
    return EXIT_OK


def cmd_compose(args) -> int:
    x = _parse_x(args.x)
    try:
        p = PartMultiset.parse(args.parts, args.weight, args.real)
        W = compose_from_parts(p, x)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"command": "compose", "weight": args.weight, "parts": list(p.parts),
               "n": W.n, "gram_check": gram_check(W), "matrix": _matrix_json(W)}
    _write_matrix(args, W, payload)
    return EXIT_OK


def cmd_count(args) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be positive")
    try:
        table = decomposition_table(args.max_n, args.weight, args.real)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [(n, table[n]) for n in range(1, args.max_n + 1)]
    payload = {"command": "count", "weight": args.weight, "real": args.real,
               "counts": [[n, c] for n, c in rows]}
    _emit(args, payload, "\n".join(f"{n} {c}" for n, c in rows))
    return EXIT_OK


def cmd_exists(args) -> int:
    if args.n < 1 or args.w < 1:
        raise UsageError("n and w must be positive")
    status = exists_w_real(args.n, args.w) if args.real else exists_uw(args.n, args.w)
    payload = {"command": "exists", "n": args.n, "w": args.w, "real": args.real, "status": status.value}
    _emit(args, payload, status.value)
    return EXIT_FALSE if status is Existence.NOT_EXISTS else EXIT_OK


def cmd_search(args) -> int:
    try:
        cfg = SearchConfig(args.n, args.w, args.L, budget=_budget(args.budget), parallel=args.parallel)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = dfs_search(cfg)
    payload = {"command": "search", "n": cfg.n, "w": cfg.w, "L": cfg.L, "nodes": res.nodes,
               "raw_solutions": res.raw_solutions, "classes": len(res.matrices),
               "matrices": [_matrix_json(W) for W in res.matrices], "caveat": ALPHABET_CAVEAT}
    lines = [ALPHABET_CAVEAT,
             f"UW({cfg.n},{cfg.w}) over L={cfg.L}: {len(res.matrices)} class(es), "
             f"{res.raw_solutions} raw solution(s), {res.nodes} nodes"]
    for i, W in enumerate(res.matrices, 1):
        lines.append(f"# class {i}")
        lines.append(serialize_matrix(W).rstrip("\n"))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_refute75(args) -> int:
    cert = uw75_refute()
    ok = verify_certificate(cert)
    payload = {
        "command": "refute-75",
        "verdict": cert.verdict,
        "verified": ok,
        "template": [list(r) for r in cert.template],
        "assignments_checked": len(cert.violations),
        "violations": [
            {"assignment": {s: v.assignment[s] for s in SYMBOLS},
             "rows": [v.rows[0] + 1, v.rows[1] + 1],
             "value": list(v.value.reduced())}
            for v in cert.violations
        ],
    }
    _emit(args, payload, format_certificate(cert) + f"\ncertificate re-check: {'ok' if ok else 'FAILED'}")
    return EXIT_OK if ok and cert.verdict == "UNSAT" else EXIT_FALSE


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p = argparse.ArgumentParser(prog="uwm", description="Unit weighing matrices of small weight.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check W W* = w I for a matrix file")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("standardize", parents=[common], help="bring a matrix file to standard form")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_standardize)

    s = sub.add_parser("block", parents=[common], help="emit a named block")
    s.add_argument("label", choices=B.LABELS)
    s.add_argument("--m", type=int, help="half order for E2m")
    s.add_argument("--x", help="root index k for x = zeta_12^k, or 'var' for the formal x")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_block)

    s = sub.add_parser("compose", parents=[common], help="direct sum of weight-3 or weight-4 parts")
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--parts", required=True, help='e.g. "5*,4"')
    s.add_argument("--x", help="x for every 2m part: root index k or 'var'")
    s.add_argument("--real", action="store_true", help="only allow real parts")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("count", parents=[common], help="number of decompositions for n = 1..max-n")
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--real", action="store_true")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("exists", parents=[common], help="known existence of UW(n, w) or W(n, w)")
    s.add_argument("n", type=int)
    s.add_argument("w", type=int)
    s.add_argument("--real", action="store_true", help="real weighing matrices W(n, w)")
    s.set_defaults(func=cmd_exists)

    s = sub.add_parser("search", parents=[common], help="exhaustive classification over zeta_L")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--L", type=int, default=12)
    s.add_argument("--budget", type=int, help="node budget (default: UWM_BUDGET or 10^9)")
    s.add_argument("--parallel", action="store_true")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("refute-75", parents=[common], help="print the UW(7,5) refutation certificate")
    s.set_defaults(func=cmd_refute75)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"uwm: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, UWMError) as exc:
        print(f"uwm: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
