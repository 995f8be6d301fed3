"""Plain-text matrix files.

    uwm n=2 w=2 L=12 vars=0
    z0 z0
    z0 z6

Tokens are ``0``, ``z<k>`` for zeta_L^k and ``z<k>x<e>`` for zeta_L^k x^e.
Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import re

from .cyclotomic import ZERO, UnitEntry
from .errors import FormatError, InvariantError
from .matrix import UnitMatrix

_HEADER = re.compile(r"uwm\s+n=(\d+)\s+w=(\d+)\s+L=(\d+)\s+vars=([01])\s*$")
_TOKEN = re.compile(r"z(\d+)(?:x([+-]?\d+))?$")


def format_entry(e: UnitEntry) -> str:
    if e.root is None:
        return "0"
    return f"z{e.root}" + (f"x{e.var}" if e.var else "")


def serialize_matrix(W: UnitMatrix) -> str:
    lines = [f"uwm n={W.n} w={W.w} L={W.L} vars={W.v}"]
    lines += [" ".join(format_entry(e) for e in r) for r in W.entries]
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, line


def _tokens(line: str):
    for m in re.finditer(r"\S+", line):
        yield m.start() + 1, m.group()


def parse_entry(tok: str, L: int, vars_: int, line: int | None = None, col: int | None = None) -> UnitEntry:
    if tok == "0":
        return ZERO
    m = _TOKEN.match(tok)
    if not m:
        raise FormatError(f"bad entry token {tok!r}", line, col)
    k = int(m.group(1))
    if k >= L:
        raise FormatError(f"root index {k} must be below L={L}", line, col)
    e = int(m.group(2)) if m.group(2) else 0
    if e and not vars_:
        raise FormatError(f"token {tok!r} uses x but the header says vars=0", line, col)
    return UnitEntry(k, e)


def parse_matrix(text: str) -> UnitMatrix:
    """Parse a matrix file. Syntax problems raise FormatError, weight problems InvariantError."""
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty input", 1, 1)
    lineno, header = lines[0]
    m = _HEADER.match(header.strip())
    if not m:
        raise FormatError("expected header 'uwm n=<n> w=<w> L=<L> vars=<0|1>'", lineno, 1)
    n, w, L, vars_ = map(int, m.groups())
    if n < 1 or L < 1:
        raise FormatError("n and L must be positive", lineno, 1)
    body = lines[1:]
    if len(body) != n:
        at = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else lineno + 1)
        raise FormatError(f"expected {n} rows, found {len(body)}", at, 1)
    rows = []
    for lineno, line in body:
        toks = list(_tokens(line))
        if len(toks) != n:
            col = toks[n][0] if len(toks) > n else len(line.rstrip()) + 1
            raise FormatError(f"expected {n} entries, found {len(toks)}", lineno, col)
        rows.append(tuple(parse_entry(t, L, vars_, lineno, c) for c, t in toks))
    W = UnitMatrix.from_rows(rows, L, w)
    if W.v != vars_:
        raise InvariantError(f"header says vars={vars_} but no entry uses x")
    return W


def read_matrix(path) -> UnitMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(W: UnitMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_matrix(W))
