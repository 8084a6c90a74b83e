"""Plain-text Cayley tables.

The first line holds ``n``; each of the next ``n`` lines holds ``n``
space-separated ids, row ``i`` column ``j`` being the product ``i * j``.
Parsing is strict and reports the line and column of the first problem.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import TableParseError
from .group import Group


def format_table(G: Group) -> str:
    lines = [str(G.n)]
    lines.extend(" ".join(map(str, row)) for row in G.rows)
    return "\n".join(lines) + "\n"


def parse_table(text: str, name: str | None = None) -> Group:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TableParseError("empty input", 1)
    head = lines[0]
    if not head.isdigit() or int(head) < 1:
        raise TableParseError(f"expected a positive order, got {head!r}", 1, 1)
    n = int(head)
    if len(lines) != n + 1:
        raise TableParseError(f"expected {n} rows, found {len(lines) - 1}", min(len(lines), n + 1) + 1)
    rows = np.empty((n, n), dtype=np.int64)
    for i, line in enumerate(lines[1:]):
        lineno = i + 2
        tokens = line.split(" ")
        if len(tokens) != n:
            raise TableParseError(f"expected {n} entries, found {len(tokens)}", lineno)
        for j, tok in enumerate(tokens):
            if not tok.isdigit():
                raise TableParseError(f"not a nonnegative integer: {tok!r}", lineno, j + 1)
            v = int(tok)
            if v >= n:
                raise TableParseError(f"entry {v} out of range 0..{n - 1}", lineno, j + 1)
            rows[i, j] = v
    return Group(rows, name=name)


def read_table(path: str | Path) -> Group:
    p = Path(path)
    return parse_table(p.read_text(), name=p.stem)


def write_table(G: Group, path: str | Path) -> None:
    Path(path).write_text(format_table(G))
