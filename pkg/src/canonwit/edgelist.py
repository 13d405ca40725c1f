"""Plain-text edge lists.

Format: ``#`` lines and blank lines are ignored; the first remaining line
is ``n m``; exactly ``m`` lines ``u v`` follow with 0-based endpoints.
"""

from __future__ import annotations

from pathlib import Path

from .errors import MalformedInputError
from .graph import DEFAULT_MAX_VERTICES, Graph


def _ints(text: str, lineno: int, count: int) -> list[int]:
    parts = text.split()
    if len(parts) != count:
        raise MalformedInputError(f"expected {count} integers, got {text.strip()!r}", lineno)
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise MalformedInputError(f"non-integer token in {text.strip()!r}", lineno) from None
    if any(v < 0 for v in values):
        raise MalformedInputError(f"negative value in {text.strip()!r}", lineno)
    return values


def parse_edge_list(text: str, *, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    header = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = _ints(line, lineno, 2)
            continue
        u, v = _ints(line, lineno, 2)
        n = header[0]
        if u >= n or v >= n:
            raise MalformedInputError(f"endpoint out of range 0..{n - 1} in edge ({u},{v})", lineno)
        if u == v:
            raise MalformedInputError(f"loop at vertex {u}", lineno)
        pairs.append((u, v))
    if header is None:
        raise MalformedInputError("missing 'n m' header line")
    n, m = header
    if len(pairs) != m:
        raise MalformedInputError(f"header declares {m} edges, found {len(pairs)}")
    return Graph(n, pairs, max_vertices=max_vertices)


def read_edge_list(path: str | Path, **kwargs) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"), **kwargs)


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
