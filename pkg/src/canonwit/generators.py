"""Standard graph families used by tests, the CLI ``gen`` command and the
pipeline."""

from __future__ import annotations

from .errors import MalformedInputError
from .graph import Graph


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise MalformedInputError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """``K_{a,b}`` with sides ``0..a-1`` and ``a..a+b-1``."""
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def grid_vertex(i: int, j: int, cols: int) -> int:
    return i * cols + j


def grid_graph(rows: int, cols: int | None = None) -> Graph:
    """Grid with vertex ``(i, j)`` numbered ``i * cols + j``."""
    if cols is None:
        cols = rows
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def rake_layout(k: int, density: int = 1) -> tuple[list[int], list[tuple[int, int]]]:
    """Vertex layout of the standard ``density``-dense ``k``-rake.

    The base has one tooth-free vertex at each end and ``density - 1``
    tooth-free vertices between consecutive roots. Base vertices are
    numbered first, then teeth in root order. Returns ``(base, teeth)``
    with ``teeth`` as ``(tooth, root_index)`` pairs.
    """
    if k < 1 or density < 1:
        raise MalformedInputError("rake needs k >= 1 teeth and density >= 1")
    root_idx = [1 + i * density for i in range(k)]
    length = root_idx[-1] + 2
    base = list(range(length))
    teeth = [(length + i, r) for i, r in enumerate(root_idx)]
    return base, teeth


def rake_graph(k: int, density: int = 1) -> Graph:
    """The bare rake tree from :func:`rake_layout`.

    ``rake_graph(9, 1)`` is the 20-vertex 1-dense 9-rake.
    """
    base, teeth = rake_layout(k, density)
    edges = [(base[i], base[i + 1]) for i in range(len(base) - 1)]
    edges += [(t, base[r]) for t, r in teeth]
    return Graph(len(base) + len(teeth), edges)
