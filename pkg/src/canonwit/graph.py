"""Immutable simple graphs on dense integer vertices.

Adjacency is stored as one Python ``int`` bitmask per vertex, so
``has_edge`` is a shift-and-mask and neighbourhood intersections are
single ``&`` operations. Every search in the package leans on this.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import MalformedInputError, ResourceLimitError

__all__ = [
    "DEFAULT_MAX_VERTICES",
    "Graph",
    "from_edge_list",
    "induced_subgraph",
    "contract",
    "is_chordless_path",
    "chordless_path_diagnostic",
    "bits",
    "mask_of",
]

DEFAULT_MAX_VERTICES = 4096


def bits(mask: int):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """A simple undirected graph with vertices ``0..n-1``.

    Instances are immutable; build them with :func:`from_edge_list` or the
    helpers in :mod:`canonwit.generators`.
    """

    __slots__ = ("_n", "_edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), *,
                 max_vertices: int = DEFAULT_MAX_VERTICES):
        if n < 0:
            raise MalformedInputError(f"negative vertex count {n}")
        if n > max_vertices:
            raise ResourceLimitError(
                f"graph has {n} vertices, ceiling is {max_vertices}")
        adj = [0] * n
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedInputError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise MalformedInputError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            norm.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._edges = tuple(sorted(norm))
        self._adj = tuple(adj)

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def adj(self) -> tuple[int, ...]:
        """Per-vertex neighbourhood bitmasks."""
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and 0 <= v < self._n and bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return bin(self._adj[v]).count("1")

    def degrees(self) -> list[int]:
        return [bin(a).count("1") for a in self._adj]

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={list(self._edges)})"


def from_edge_list(n: int, pairs: Iterable[Sequence[int]], *,
                   max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """Build a graph from vertex count and endpoint pairs.

    Duplicate pairs (in either orientation) collapse; loops and
    out-of-range endpoints raise :class:`MalformedInputError`.
    """
    return Graph(n, ((int(u), int(v)) for u, v in pairs), max_vertices=max_vertices)


def _check_vertices(g: Graph, vertices: Iterable[int]) -> list[int]:
    out = []
    for v in vertices:
        if not 0 <= v < g.n:
            raise MalformedInputError(f"vertex {v} outside 0..{g.n - 1}")
        out.append(v)
    return out


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Restrict ``g`` to ``s``.

    Returns the subgraph and ``old_ids`` where ``old_ids[i]`` is the host
    vertex relabelled to ``i``. Relabelling preserves identifier order.
    """
    old_ids = tuple(sorted(set(_check_vertices(g, s))))
    index = {v: i for i, v in enumerate(old_ids)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(old_ids), edges), old_ids


def contract(g: Graph, u: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Contract the vertex set ``u`` into one new vertex.

    Remaining vertices keep their relative order; the new vertex takes the
    largest identifier. Returns the graph and a map from every old vertex to
    its new identifier (all members of ``u`` map to the new vertex).
    """
    members = set(_check_vertices(g, u))
    if not members:
        raise MalformedInputError("cannot contract an empty vertex set")
    keep = [v for v in range(g.n) if v not in members]
    new_id = {v: i for i, v in enumerate(keep)}
    merged = len(keep)
    for v in members:
        new_id[v] = merged
    edges = set()
    for a, b in g.edges:
        x, y = new_id[a], new_id[b]
        if x != y:
            edges.add((x, y))
    return Graph(merged + 1, edges), new_id


def chordless_path_diagnostic(g: Graph, p: Sequence[int]) -> str | None:
    """Return ``None`` if ``p`` is a chordless path in ``g``, else the reason."""
    if not p:
        return "empty sequence"
    seen = set()
    for v in p:
        if not 0 <= v < g.n:
            return f"vertex {v} out of range"
        if v in seen:
            return f"vertex {v} repeated"
        seen.add(v)
    for i in range(len(p) - 1):
        if not g.has_edge(p[i], p[i + 1]):
            return f"missing edge ({p[i]},{p[i + 1]})"
    for i in range(len(p)):
        for j in range(i + 2, len(p)):
            if g.has_edge(p[i], p[j]):
                return f"chord ({p[i]},{p[j]})"
    return None


def is_chordless_path(g: Graph, p: Sequence[int]) -> bool:
    return chordless_path_diagnostic(g, p) is None
