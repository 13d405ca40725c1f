"""Holes and H-graphs: constructors, recognition, direct search and the
pairwise incomparability check.

Labelling of :func:`make_canonical`:

* hole of order ``k``: the cycle ``0-1-...-(k-1)-0``;
* H-graph of order ``k``: body ``0..k-1``, wings ``k, k+1`` on body vertex
  ``0`` and wings ``k+2, k+3`` on body vertex ``k-1``. A semi-tight graph
  joins the right pair ``(k+2, k+3)``; a tight one joins both pairs.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import MalformedInputError
from .graph import Graph, bits, mask_of
from .oracles import find_hole, find_induced_embedding

__all__ = [
    "HOLE",
    "HGRAPH",
    "TIGHTNESS",
    "DEFAULT_MIN_H_ORDER",
    "CanonicalDescriptor",
    "CanonicalWitness",
    "make_canonical",
    "recognize_canonical",
    "enumerate_canonical",
    "verify_antichain",
    "smallest_safe_min_order",
    "hgraph_witness",
    "find_canonical",
]

HOLE = "hole"
HGRAPH = "h"
TIGHTNESS = ("plain", "semi", "tight")
DEFAULT_MIN_H_ORDER = 4
ANTICHAIN_PATTERN_CEILING = 16

_PRIMES = {"plain": "", "semi": "'", "tight": "''"}
_DESC_RE = re.compile(r"^(C|H)('{0,2})(\d+)$")


@dataclass(frozen=True)
class CanonicalDescriptor:
    kind: str
    order: int
    tightness: str | None = None

    def __post_init__(self):
        if self.kind == HOLE:
            if self.tightness is not None:
                raise MalformedInputError("holes carry no tightness")
        elif self.kind == HGRAPH:
            if self.tightness not in TIGHTNESS:
                raise MalformedInputError(f"unknown tightness {self.tightness!r}")
        else:
            raise MalformedInputError(f"unknown canonical kind {self.kind!r}")

    @property
    def n_vertices(self) -> int:
        return self.order if self.kind == HOLE else self.order + 4

    def sort_key(self) -> tuple:
        if self.kind == HOLE:
            return (0, 0, self.order)
        return (1, TIGHTNESS.index(self.tightness), self.order)

    def __str__(self) -> str:
        if self.kind == HOLE:
            return f"C{self.order}"
        return f"H{_PRIMES[self.tightness]}{self.order}"

    @classmethod
    def parse(cls, text: str) -> CanonicalDescriptor:
        """Parse ``C7``, ``H5``, ``H'5`` or ``H''9``."""
        m = _DESC_RE.match(text.strip())
        if not m:
            raise MalformedInputError(f"bad canonical descriptor {text!r}")
        letter, primes, order = m.group(1), m.group(2), int(m.group(3))
        if letter == "C":
            if primes:
                raise MalformedInputError(f"bad canonical descriptor {text!r}")
            return cls(HOLE, order)
        return cls(HGRAPH, order, TIGHTNESS[len(primes)])


@dataclass(frozen=True)
class CanonicalWitness:
    """A canonical graph found as an induced subgraph.

    ``mapping[i]`` is the host vertex playing vertex ``i`` of
    ``make_canonical(descriptor)``.
    """

    descriptor: CanonicalDescriptor
    mapping: tuple[int, ...]


def _check_order(d: CanonicalDescriptor, min_h_order: int) -> None:
    if min_h_order < 2:
        raise MalformedInputError("H-graph minimum order cannot go below 2")
    if d.kind == HOLE and d.order < 4:
        raise MalformedInputError(f"hole order {d.order} is below 4")
    if d.kind == HGRAPH and d.order < min_h_order:
        raise MalformedInputError(f"H-graph order {d.order} is below the minimum {min_h_order}")


def make_canonical(d: CanonicalDescriptor, *, min_h_order: int = DEFAULT_MIN_H_ORDER) -> Graph:
    _check_order(d, min_h_order)
    k = d.order
    if d.kind == HOLE:
        return Graph(k, [(i, (i + 1) % k) for i in range(k)])
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [(k, 0), (k + 1, 0), (k + 2, k - 1), (k + 3, k - 1)]
    if d.tightness in ("semi", "tight"):
        edges.append((k + 2, k + 3))
    if d.tightness == "tight":
        edges.append((k, k + 1))
    return Graph(k + 4, edges)


def _bfs_path(g: Graph, a: int, b: int) -> list[int] | None:
    prev = {a: None}
    queue = [a]
    for x in queue:
        if x == b:
            break
        for y in g.neighbors(x):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if b not in prev:
        return None
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def recognize_canonical(g: Graph, *, min_h_order: int = DEFAULT_MIN_H_ORDER) -> CanonicalDescriptor | None:
    """Descriptor of ``g`` if it is isomorphic to a canonical graph, else ``None``."""
    n = g.n
    deg = g.degrees()
    if n >= 4 and g.m == n and all(d == 2 for d in deg):
        return CanonicalDescriptor(HOLE, n) if _connected(g) else None
    if n < 6:
        return None
    big = [v for v in range(n) if deg[v] == 3]
    if len(big) != 2 or any(d > 3 or d == 0 for d in deg):
        return None
    body = _bfs_path(g, big[0], big[1])
    if body is None or len(body) != n - 4:
        return None
    wit = _hgraph_from_parts(g, body)
    if wit is None or wit.descriptor.order < min_h_order:
        return None
    return wit.descriptor


def _connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    queue = [0]
    for x in queue:
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == g.n


def _hgraph_from_parts(g: Graph, body: Sequence[int]) -> CanonicalWitness | None:
    """Whole-graph H-graph check given the body; used by the recognizer."""
    body_set = set(body)
    left = [w for w in g.neighbors(body[0]) if w not in body_set]
    right = [w for w in g.neighbors(body[-1]) if w not in body_set]
    if len(left) != 2 or len(right) != 2:
        return None
    wit = hgraph_witness(g, body, left, right)
    if wit is None:
        return None
    if g.m != make_canonical(wit.descriptor, min_h_order=2).m:
        return None
    return wit


def hgraph_witness(g: Graph, body: Sequence[int], left: Sequence[int],
                   right: Sequence[int]) -> CanonicalWitness | None:
    """Orient an H-graph found in ``g`` into :func:`make_canonical` labelling.

    Returns ``None`` unless ``body + left + right`` induces an H-graph with
    that body and those wing pairs in ``g``.
    """
    body = list(body)
    k = len(body)
    if k < 2 or len(left) != 2 or len(right) != 2:
        return None
    verts = body + list(left) + list(right)
    if len(set(verts)) != len(verts):
        return None
    l_adj = g.has_edge(left[0], left[1])
    r_adj = g.has_edge(right[0], right[1])
    if l_adj and not r_adj:
        body = body[::-1]
        left, right = right, left
        l_adj, r_adj = r_adj, l_adj
    tight = TIGHTNESS[int(l_adj) + int(r_adj)]
    d = CanonicalDescriptor(HGRAPH, k, tight)
    mapping = tuple(body) + tuple(sorted(left)) + tuple(sorted(right))
    pattern = make_canonical(d, min_h_order=2)
    for i in range(pattern.n):
        for j in range(i + 1, pattern.n):
            if pattern.has_edge(i, j) != g.has_edge(mapping[i], mapping[j]):
                return None
    return CanonicalWitness(d, mapping)


def enumerate_canonical(max_order: int, *, min_h_order: int = DEFAULT_MIN_H_ORDER) -> list[CanonicalDescriptor]:
    """All descriptors with order up to ``max_order``, sorted by (kind, tightness, order)."""
    out = [CanonicalDescriptor(HOLE, k) for k in range(4, max_order + 1)]
    for t in TIGHTNESS:
        out += [CanonicalDescriptor(HGRAPH, k, t) for k in range(min_h_order, max_order + 1)]
    return out


def verify_antichain(descriptors: Iterable[CanonicalDescriptor], *,
                     ceiling: int = ANTICHAIN_PATTERN_CEILING) -> list[tuple[CanonicalDescriptor, CanonicalDescriptor]]:
    """Return every ordered pair ``(A, B)`` with ``A`` an induced subgraph of ``B``.

    An empty list means the descriptors form an antichain.
    """
    ds = sorted(set(descriptors), key=CanonicalDescriptor.sort_key)
    graphs = {d: make_canonical(d, min_h_order=2) for d in ds}
    bad = []
    for a in ds:
        for b in ds:
            if a != b and find_induced_embedding(graphs[b], graphs[a], ceiling=ceiling) is not None:
                bad.append((a, b))
    return bad


def smallest_safe_min_order(max_order: int, *, ceiling: int = ANTICHAIN_PATTERN_CEILING) -> int | None:
    """Smallest H-graph minimum order for which the family up to
    ``max_order`` is a machine-verified antichain."""
    for m in range(2, max_order + 1):
        if not verify_antichain(enumerate_canonical(max_order, min_h_order=m), ceiling=ceiling):
            return m
    return None


def find_canonical(g: Graph, min_order: int, *, min_h_order: int = DEFAULT_MIN_H_ORDER) -> CanonicalWitness | None:
    """Direct search for an induced canonical graph of order >= ``min_order``.

    Holes are tried first (least hole of the required length), then H-graphs
    in depth-first order over bodies.
    """
    hole = find_hole(g, max(4, min_order))
    if hole is not None:
        return CanonicalWitness(CanonicalDescriptor(HOLE, len(hole)), tuple(hole))
    return _find_hgraph(g, max(min_order, min_h_order, 2))


def _find_hgraph(g: Graph, min_body: int) -> CanonicalWitness | None:
    adj = g.adj
    deg = g.degrees()
    path: list[int] = []

    def try_close() -> CanonicalWitness | None:
        body_mask = mask_of(path)
        near_head = 0
        for v in path[1:]:
            near_head |= adj[v] | (1 << v)
        near_tail = 0
        for v in path[:-1]:
            near_tail |= adj[v] | (1 << v)
        left = adj[path[0]] & ~near_head & ~body_mask
        right = adj[path[-1]] & ~near_tail & ~body_mask
        for lp in combinations(bits(left), 2):
            lmask = mask_of(lp)
            for rp in list(combinations(bits(right), 2)):
                if any(adj[w] & lmask for w in rp):
                    continue
                return hgraph_witness(g, path, lp, rp)
        return None

    def dfs(blocked: int, left: int) -> CanonicalWitness | None:
        end = path[-1]
        if len(path) >= min_body and deg[end] >= 3:
            found = try_close()
            if found is not None:
                return found
        nb = blocked | adj[end] | (1 << end)
        for v in bits(adj[end] & ~blocked):
            new_left = left & ~adj[v] & ~(1 << v)
            if _popcount(new_left) < 2:
                continue
            path.append(v)
            found = dfs(nb | 1 << v, new_left)
            path.pop()
            if found is not None:
                return found
        return None

    for s in range(g.n):
        if deg[s] < 3:
            continue
        path[:] = [s]
        found = dfs(1 << s, adj[s])
        if found is not None:
            return found
    return None


def _popcount(x: int) -> int:
    return bin(x).count("1")
