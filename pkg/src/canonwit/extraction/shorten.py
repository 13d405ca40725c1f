"""Wing-to-wing shortcuts through the body of an H-graph subgraph.

Given an H-graph found as a subgraph with a chordless body, either some
left wing reaches some right wing through a short stretch of the body, or
the shortest such stretch is long and closes into an induced hole or
H-graph of large order.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from ..canonical import HOLE, CanonicalDescriptor, CanonicalWitness, hgraph_witness
from ..errors import MalformedInputError
from ..graph import Graph, chordless_path_diagnostic
from .witness import Canonical, require_valid


@dataclass(frozen=True)
class HGraphEmbedding:
    """An H-graph as a subgraph: body path plus two wings at each end."""

    body: tuple[int, ...]
    left: tuple[int, int]
    right: tuple[int, int]


@dataclass(frozen=True)
class ShortPath:
    """Wing-to-wing path whose interior lies in the body.

    ``len(vertices) - 1`` edges, between 2 and ``s + 1``.
    """

    vertices: tuple[int, ...]
    stage_log: tuple[str, ...] = field(default=(), compare=False)


def check_hgraph_embedding(g: Graph, h: HGraphEmbedding) -> None:
    body = tuple(h.body)
    if len(body) < 1:
        raise MalformedInputError("H-graph body is empty")
    bad = chordless_path_diagnostic(g, body)
    if bad:
        raise MalformedInputError(f"H-graph body is not chordless: {bad}")
    if len(h.left) != 2 or len(h.right) != 2:
        raise MalformedInputError("an H-graph needs two wings at each end")
    verts = body + tuple(h.left) + tuple(h.right)
    for v in verts:
        if not 0 <= v < g.n:
            raise MalformedInputError(f"vertex {v} out of range")
    if len(set(verts)) != len(verts):
        raise MalformedInputError("H-graph vertices are not distinct")
    for w in h.left:
        if not g.has_edge(w, body[0]):
            raise MalformedInputError(f"left wing {w} not adjacent to {body[0]}")
    for w in h.right:
        if not g.has_edge(w, body[-1]):
            raise MalformedInputError(f"right wing {w} not adjacent to {body[-1]}")


def _windows(g: Graph, body: Sequence[int], wl: int, wr: int):
    """``(i, j)`` with ``wl`` seeing only ``body[i]`` and ``wr`` only
    ``body[j]`` on ``body[i..j]``."""
    nl = [i for i, u in enumerate(body) if g.has_edge(wl, u)]
    nr = [j for j, u in enumerate(body) if g.has_edge(wr, u)]
    for i in nl:
        j = next((j for j in nr if j >= i), None)
        if j is None:
            continue
        if any(i < x <= j for x in nl):
            continue
        yield i, j


def shorten_hgraph(g: Graph, h: HGraphEmbedding, s: int) -> ShortPath | Canonical:
    """Short wing-to-wing path, or an induced canonical graph of order >= ``s``.

    The shortest body stretch ``u_i..u_j`` over all wing pairs decides:
    with ``j - i < s`` the path ``w', u_i, ..., u_j, w''`` is returned;
    otherwise the stretch plus its two flanking vertices induce a hole
    (when some cross adjacency closes a cycle) or an H-graph of order
    ``j - i + 1``.
    """
    if s < 2:
        raise MalformedInputError(f"s must be at least 2, got {s}")
    check_hgraph_embedding(g, h)
    body = tuple(h.body)
    best = None
    for a, wl in enumerate(h.left):
        for b, wr in enumerate(h.right):
            for i, j in _windows(g, body, wl, wr):
                key = (j - i, a, b, i)
                if best is None or key < best[0]:
                    best = (key, wl, wr, i, j, h.left[1 - a], h.right[1 - b])
    _, wl, wr, i, j, other_l, other_r = best
    stretch = body[i:j + 1]
    if j - i < s:
        return ShortPath((wl,) + stretch + (wr,))
    prev = body[i - 1] if i > 0 else other_l
    nxt = body[j + 1] if j + 1 < len(body) else other_r
    cycle = None
    if g.has_edge(wl, wr):
        cycle = (wl,) + stretch + (wr,)
    elif g.has_edge(wl, nxt):
        cycle = (wl,) + stretch + (nxt,)
    elif g.has_edge(wr, prev):
        cycle = (prev,) + stretch + (wr,)
    elif g.has_edge(prev, nxt):
        cycle = (prev,) + stretch + (nxt,)
    if cycle is not None:
        wit = CanonicalWitness(CanonicalDescriptor(HOLE, len(cycle)), cycle)
        return require_valid(g, Canonical(wit))
    wit = hgraph_witness(g, stretch, (wl, prev), (wr, nxt))
    if wit is None:
        raise AssertionError("shortest stretch failed to induce an H-graph")
    return require_valid(g, Canonical(wit))
