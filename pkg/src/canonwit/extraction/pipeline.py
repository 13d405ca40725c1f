"""Staged witness search.

Stages run in a fixed order and the first verified witness wins:

``direct``
    oracle search for an induced hole or H-graph of order >= s;
``dense-rake``
    grid minor model -> rake -> dense rake -> canonical graph or biclique;
``path``
    a long path of the graph fed to :func:`induced_path_or_biclique`.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import replace

from ..canonical import DEFAULT_MIN_H_ORDER, find_canonical
from ..errors import InsufficientInputError, MalformedInputError, ResourceLimitError
from ..generators import grid_graph
from ..graph import Graph, bits
from ..oracles import LIMITS, Embedding, find_minor_model, longest_path
from .paths import induced_path_or_biclique
from .rakes import canonical_from_dense_rake, densify_rake, rake_from_grid_model
from .witness import Canonical, Inconclusive, RakeEmbedding, Witness, verify_witness

STAGES = ("direct", "dense-rake", "path")
# smallest grid whose rake keeps three teeth once the end teeth are dropped
DEFAULT_GRID_K = 5


def _greedy_path(g: Graph) -> list[int]:
    """Long path by repeated greedy extension from every start (best effort)."""
    best: list[int] = []
    for start in range(g.n):
        path = [start]
        used = 1 << start
        while True:
            free = g.adj[path[-1]] & ~used
            if not free:
                break
            # fewest onward options first, ties to the least vertex
            nxt = min(bits(free), key=lambda v: (bin(g.adj[v] & ~used).count("1"), v))
            path.append(nxt)
            used |= 1 << nxt
        if len(path) > len(best):
            best = path
    return best


def _stage_direct(g: Graph, s: int, min_h_order: int, log: list[str]) -> Witness | None:
    wit = find_canonical(g, s, min_h_order=min_h_order)
    if wit is None:
        log.append(f"direct: no induced canonical graph of order >= {s}")
        return None
    log.append(f"direct: found {wit.descriptor}")
    return Canonical(wit)


def _stage_rake(g: Graph, s: int, q: int, grid_k: int, grid_model: Embedding | None,
                rake: RakeEmbedding | None, structure: str, min_h_order: int,
                log: list[str]) -> Witness | None:
    if rake is None:
        model = grid_model
        if model is None:
            model = find_minor_model(g, grid_graph(grid_k), ceiling=grid_k * grid_k)
            if model is None:
                log.append(f"dense-rake: no {grid_k}x{grid_k} grid minor")
                return None
            log.append(f"dense-rake: found a {grid_k}x{grid_k} grid minor")
        rake = rake_from_grid_model(g, model, grid_k, structure=structure)
        log.append(f"dense-rake: {len(rake.teeth)}-rake on a {len(rake.base)}-vertex base")
    sub: list[str] = []
    res = densify_rake(g, rake, s, log=sub)
    log += [f"densify: {line}" for line in sub]
    if isinstance(res, Canonical):
        return res
    dense = res.embedding
    log.append(f"dense-rake: {len(dense.teeth)}-rake, {dense.density}-dense")
    sub = []
    out = canonical_from_dense_rake(g, dense, s, q, min_h_order=min_h_order, log=sub)
    log += [f"dense: {line}" for line in sub]
    return out


def _stage_path(g: Graph, s: int, q: int, log: list[str]) -> Witness | None:
    if g.n <= LIMITS.longest_path_vertices:
        path = longest_path(g)
    else:
        path = _greedy_path(g)
        log.append("path: graph above the longest-path ceiling, using a greedy path")
    if not path:
        log.append("path: empty graph")
        return None
    res = induced_path_or_biclique(g, path, s, 2 * q)
    if isinstance(res, Inconclusive):
        log.append(f"path: {res.reason}")
        return None
    log.append(f"path: {len(path)}-vertex path gave {type(res).__name__}")
    return res


def witness_pipeline(g: Graph, s: int, q: int, *, stages: Sequence[str] = STAGES,
                     grid_k: int = DEFAULT_GRID_K, grid_model: Embedding | None = None,
                     rake: RakeEmbedding | None = None, rake_structure: str = "rows",
                     min_h_order: int = DEFAULT_MIN_H_ORDER) -> Witness:
    """First verified witness over the requested stages, else Inconclusive.

    ``grid_model`` (a ``grid_k x grid_k`` minor model) or ``rake`` skip the
    grid minor search of the ``dense-rake`` stage. Resource limits and
    too-small structures are recorded in the stage log; malformed
    arguments raise :class:`MalformedInputError`.
    """
    if s < 1 or q < 1:
        raise MalformedInputError("s and q must be positive")
    unknown = [st for st in stages if st not in STAGES]
    if unknown:
        raise MalformedInputError(f"unknown stage {unknown[0]!r}")
    log: list[str] = []
    for stage in STAGES:
        if stage not in stages:
            continue
        try:
            if stage == "direct":
                res = _stage_direct(g, s, min_h_order, log)
            elif stage == "dense-rake":
                res = _stage_rake(g, s, q, grid_k, grid_model, rake, rake_structure, min_h_order, log)
            else:
                res = _stage_path(g, s, q, log)
        except (ResourceLimitError, InsufficientInputError) as exc:
            log.append(f"{stage}: {exc}")
            continue
        if res is None:
            continue
        ok, bad = verify_witness(g, res)
        if not ok:
            log.append(f"{stage}: discarded unverified witness ({bad})")
            continue
        return replace(res, stage_log=tuple(log))
    return Inconclusive("no stage produced a witness", tuple(log))

