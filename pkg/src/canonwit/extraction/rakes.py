"""Rakes: building one from a grid minor, making it dense, and mining a
dense rake for a canonical graph or a biclique.

Every function validates its input rake and its output before returning.
"""

from __future__ import annotations

from collections.abc import Sequence
from itertools import combinations

from ..bounds import dense_b
from ..canonical import DEFAULT_MIN_H_ORDER, HOLE, CanonicalDescriptor, CanonicalWitness, hgraph_witness
from ..errors import InsufficientInputError, MalformedInputError, ResourceLimitError
from ..generators import grid_graph
from ..graph import Graph, bits, is_chordless_path, mask_of
from ..oracles import LIMITS, Embedding, find_clique, maximum_independent_set, validate_embedding
from .paths import biclique_from_families, induced_path_or_biclique
from .shorten import HGraphEmbedding, shorten_hgraph
from .witness import Biclique, Canonical, InducedPath, Rake, RakeEmbedding, check_rake, require_valid

BASE_SEARCH_BUDGET = 2000


def _connected(g: Graph, vs: Sequence[int]) -> bool:
    allowed = mask_of(vs)
    if not vs:
        return False
    seen = 1 << vs[0]
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen == allowed


def _shortest_path(g: Graph, a: int, b: int, allowed: int) -> list[int]:
    """Least shortest path from ``a`` to ``b`` inside the bitmask ``allowed``."""
    prev = {a: None}
    queue = [a]
    for x in queue:
        if x == b:
            break
        for y in bits(g.adj[x] & allowed):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def rake_from_column_structure(g: Graph, columns: Sequence[Sequence[int]],
                               tooth_sets: Sequence[Sequence[int]]) -> RakeEmbedding:
    """k-rake from disjoint connected sets ``V_1..V_k`` and ``V'_1..V'_k``.

    Needs an edge between consecutive ``V_i`` and between each ``V_i`` and
    ``V'_i``. The base runs through every ``V_i`` along the least
    connecting edges ``x_i y_{i+1}``; tooth ``t_i`` comes from ``V'_i``
    when the base uses all of ``V_i`` and from the rest of ``V_i``
    otherwise.
    """
    k = len(columns)
    if k < 1 or len(tooth_sets) != k:
        raise MalformedInputError("need k >= 1 columns and one tooth set per column")
    cols = [sorted(c) for c in columns]
    extra = [sorted(c) for c in tooth_sets]
    seen: set[int] = set()
    for name, sets in (("V", cols), ("V'", extra)):
        for i, c in enumerate(sets):
            if not c:
                raise MalformedInputError(f"{name}_{i} is empty")
            for v in c:
                if not 0 <= v < g.n:
                    raise MalformedInputError(f"{name}_{i}: vertex {v} out of range")
                if v in seen:
                    raise MalformedInputError(f"{name}_{i}: vertex {v} used twice")
                seen.add(v)
            if not _connected(g, c):
                raise MalformedInputError(f"{name}_{i} does not induce a connected subgraph")
    links = []
    for i in range(k - 1):
        edge = next(((x, y) for x in cols[i] for y in cols[i + 1] if g.has_edge(x, y)), None)
        if edge is None:
            raise MalformedInputError(f"no edge between V_{i} and V_{i + 1}")
        links.append(edge)
    base: list[int] = []
    teeth: list[tuple[int, int]] = []
    for i in range(k):
        if k == 1:
            piece = [cols[0][0]]
        elif i == 0:
            piece = [links[0][0]]
        elif i == k - 1:
            piece = [links[-1][1]]
        else:
            piece = _shortest_path(g, links[i - 1][1], links[i][0], mask_of(cols[i]))
        offset = len(base)
        base += piece
        on_piece = set(piece)
        if on_piece == set(cols[i]):
            pair = next(((t, r) for t in extra[i] for r in piece if g.has_edge(t, r)), None)
            if pair is None:
                raise MalformedInputError(f"no edge between V_{i} and V'_{i}")
        else:
            pair = next((t, r) for t in cols[i] if t not in on_piece for r in piece if g.has_edge(t, r))
        tooth, root = pair
        teeth.append((tooth, offset + piece.index(root)))
    rake = RakeEmbedding(tuple(base), tuple(teeth))
    bad = check_rake(g, rake)
    if bad:
        raise AssertionError(f"column construction produced an invalid rake: {bad}")
    return rake


def rake_from_grid_model(g: Graph, model: Embedding, k: int, *, structure: str = "columns") -> RakeEmbedding:
    """k-rake from a ``k x k`` grid minor model (grid vertex ``(i, j)`` is ``i*k + j``).

    ``structure="columns"``: ``V_j`` is column ``j`` without its last row
    and ``V'_j`` the last-row branch set, so contracting each set turns
    the grid into a rake. ``structure="rows"``: ``V_j`` is row 0 and
    ``V'_j`` row 1 of column ``j``.
    """
    if k < 2:
        raise MalformedInputError("grid model needs k >= 2")
    grid = grid_graph(k)
    if model.mode != "minor" or model.branch_sets is None:
        raise MalformedInputError("grid model must be a minor embedding with branch sets")
    bad = validate_embedding(g, grid, model)
    if bad:
        raise MalformedInputError(f"invalid grid minor model: {bad}")
    sets = model.branch_sets
    if structure == "columns":
        columns = [[v for i in range(k - 1) for v in sets[i * k + j]] for j in range(k)]
        tooth_sets = [list(sets[(k - 1) * k + j]) for j in range(k)]
    elif structure == "rows":
        columns = [list(sets[j]) for j in range(k)]
        tooth_sets = [list(sets[k + j]) for j in range(k)]
    else:
        raise MalformedInputError(f"unknown rake structure {structure!r}")
    return rake_from_column_structure(g, columns, tooth_sets)


def identity_grid_model(k: int) -> Embedding:
    """The model of the ``k x k`` grid inside itself."""
    return Embedding(tuple(range(k * k)), "minor", tuple((v,) for v in range(k * k)))


def _checked_rake(g: Graph, r: RakeEmbedding) -> None:
    bad = check_rake(g, r)
    if bad:
        raise MalformedInputError(f"invalid rake: {bad}")


def _glue(cur: list[int], pr: list[int], u_prev: int, u: int, u_next: int, v: int,
          log: list[str]) -> tuple[list[int], int, int]:
    """Join the left short path ``cur`` and the right one ``pr`` at root ``u``.

    Returns the joined path and the new ``(root, tooth)``.
    """
    # normalise the right path's start, then the left path's end
    if pr[0] == u_prev and pr[1] == u:
        pr[0] = v
        log.append(f"root {u}: right path restarted at tooth {v}")
    elif pr[0] == u_prev and pr[1] == u_next:
        pr[0:1] = [v, u]
        log.append(f"root {u}: right path restarted at tooth {v} via {u}")
    elif pr[0] == v and pr[1] == u_next:
        pr[0:1] = [v, u]
        log.append(f"root {u}: inserted {u} after tooth {v} on the right")
    if cur[-1] == u_next and cur[-2] == u:
        cur[-1] = v
        log.append(f"root {u}: left path now ends at tooth {v}")
    elif cur[-1] == u_next and cur[-2] == u_prev:
        cur[-1:] = [u, v]
        log.append(f"root {u}: left path now ends at tooth {v} via {u}")
    elif cur[-1] == v and cur[-2] == u_prev:
        cur[-1:] = [u, v]
        log.append(f"root {u}: inserted {u} before tooth {v} on the left")
    l_has = cur[-2] == u
    r_has = pr[1] == u
    if l_has and r_has:
        log.append(f"root {u}: both paths pass through it")
        return cur[:-1] + pr[2:], u, v
    if l_has:
        if pr[0] == u_prev:
            if len(cur) >= 3 and cur[-3] == u_prev:
                log.append(f"root {u}: glued at {u_prev}, tooth {u}")
                return cur[:-2] + pr[1:], u_prev, u
            log.append(f"root {u}: left end swapped to {u_prev}")
            return cur[:-1] + [u_prev] + pr[1:], u, v
        log.append(f"root {u}: glued at tooth {v}, new tooth {u_next}")
        return cur + pr[1:], u, u_next
    if r_has:
        if cur[-1] == u_next:
            if len(pr) >= 3 and pr[2] == u_next:
                log.append(f"root {u}: glued at {u_next}, tooth {u}")
                return cur + pr[3:], u_next, u
            log.append(f"root {u}: right start swapped to {u_next}")
            return cur + pr[1:], u, v
        log.append(f"root {u}: glued at tooth {v}, new tooth {u_prev}")
        return cur[:-1] + pr, u, u_prev
    if cur[-1] == v and pr[0] == v:
        log.append(f"root {u}: glued at tooth {v}, which becomes the root")
        return cur + pr[1:], v, u
    if cur[-1] == v:
        log.append(f"root {u}: joined through {u}, tooth {u_next}")
        return cur + [u] + pr, u, u_next
    if pr[0] == v:
        log.append(f"root {u}: joined through {u}, tooth {u_prev}")
        return cur + [u] + pr, u, u_prev
    log.append(f"root {u}: joined through {u}, tooth {v}")
    return cur + [u] + pr, u, v


def densify_rake(g: Graph, r: RakeEmbedding, s: int, *, log: list[str] | None = None) -> Rake | Canonical:
    """``(s+5)``-dense rake, or an induced canonical graph of order >= ``s``.

    Teeth rooted at the base ends are dropped, the base is trimmed to one
    vertex beyond the outer roots, and every stretch between consecutive
    roots is replaced by a shortest path. Each pair of consecutive roots
    then spans an H-graph whose wings are the two teeth and the flanking
    base vertices; :func:`shorten_hgraph` either returns a canonical graph
    (returned at once) or a short wing-to-wing path. The short paths are
    glued at every inner root, giving a rake with two teeth fewer than the
    number of usable roots.
    """
    if s < 2:
        raise MalformedInputError(f"s must be at least 2, got {s}")
    _checked_rake(g, r)
    log = [] if log is None else log
    base = r.base
    teeth = [(t, i) for t, i in r.sorted_teeth() if 0 < i < len(base) - 1]
    if len(teeth) < 3:
        raise InsufficientInputError(
            f"densify needs 3 teeth away from the base ends, found {len(teeth)}")
    lo, hi = teeth[0][1] - 1, teeth[-1][1] + 1
    new_base = [base[lo], base[lo + 1]]
    positions = [1]
    for (_, a), (_, b) in zip(teeth, teeth[1:]):
        seg = base[a:b + 1]
        cut = _shortest_path(g, seg[0], seg[-1], mask_of(seg))
        if len(cut) < len(seg):
            log.append(f"cut {len(seg) - len(cut)} vertices between roots {seg[0]} and {seg[-1]}")
        new_base += cut[1:]
        positions.append(len(new_base) - 1)
    new_base.append(base[hi])
    tooth_of = [t for t, _ in teeth]
    short_paths = []
    for j in range(len(teeth) - 1):
        a, b = positions[j], positions[j + 1]
        h = HGraphEmbedding(tuple(new_base[a:b + 1]), (tooth_of[j], new_base[a - 1]),
                            (tooth_of[j + 1], new_base[b + 1]))
        res = shorten_hgraph(g, h, s)
        if isinstance(res, Canonical):
            log.append(f"H-graph between roots {new_base[a]} and {new_base[b]} gave {res.descriptor}")
            return Canonical(res.witness, tuple(log))
        short_paths.append(list(res.vertices))
    cur = short_paths[0]
    new_teeth = []
    for j in range(1, len(teeth) - 1):
        p = positions[j]
        cur, root, tooth = _glue(cur, list(short_paths[j]), new_base[p - 1], new_base[p],
                                 new_base[p + 1], tooth_of[j], log)
        new_teeth.append((root, tooth))
    final, kept = _repair(cur, new_teeth, log)
    rake = RakeEmbedding(final, kept, s + 5)
    bad = check_rake(g, rake)
    if bad:
        if check_rake(g, RakeEmbedding(final, kept)) is None:
            raise InsufficientInputError(f"glued rake is not {s + 5}-dense after collision repair: {bad}")
        raise AssertionError(f"gluing produced an invalid rake: {bad}")
    return Rake(rake, tuple(log))


def _repair(walk: list[int], teeth: list[tuple[int, int]],
            log: list[str]) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    """Make the glued walk a path and drop teeth that collide.

    Gluing is local to each root; when roots sit next to each other two
    glue points can reuse a vertex. A repeated vertex is short-cut (the
    loop between its visits is removed), and a tooth is dropped if it
    lies on the base, was already used, or its root left the base or
    already carries a tooth.
    """
    path: list[int] = []
    where: dict[int, int] = {}
    for v in walk:
        if v in where:
            cut = path[where[v] + 1:]
            log.append(f"repair: vertex {v} visited twice, removed loop through {cut}")
            for x in cut:
                del where[x]
            del path[where[v] + 1:]
            continue
        where[v] = len(path)
        path.append(v)
    on_base = set(path)
    used_teeth: set[int] = set()
    used_roots: set[int] = set()
    kept = []
    for root, tooth in teeth:
        if root not in on_base or tooth in on_base or tooth in used_teeth or root in used_roots:
            log.append(f"repair: dropped tooth {tooth} at root {root}")
            continue
        used_teeth.add(tooth)
        used_roots.add(root)
        kept.append((tooth, where[root]))
    return tuple(path), tuple(kept)


def _induced_base(g: Graph, base: tuple[int, ...], s: int, q: int,
                  log: list[str]) -> tuple[int, ...] | Biclique:
    """An induced path inside the base, or ``K_{q,q}`` found on the way."""
    if is_chordless_path(g, base):
        return base
    target = len(base)
    while target >= 3:
        res = induced_path_or_biclique(g, base, target, 2 * q, budget=BASE_SEARCH_BUDGET)
        if isinstance(res, Biclique):
            log.append(f"base search found K_{q},{q}")
            return res
        if isinstance(res, InducedPath):
            log.append(f"base has an induced path on {len(res.vertices)} vertices")
            return res.vertices
        target = min(target - 1, target * 4 // 5)
    return base[:1]


def _rake_teeth(g: Graph, r: RakeEmbedding, path: tuple[int, ...]) -> list[tuple[int, int]]:
    """Teeth for the induced path ``path``: original teeth rooted on it, then
    the vertex following each maximal run of base vertices on it."""
    on_path = {v: i for i, v in enumerate(path)}
    used_teeth: set[int] = set()
    used_roots: set[int] = set()
    out = []
    for tooth, idx in r.sorted_teeth():
        root = r.base[idx]
        if root in on_path and tooth not in on_path and tooth not in used_teeth:
            out.append((tooth, on_path[root]))
            used_teeth.add(tooth)
            used_roots.add(root)
    base = r.base
    for i in range(len(base) - 1):
        w, nxt = base[i], base[i + 1]
        if w in on_path and nxt not in on_path and w not in used_roots and nxt not in used_teeth:
            out.append((nxt, on_path[w]))
            used_teeth.add(nxt)
            used_roots.add(w)
    return sorted(out, key=lambda tr: tr[1])


def canonical_from_dense_rake(g: Graph, r: RakeEmbedding, s: int, q: int, *,
                              min_h_order: int = DEFAULT_MIN_H_ORDER,
                              log: list[str] | None = None) -> Canonical | Biclique:
    """Induced canonical graph of order >= ``s`` or a ``K_{q,q}`` subgraph.

    Steps: make the base induced, gather teeth, look for a ``2q``-clique
    among them, keep an independent set of teeth, then look in turn for a
    biclique between teeth and base, a tooth closing a long hole over the
    base, and two teeth spanning an H-graph. Raises
    :class:`InsufficientInputError` if no step applies.
    """
    if s < 1 or q < 1:
        raise MalformedInputError("s and q must be positive")
    _checked_rake(g, r)
    if r.density is None:
        raise MalformedInputError("canonical_from_dense_rake needs a rake with a density")
    log = [] if log is None else log
    found = _induced_base(g, r.base, s, q, log)
    if isinstance(found, Biclique):
        return Biclique(found.side_a, found.side_b, tuple(log))
    path = found
    teeth = _rake_teeth(g, r, path)
    if not teeth:
        raise InsufficientInputError("no tooth hangs off the induced base")
    tooth_mask = mask_of(t for t, _ in teeth)
    clique = find_clique(g, 2 * q, within=tooth_mask)
    if clique is not None:
        log.append(f"teeth contain a {2 * q}-clique")
        return require_valid(g, Biclique(clique[:q], clique[q:], tuple(log)))
    indep = set(maximum_independent_set(g, within=tooth_mask))
    chosen = [(t, i) for t, i in teeth if t in indep]
    log.append(f"{len(chosen)} independent teeth of {len(teeth)}")
    b = dense_b(s, q)
    if len(chosen) >= b:
        log.append(f"at least b = {b} independent teeth")
    wit = _teeth_base_biclique(g, [t for t, _ in chosen], path, q)
    if wit is not None:
        log.append(f"teeth and base share K_{q},{q}")
        return require_valid(g, Biclique(wit[0], wit[1], tuple(log)))
    hole = _tooth_hole(g, chosen, path, max(4, s))
    if hole is not None:
        log.append(f"tooth {hole[0]} closes a hole over the base")
        wit = CanonicalWitness(CanonicalDescriptor(HOLE, len(hole)), tuple(hole))
        return require_valid(g, Canonical(wit, tuple(log)))
    h = _teeth_hgraph(g, chosen, path, max(s, min_h_order))
    if h is not None:
        log.append(f"two teeth span {h.descriptor}")
        return require_valid(g, Canonical(h, tuple(log)))
    raise InsufficientInputError(
        f"rake too small: no hole of length >= {max(4, s)} and no two teeth "
        f"{max(s, min_h_order)} apart on an induced base of {len(path)} vertices")


def _teeth_base_biclique(g: Graph, teeth: list[int], path: tuple[int, ...], q: int):
    if len(teeth) < q or len(path) < q:
        return None
    base_mask = mask_of(path)
    count = 0
    for side in combinations(teeth, q):
        count += 1
        if count > LIMITS.combinations:
            raise ResourceLimitError("teeth-base biclique search exceeded its budget")
        common = base_mask
        for t in side:
            common &= g.adj[t]
        other = list(bits(common))[:q]
        if len(other) == q:
            fam = biclique_from_families(g, [(t,) for t in side], [(v,) for v in other], q)
            if fam is not None:
                return fam
    return None


def _tooth_hole(g: Graph, teeth: list[tuple[int, int]], path: tuple[int, ...], need: int):
    for t, _ in teeth:
        nb = [i for i, v in enumerate(path) if g.has_edge(t, v)]
        for a, b in zip(nb, nb[1:]):
            if b - a >= 2 and b - a + 2 >= need:
                return [t] + list(path[a:b + 1])
    return None


def _teeth_hgraph(g: Graph, teeth: list[tuple[int, int]], path: tuple[int, ...], need: int):
    nbs = {t: [i for i, v in enumerate(path) if g.has_edge(t, v)] for t, _ in teeth}
    for x, (ta, _) in enumerate(teeth):
        i = max(nbs[ta])
        if i < 1:
            continue
        for tb, _ in reversed(teeth[x + 1:]):
            j = min(nbs[tb])
            if j <= i or j + 1 >= len(path) or j - i + 1 < need:
                continue
            wit = hgraph_witness(g, path[i:j + 1], (ta, path[i - 1]), (tb, path[j + 1]))
            if wit is not None:
                return wit
    return None
