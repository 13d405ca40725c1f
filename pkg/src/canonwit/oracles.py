"""Exhaustive searches on small graphs.

Every search walks vertices in ascending order and stops at the first hit,
so the witness it returns is the lexicographically least one. Hitting a
configured ceiling raises :class:`~canonwit.errors.ResourceLimitError`;
"absent" is only ever returned after the search space was exhausted.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import MalformedInputError, ResourceLimitError
from .graph import Graph, bits

__all__ = [
    "Limits",
    "LIMITS",
    "Embedding",
    "validate_embedding",
    "find_induced_embedding",
    "find_subgraph_embedding",
    "find_minor_model",
    "longest_path",
    "longest_induced_path",
    "find_biclique",
    "find_clique",
    "maximum_clique",
    "maximum_independent_set",
    "treewidth_exact",
    "find_hole",
]


@dataclass
class Limits:
    """Default resource ceilings. Mutate :data:`LIMITS` or pass overrides."""

    pattern_vertices: int = 12
    longest_path_vertices: int = 20
    induced_path_vertices: int = 24
    treewidth_vertices: int = 16
    hole_vertices: int = 40
    minor_pattern_vertices: int = 16
    minor_states: int = 20000
    combinations: int = 2_000_000


LIMITS = Limits()


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Embedding:
    """Pattern-to-host map.

    ``mapping[i]`` is the host image of pattern vertex ``i`` (induced and
    subgraph modes). In minor mode ``branch_sets[i]`` is the sorted branch
    set of pattern vertex ``i`` and ``mapping`` holds its least vertex.
    """

    mapping: tuple[int, ...]
    mode: str = "induced"
    branch_sets: tuple[tuple[int, ...], ...] | None = None


def validate_embedding(host: Graph, pattern: Graph, emb: Embedding) -> str | None:
    """Independent re-check of an embedding. Returns a diagnostic or ``None``."""
    if emb.mode == "minor":
        sets = emb.branch_sets
        if sets is None or len(sets) != pattern.n:
            return "branch set count does not match pattern"
        owner: dict[int, int] = {}
        for i, bs in enumerate(sets):
            if not bs:
                return f"branch set {i} is empty"
            for v in bs:
                if not 0 <= v < host.n:
                    return f"vertex {v} out of range"
                if v in owner:
                    return f"vertex {v} in branch sets {owner[v]} and {i}"
                owner[v] = i
            # connectivity by plain BFS over has_edge
            members = set(bs)
            seen = {bs[0]}
            queue = [bs[0]]
            while queue:
                x = queue.pop()
                for y in members:
                    if y not in seen and host.has_edge(x, y):
                        seen.add(y)
                        queue.append(y)
            if seen != members:
                return f"branch set {i} is not connected"
        for a, b in pattern.edges:
            if not any(host.has_edge(x, y) for x in sets[a] for y in sets[b]):
                return f"no host edge between branch sets {a} and {b}"
        return None
    m = emb.mapping
    if len(m) != pattern.n:
        return "mapping length does not match pattern"
    if len(set(m)) != len(m):
        return "mapping is not injective"
    for v in m:
        if not 0 <= v < host.n:
            return f"vertex {v} out of range"
    for i in range(pattern.n):
        for j in range(i + 1, pattern.n):
            pe = pattern.has_edge(i, j)
            he = host.has_edge(m[i], m[j])
            if pe and not he:
                return f"pattern edge ({i},{j}) maps to non-edge ({m[i]},{m[j]})"
            if emb.mode == "induced" and he and not pe:
                return f"pattern non-edge ({i},{j}) maps to edge ({m[i]},{m[j]})"
    return None


def _embed(host: Graph, pattern: Graph, induced: bool, ceiling: int | None) -> tuple[int, ...] | None:
    ceiling = LIMITS.pattern_vertices if ceiling is None else ceiling
    k = pattern.n
    if k > ceiling:
        raise ResourceLimitError(f"pattern has {k} vertices, ceiling is {ceiling}")
    if k == 0:
        return ()
    if k > host.n or pattern.m > host.m:
        return None
    hdeg = host.degrees()
    pdeg = pattern.degrees()
    deg_ok = []
    for i in range(k):
        mask = 0
        for v in range(host.n):
            if hdeg[v] >= pdeg[i]:
                mask |= 1 << v
        deg_ok.append(mask)
    earlier_nb = [[j for j in range(i) if pattern.has_edge(i, j)] for i in range(k)]
    earlier_non = [[j for j in range(i) if not pattern.has_edge(i, j)] for i in range(k)]
    hadj = host.adj
    image = [0] * k

    def extend(i: int, used: int) -> bool:
        cand = deg_ok[i] & ~used
        for j in earlier_nb[i]:
            cand &= hadj[image[j]]
        if induced:
            for j in earlier_non[i]:
                cand &= ~hadj[image[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            image[i] = low.bit_length() - 1
            if i + 1 == k or extend(i + 1, used | low):
                return True
        return False

    return tuple(image) if extend(0, 0) else None


def find_induced_embedding(host: Graph, pattern: Graph, *, ceiling: int | None = None) -> Embedding | None:
    """Lexicographically least induced embedding of ``pattern`` in ``host``."""
    m = _embed(host, pattern, True, ceiling)
    return None if m is None else Embedding(m, "induced")


def find_subgraph_embedding(host: Graph, pattern: Graph, *, ceiling: int | None = None) -> Embedding | None:
    m = _embed(host, pattern, False, ceiling)
    return None if m is None else Embedding(m, "subgraph")


def _quotient(host: Graph, blocks: Sequence[tuple[int, ...]]) -> Graph:
    owner = {}
    for i, b in enumerate(blocks):
        for v in b:
            owner[v] = i
    edges = set()
    for u, v in host.edges:
        a, b = owner[u], owner[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph(len(blocks), edges)


def find_minor_model(host: Graph, pattern: Graph, *, ceiling: int | None = None,
                     max_states: int | None = None) -> Embedding | None:
    """Search for ``pattern`` as a minor of ``host``.

    Walks connected partitions of the host reachable by edge contractions,
    depth first, and at each partition looks for ``pattern`` as a subgraph
    of the quotient. This is complete: any minor model extends to a
    connected partition whose quotient contains the pattern.
    """
    ceiling = LIMITS.minor_pattern_vertices if ceiling is None else ceiling
    max_states = LIMITS.minor_states if max_states is None else max_states
    if pattern.n > ceiling:
        raise ResourceLimitError(f"minor pattern has {pattern.n} vertices, ceiling is {ceiling}")
    if pattern.n == 0:
        return Embedding((), "minor", ())
    if pattern.n > host.n or pattern.m > host.m:
        return None
    start = tuple((v,) for v in range(host.n))
    seen = {start}
    stack = [start]
    states = 0
    while stack:
        blocks = stack.pop()
        states += 1
        if states > max_states:
            raise ResourceLimitError(f"minor search exceeded {max_states} partitions")
        q = _quotient(host, blocks)
        if q.m < pattern.m:
            continue
        found = _embed(q, pattern, False, q.n)
        if found is not None:
            sets = tuple(blocks[x] for x in found)
            return Embedding(tuple(s[0] for s in sets), "minor", sets)
        if q.n - 1 < pattern.n:
            continue
        children = []
        for a, b in q.edges:
            merged = tuple(sorted(blocks[a] + blocks[b]))
            nxt = tuple(sorted([blk for i, blk in enumerate(blocks) if i not in (a, b)] + [merged]))
            if nxt not in seen:
                seen.add(nxt)
                children.append(nxt)
        # reversed so the first quotient edge is explored first
        stack.extend(reversed(children))
    return None


def _reach(adj: Sequence[int], start: int, allowed: int) -> int:
    """Bitmask of vertices reachable from ``start`` through ``allowed``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def longest_path(g: Graph, *, ceiling: int | None = None) -> list[int]:
    """Maximum-vertex path, lexicographically least among the maxima."""
    ceiling = LIMITS.longest_path_vertices if ceiling is None else ceiling
    if g.n > ceiling:
        raise ResourceLimitError(f"longest_path on {g.n} vertices, ceiling is {ceiling}")
    if g.n == 0:
        return []
    adj = g.adj
    best: list[int] = []
    path: list[int] = []

    def dfs(used: int) -> bool:
        nonlocal best
        if len(path) > len(best):
            best = path.copy()
            if len(best) == g.n:
                return True
        end = path[-1]
        free = ~used & g.full_mask
        bound = len(path) - 1 + _popcount(_reach(adj, end, free))
        if bound <= len(best):
            return False
        for v in bits(adj[end] & free):
            path.append(v)
            if dfs(used | 1 << v):
                return True
            path.pop()
        return False

    for s in range(g.n):
        path.append(s)
        if dfs(1 << s):
            break
        path.pop()
    return best


def longest_induced_path(g: Graph, *, ceiling: int | None = None) -> list[int]:
    """Maximum-vertex chordless path, lexicographically least among maxima."""
    ceiling = LIMITS.induced_path_vertices if ceiling is None else ceiling
    if g.n > ceiling:
        raise ResourceLimitError(f"longest_induced_path on {g.n} vertices, ceiling is {ceiling}")
    if g.n == 0:
        return []
    adj = g.adj
    full = g.full_mask
    best: list[int] = []
    path: list[int] = []

    def dfs(blocked: int) -> None:
        # blocked: path vertices plus neighbours of every path vertex but the end
        nonlocal best
        if len(path) > len(best):
            best = path.copy()
        end = path[-1]
        cand = adj[end] & ~blocked
        if not cand:
            return
        region = full & ~blocked
        bound = len(path) - 1 + _popcount(_reach(adj, end, region))
        if bound <= len(best):
            return
        nb = blocked | adj[end] | (1 << end)
        for v in bits(cand):
            path.append(v)
            dfs(nb | 1 << v)
            path.pop()

    for s in range(g.n):
        if len(best) == g.n:
            break
        path.append(s)
        dfs(1 << s)
        path.pop()
    return best


def find_biclique(g: Graph, a: int, b: int, *, max_combinations: int | None = None,
                  within: int | None = None) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Least ``(A, B)`` with ``|A| = a``, ``|B| = b``, disjoint, all A-B pairs adjacent.

    Subgraph semantics: edges inside a side are allowed. ``within`` is an
    optional bitmask restricting both sides.
    """
    if a < 0 or b < 0:
        raise MalformedInputError("biclique sides must be non-negative")
    limit = LIMITS.combinations if max_combinations is None else max_combinations
    pool = g.full_mask if within is None else within & g.full_mask
    verts = list(bits(pool))
    count = 0
    for side in combinations(verts, a):
        count += 1
        if count > limit:
            raise ResourceLimitError(f"biclique search exceeded {limit} candidate sides")
        common = pool
        for v in side:
            common &= g.adj[v]
        for v in side:
            common &= ~(1 << v)
        if _popcount(common) >= b:
            other = []
            for v in bits(common):
                if len(other) == b:
                    break
                other.append(v)
            return tuple(side), tuple(other)
    return None


def find_clique(g: Graph, t: int, *, within: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically least clique of exactly ``t`` vertices."""
    pool = g.full_mask if within is None else within & g.full_mask
    if t <= 0:
        return ()
    chosen: list[int] = []

    def dfs(cand: int) -> bool:
        if len(chosen) == t:
            return True
        if _popcount(cand) < t - len(chosen):
            return False
        for v in bits(cand):
            chosen.append(v)
            if dfs(cand & g.adj[v] & ~((2 << v) - 1)):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if dfs(pool) else None


def maximum_clique(g: Graph, *, within: int | None = None) -> tuple[int, ...]:
    """Largest clique, lexicographically least among the largest."""
    pool = g.full_mask if within is None else within & g.full_mask
    size = 0
    best: tuple[int, ...] = ()
    while True:
        c = find_clique(g, size + 1, within=pool)
        if c is None:
            return best
        best, size = c, size + 1


def maximum_independent_set(g: Graph, *, within: int | None = None) -> tuple[int, ...]:
    comp = Graph(g.n, [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)])
    return maximum_clique(comp, within=within)


def treewidth_exact(g: Graph, *, ceiling: int | None = None) -> int:
    """Exact treewidth by dynamic programming over vertex subsets.

    ``TW(S) = min_v max(TW(S - v), |Q(S - v, v)|)`` where ``Q(S, v)`` is the
    set of vertices outside ``S + v`` reachable from ``v`` through ``S``.
    The empty graph has treewidth -1.
    """
    ceiling = LIMITS.treewidth_vertices if ceiling is None else ceiling
    n = g.n
    if n > ceiling:
        raise ResourceLimitError(f"treewidth on {n} vertices, ceiling is {ceiling}")
    if n == 0:
        return -1
    adj = g.adj
    full = g.full_mask
    tw = [0] * (1 << n)
    tw[0] = -1
    for s in range(1, 1 << n):
        best = n
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            t = tw[prev]
            if t >= best:
                continue
            comp = _reach(adj, v, prev | low)
            out = 0
            for x in bits(comp):
                out |= adj[x]
            q = _popcount(out & full & ~(prev | low))
            cand = t if t > q else q
            if cand < best:
                best = cand
        tw[s] = best
    return tw[full]


def find_hole(g: Graph, min_len: int = 4, *, ceiling: int | None = None) -> list[int] | None:
    """Least induced cycle with at least ``max(4, min_len)`` vertices.

    Cycles are written starting at their smallest vertex, with the second
    vertex smaller than the last.
    """
    ceiling = LIMITS.hole_vertices if ceiling is None else ceiling
    if g.n > ceiling:
        raise ResourceLimitError(f"hole search on {g.n} vertices, ceiling is {ceiling}")
    need = max(4, min_len)
    adj = g.adj
    path: list[int] = []

    def dfs(start: int, interior_nb: int, used: int) -> bool:
        # interior_nb: neighbours of path vertices other than start and end
        end = path[-1]
        higher = ~((2 << start) - 1)
        for w in bits(adj[end] & higher & ~used & ~interior_nb):
            if len(path) >= 2 and adj[w] >> start & 1:
                if len(path) + 1 >= need and path[1] < w:
                    path.append(w)
                    return True
                continue
            nb = interior_nb | (adj[end] if len(path) >= 2 else 0)
            path.append(w)
            if dfs(start, nb, used | 1 << w):
                return True
            path.pop()
        return False

    for s in range(g.n):
        path[:] = [s]
        if dfs(s, 0, 1 << s):
            return path.copy()
    return None
