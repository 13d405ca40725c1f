"""Long paths to induced paths or bicliques.

:func:`biclique_from_families` follows the two-round colouring argument:
colour the B-sets by which vertex of each chosen A-set they see, then
colour the chosen vertices by which vertex of each B-set they see.

:func:`induced_path_or_biclique` follows the block-splitting induction:
cut the path into blocks of ``t`` vertices, recurse on the quotient graph
of blocks, and either run the distance endgame on an induced sequence of
blocks or hand a biclique of blocks to :func:`biclique_from_families`.
Below the proven thresholds it is best effort: when the induction comes
up empty, an exact biclique search over the path's vertices is tried
before giving up.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from functools import lru_cache
from itertools import combinations

from ..bounds import BoundOverflow, pigeonhole_P, thm_main2_Y
from ..errors import MalformedInputError, ResourceLimitError
from ..graph import Graph, bits, mask_of
from ..oracles import LIMITS, find_biclique
from .witness import Biclique, Inconclusive, InducedPath, Witness, require_valid

DEFAULT_IPB_BUDGET = 20000


def _check_families(g: Graph, fam_a, fam_b) -> None:
    seen: dict[int, str] = {}
    for name, fam in (("A", fam_a), ("B", fam_b)):
        for i, s in enumerate(fam):
            if not s:
                raise MalformedInputError(f"family {name} set {i} is empty")
            for v in s:
                if not 0 <= v < g.n:
                    raise MalformedInputError(f"family {name} set {i}: vertex {v} out of range")
                if v in seen:
                    raise MalformedInputError(f"vertex {v} in both {seen[v]} and {name}[{i}]")
                seen[v] = f"{name}[{i}]"
    masks_b = [mask_of(s) for s in fam_b]
    for i, sa in enumerate(fam_a):
        reach = 0
        for v in sa:
            reach |= g.adj[v]
        for j, mb in enumerate(masks_b):
            if not reach & mb:
                raise MalformedInputError(f"no edge between A[{i}] and B[{j}]")


def _least_neighbour(g: Graph, pool: Sequence[int], target: int) -> int:
    """Least vertex of ``pool`` with a neighbour in the bitmask ``target``."""
    for x in pool:
        if g.adj[x] & target:
            return x
    raise AssertionError("family hypothesis violated")


def _colouring_biclique(g: Graph, fam_a, fam_b, q: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    p = max(len(s) for s in list(fam_a) + list(fam_b))
    r = pigeonhole_P(p ** q, q).value
    chosen = [sorted(s) for s in fam_a[:r]]
    # colour each B-set by the vertex it sees in every chosen A-set
    classes: dict[tuple[int, ...], list[int]] = {}
    big = None
    for j, w in enumerate(fam_b):
        wm = mask_of(w)
        colour = tuple(_least_neighbour(g, a, wm) for a in chosen)
        members = classes.setdefault(colour, [])
        members.append(j)
        if len(members) == q:
            big = colour
            break
    if big is None:
        return None
    b_sets = [sorted(fam_b[j]) for j in classes[big]]
    # U = the common neighbours, one per chosen A-set; colour by what each sees in B
    u_classes: dict[tuple[int, ...], list[int]] = {}
    for x in big:
        colour = tuple(next(y for y in w if g.has_edge(x, y)) for w in b_sets)
        members = u_classes.setdefault(colour, [])
        members.append(x)
        if len(members) == q:
            return tuple(sorted(members)), tuple(sorted(colour))
    return None


def _exhaustive_biclique(g: Graph, fam_a, fam_b, q: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    pool_b = 0
    for s in fam_b:
        pool_b |= mask_of(s)
    pool_a = sorted(v for s in fam_a for v in s)
    count = 0
    for side in combinations(pool_a, q):
        count += 1
        if count > LIMITS.combinations:
            raise ResourceLimitError("biclique fallback exceeded its combination budget")
        common = pool_b
        for v in side:
            common &= g.adj[v]
        other = list(bits(common))[:q]
        if len(other) == q:
            return side, tuple(other)
    return None


def biclique_from_families(g: Graph, fam_a: Sequence[Sequence[int]], fam_b: Sequence[Sequence[int]],
                           q: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """``K_{q,q}`` with one side drawn from the A-sets and one from the B-sets.

    Runs the colouring argument on the first ``P(p^q, q)`` A-sets; this is
    guaranteed to succeed once both families have ``C(p, q)`` sets. When it
    fails below that size, an exhaustive search over the two unions is
    tried. Returns ``None`` if no such biclique exists.
    """
    if q < 1:
        raise MalformedInputError(f"biclique order must be positive, got {q}")
    fam_a = [tuple(s) for s in fam_a]
    fam_b = [tuple(s) for s in fam_b]
    _check_families(g, fam_a, fam_b)
    if not fam_a or not fam_b:
        return None
    found = _colouring_biclique(g, fam_a, fam_b, q) or _exhaustive_biclique(g, fam_a, fam_b, q)
    if found is not None:
        require_valid(g, Biclique(*found))
    return found


class _Budget:
    def __init__(self, steps: int):
        self.left = steps

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise ResourceLimitError("induced-path search budget exhausted")


def _bfs_tree(g: Graph, starts: Sequence[int], allowed: int) -> dict[int, int | None]:
    prev: dict[int, int | None] = {v: None for v in starts}
    queue = list(starts)
    for x in queue:
        for y in bits(g.adj[x] & allowed):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    return prev


def _trace(prev: dict[int, int | None], end: int) -> list[int]:
    out = [end]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def _distance_endgame(g: Graph, seq: list[tuple[int, ...]], s: int, q: int,
                      budget: _Budget) -> Iterator[tuple]:
    """Endgame for an induced sequence ``seq`` of at least ``s - 1`` blocks.

    With more than ``s - 1`` blocks the distance check always succeeds.
    """
    union = 0
    for blk in seq:
        union |= mask_of(blk)
    first, last = seq[0], set(seq[-1])
    # a shortest path in the induced union is chordless; take the longest
    best: list[int] = []
    for v in first:
        prev = _bfs_tree(g, [v], union)
        for u in seq[-1]:
            if u in prev:
                p = _trace(prev, u)
                if len(p) > len(best):
                    best = p
    if len(best) >= s:
        yield ("path", tuple(best))
        return
    # every first-to-last distance is s - 2: take the least such path
    prev = _bfs_tree(g, list(first), union)
    end = next(u for u in sorted(prev) if u in last)
    w = _trace(prev, end)
    w2 = w[1]
    first_mask = mask_of(first)
    seen = {w[0]}
    queue = [w[0]]
    for x in queue:
        for y in bits(g.adj[x] & first_mask):
            if y in seen:
                continue
            if not g.has_edge(y, w2):
                yield ("path", (y, x) + tuple(w[1:]))
                return
            seen.add(y)
            queue.append(y)
    # w2 sees the whole first block, which is a subpath of the input
    for res in _ipb(g, first, s, q - 1, budget):
        if res[0] == "path":
            yield res
        else:
            a, b = res[1], res[2]
            small, large = (a, b) if len(a) <= len(b) else (b, a)
            small = tuple(sorted(small + (w2,)))
            sides = sorted((small, large), key=len)
            yield ("bic", sides[0], sides[1])


def _quotient_graph(g: Graph, blocks: list[tuple[int, ...]]) -> Graph:
    masks = [mask_of(b) for b in blocks]
    reach = []
    for b in blocks:
        r = 0
        for v in b:
            r |= g.adj[v]
        reach.append(r)
    edges = [(i, j) for i in range(len(blocks)) for j in range(i + 1, len(blocks)) if reach[i] & masks[j]]
    return Graph(len(blocks), edges)


@lru_cache(maxsize=None)
def _small_Y(s: int, q: int) -> int | None:
    try:
        return thm_main2_Y(s, q, max_bits=64).value
    except BoundOverflow:
        return None


def _block_sizes(length: int, s: int, q: int) -> list[int]:
    out = []
    t = _small_Y(s, q - 1)
    if t is not None and 2 * t <= length:
        out.append(t)
    out += [t for t in range(length // 2, 0, -1) if t not in out]
    return out


def _chordless_run(g: Graph, path: tuple[int, ...]) -> tuple[int, ...]:
    """Longest run of consecutive path vertices that is chordless (least start)."""
    best = (0, 0)
    i = 0
    for j in range(len(path)):
        # shrink from the left until path[j] has no chord into path[i..j-2]
        while any(g.has_edge(path[j], path[x]) for x in range(i, j - 1)):
            i += 1
        if j + 1 - i > best[1] - best[0]:
            best = (i, j + 1)
    return path[best[0]:best[1]]


def _ipb(g: Graph, path: tuple[int, ...], s: int, q: int, budget: _Budget) -> Iterator[tuple]:
    """Yield ``("path", P)`` with ``|P| >= s`` or ``("bic", A, B)`` with sides
    ``floor(q/2), ceil(q/2)``."""
    budget.tick()
    if not path:
        return
    if s <= 1:
        yield ("path", path[:1])
        return
    run = _chordless_run(g, path)
    if len(run) >= s:
        yield ("path", run)
    if q <= 1:
        yield ("bic", (), path[:1])
        return
    if s == 2 or q == 2:
        edges = list(zip(path, path[1:]))
        if s == 2:
            for e in edges:
                yield ("path", e)
        if q == 2:
            for x, y in edges:
                yield ("bic", (x,), (y,))
        return
    if q == 3:
        # K_{1,2} is any three consecutive path vertices
        for x, y, z in zip(path, path[1:], path[2:]):
            yield ("bic", (y,), tuple(sorted((x, z))))
        return
    half = (q + 1) // 2
    for t in _block_sizes(len(path), s, q):
        budget.tick()
        k = len(path) // t
        blocks = [path[i * t:(i + 1) * t] for i in range(k)]
        h = _quotient_graph(g, blocks)
        for res in _ipb(h, tuple(range(k)), s - 1, 2 * half, budget):
            budget.tick()
            if res[0] == "path":
                seq = [blocks[i] for i in res[1]]
                yield from _distance_endgame(g, seq, s, q, budget)
            else:
                fam_a = [blocks[i] for i in res[1]]
                fam_b = [blocks[i] for i in res[2]]
                if not fam_a or not fam_b:
                    continue
                found = biclique_from_families(g, fam_a, fam_b, half)
                if found is not None:
                    yield ("bic", found[0][:q // 2], found[1][:half])


def induced_path_or_biclique(g: Graph, path: Sequence[int], s: int, q: int, *,
                             budget: int = DEFAULT_IPB_BUDGET) -> Witness:
    """Induced path on ``>= s`` vertices, or ``K_{floor(q/2), ceil(q/2)}``.

    ``path`` must be a path of ``g`` (not necessarily induced). Returns
    :class:`Inconclusive` when the input is too short for the search to
    succeed or the step budget runs out.
    """
    path = tuple(path)
    if s < 1 or q < 1:
        raise MalformedInputError("s and q must be positive")
    if len(set(path)) != len(path):
        raise MalformedInputError("path repeats a vertex")
    for v in path:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise MalformedInputError(f"path vertex {v} out of range")
    for x, y in zip(path, path[1:]):
        if not g.has_edge(x, y):
            raise MalformedInputError(f"path edge ({x},{y}) missing from the graph")
    try:
        res = next(_ipb(g, path, s, q, _Budget(budget)), None)
    except ResourceLimitError as exc:
        return Inconclusive(str(exc))
    if res is None:
        try:
            found = find_biclique(g, q // 2, (q + 1) // 2, within=mask_of(path))
        except ResourceLimitError as exc:
            return Inconclusive(str(exc))
        if found is not None:
            return require_valid(g, Biclique(*found))
        return Inconclusive(f"no induced P_{s} or biclique found along a {len(path)}-vertex path")
    if res[0] == "path":
        return require_valid(g, InducedPath(res[1]))
    return require_valid(g, Biclique(res[1], res[2]))
