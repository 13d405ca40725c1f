"""Witness types, the independent verifier and the JSON form.

:func:`verify_witness` re-checks every claim with plain adjacency queries
on the host graph. It deliberately shares no code with the extractors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..canonical import CanonicalDescriptor, CanonicalWitness, make_canonical
from ..errors import CanonwitError, MalformedInputError
from ..graph import Graph


@dataclass(frozen=True)
class RakeEmbedding:
    """A rake found as a subgraph.

    ``teeth`` holds ``(tooth, root_index)`` pairs, ``root_index`` pointing
    into ``base``. ``density`` is the claimed window size, if any.
    """

    base: tuple[int, ...]
    teeth: tuple[tuple[int, int], ...]
    density: int | None = None

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(self.base[i] for _, i in self.teeth)

    def sorted_teeth(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.teeth, key=lambda tr: tr[1]))


@dataclass(frozen=True)
class InducedPath:
    vertices: tuple[int, ...]
    stage_log: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class Biclique:
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    stage_log: tuple[str, ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return min(len(self.side_a), len(self.side_b))


@dataclass(frozen=True)
class Canonical:
    witness: CanonicalWitness
    stage_log: tuple[str, ...] = field(default=(), compare=False)

    @property
    def descriptor(self) -> CanonicalDescriptor:
        return self.witness.descriptor


@dataclass(frozen=True)
class Rake:
    embedding: RakeEmbedding
    stage_log: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    stage_log: tuple[str, ...] = field(default=(), compare=False)


Witness = Union[InducedPath, Biclique, Canonical, Rake, Inconclusive]


def _vertex_problem(g: Graph, vs, what: str) -> str | None:
    seen = set()
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            return f"{what}: vertex {v} out of range"
        if v in seen:
            return f"{what}: vertex {v} repeated"
        seen.add(v)
    return None


def _check_induced_path(g: Graph, p) -> str | None:
    if not p:
        return "empty path"
    bad = _vertex_problem(g, p, "path")
    if bad:
        return bad
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            adjacent = g.has_edge(p[i], p[j])
            if j == i + 1 and not adjacent:
                return f"missing path edge ({p[i]},{p[j]})"
            if j > i + 1 and adjacent:
                return f"chord ({p[i]},{p[j]})"
    return None


def _check_biclique(g: Graph, a, b) -> str | None:
    common = set(a) & set(b)
    if common:
        return f"sides intersect at {min(common)}"
    bad = _vertex_problem(g, tuple(a) + tuple(b), "biclique")
    if bad:
        return bad
    for x in a:
        for y in b:
            if not g.has_edge(x, y):
                return f"missing biclique edge ({x},{y})"
    return None


def _check_canonical(g: Graph, w: CanonicalWitness) -> str | None:
    try:
        pattern = make_canonical(w.descriptor, min_h_order=2)
    except MalformedInputError as exc:
        return f"bad descriptor: {exc}"
    mapping = w.mapping
    if len(mapping) != pattern.n:
        return f"{w.descriptor} needs {pattern.n} vertices, got {len(mapping)}"
    bad = _vertex_problem(g, mapping, "canonical")
    if bad:
        return bad
    for i in range(pattern.n):
        for j in range(i + 1, pattern.n):
            want = pattern.has_edge(i, j)
            if g.has_edge(mapping[i], mapping[j]) != want:
                state = "missing" if want else "extra"
                return f"{state} edge ({mapping[i]},{mapping[j]}) for {w.descriptor}"
    return None


def check_rake(g: Graph, r: RakeEmbedding) -> str | None:
    """Diagnostic for a rake embedding, or ``None`` if it is valid.

    The density condition looks at windows of the base with its first and
    last vertex removed: the end vertices of a rake never carry teeth.
    """
    base = r.base
    if not base:
        return "empty base"
    bad = _vertex_problem(g, base, "base")
    if bad:
        return bad
    for x, y in zip(base, base[1:]):
        if not g.has_edge(x, y):
            return f"missing base edge ({x},{y})"
    on_base = set(base)
    seen_teeth = set()
    seen_roots = set()
    for tooth, idx in r.teeth:
        if not isinstance(idx, int) or not 0 <= idx < len(base):
            return f"root index {idx} out of range"
        if not isinstance(tooth, int) or not 0 <= tooth < g.n:
            return f"tooth {tooth} out of range"
        if tooth in on_base:
            return f"tooth {tooth} lies on the base"
        if tooth in seen_teeth:
            return f"tooth {tooth} repeated"
        if idx in seen_roots:
            return f"root {base[idx]} carries two teeth"
        if not g.has_edge(tooth, base[idx]):
            return f"tooth {tooth} not adjacent to root {base[idx]}"
        seen_teeth.add(tooth)
        seen_roots.add(idx)
    if r.density is not None:
        ell = r.density
        if ell < 1:
            return f"density {ell} is not positive"
        inner = range(1, len(base) - 1)
        gap = 0
        for i in inner:
            gap = 0 if i in seen_roots else gap + 1
            if gap >= ell:
                return f"no root among base positions {i - ell + 1}..{i}"
    return None


def verify_witness(g: Graph, w: Witness) -> tuple[bool, str | None]:
    """Return ``(ok, diagnostic)``; ``diagnostic`` is ``None`` when ``ok``."""
    if isinstance(w, InducedPath):
        bad = _check_induced_path(g, w.vertices)
    elif isinstance(w, Biclique):
        bad = _check_biclique(g, w.side_a, w.side_b)
    elif isinstance(w, Canonical):
        bad = _check_canonical(g, w.witness)
    elif isinstance(w, Rake):
        bad = check_rake(g, w.embedding)
    elif isinstance(w, Inconclusive):
        bad = "not a witness"
    else:
        bad = f"unknown witness type {type(w).__name__}"
    return bad is None, bad


def require_valid(g: Graph, w: Witness) -> Witness:
    """Return ``w`` unchanged or raise if it does not verify."""
    ok, bad = verify_witness(g, w)
    if not ok:
        raise CanonwitError(f"internal error: produced an invalid witness ({bad})")
    return w


def witness_to_json(w: Witness, verified: bool | None = None) -> dict:
    out: dict = {}
    if isinstance(w, InducedPath):
        out = {"type": "induced-path", "vertices": list(w.vertices)}
    elif isinstance(w, Biclique):
        out = {"type": "biclique", "sideA": list(w.side_a), "sideB": list(w.side_b)}
    elif isinstance(w, Canonical):
        out = {"type": "canonical", "descriptor": str(w.descriptor),
               "vertices": list(w.witness.mapping)}
    elif isinstance(w, Rake):
        e = w.embedding
        out = {"type": "rake", "base": list(e.base), "teeth": [list(t) for t in e.teeth]}
        if e.density is not None:
            out["density"] = e.density
    elif isinstance(w, Inconclusive):
        out = {"type": "inconclusive", "reason": w.reason}
    else:
        raise MalformedInputError(f"unknown witness type {type(w).__name__}")
    out["verified"] = bool(verified) if verified is not None else False
    out["stageLog"] = list(w.stage_log)
    return out


def _int_list(d: dict, key: str) -> tuple[int, ...]:
    if key not in d:
        raise MalformedInputError(f"witness JSON lacks {key!r}")
    value = d[key]
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise MalformedInputError(f"witness field {key!r} must be a list of integers")
    return tuple(value)


def witness_from_json(d: dict) -> Witness:
    if not isinstance(d, dict) or "type" not in d:
        raise MalformedInputError("witness JSON must be an object with a 'type'")
    kind = d["type"]
    log = tuple(str(x) for x in d.get("stageLog", ()))
    if kind == "induced-path":
        return InducedPath(_int_list(d, "vertices"), log)
    if kind == "biclique":
        return Biclique(_int_list(d, "sideA"), _int_list(d, "sideB"), log)
    if kind == "canonical":
        desc = CanonicalDescriptor.parse(str(d.get("descriptor", "")))
        return Canonical(CanonicalWitness(desc, _int_list(d, "vertices")), log)
    if kind == "rake":
        teeth = d.get("teeth")
        if not isinstance(teeth, list) or not all(
                isinstance(t, list) and len(t) == 2 and all(isinstance(x, int) for x in t) for t in teeth):
            raise MalformedInputError("rake 'teeth' must be a list of [tooth, rootIndex] pairs")
        density = d.get("density")
        if density is not None and not isinstance(density, int):
            raise MalformedInputError("rake 'density' must be an integer")
        return Rake(RakeEmbedding(_int_list(d, "base"), tuple((t[0], t[1]) for t in teeth), density), log)
    if kind == "inconclusive":
        return Inconclusive(str(d.get("reason", "")), log)
    raise MalformedInputError(f"unknown witness type {kind!r}")
