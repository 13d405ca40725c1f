import json
import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canonwit.canonical import HGRAPH, HOLE, CanonicalDescriptor, CanonicalWitness, make_canonical
from canonwit.errors import InsufficientInputError, MalformedInputError
from canonwit.extraction import (
    Biclique,
    Canonical,
    HGraphEmbedding,
    Inconclusive,
    InducedPath,
    Rake,
    RakeEmbedding,
    ShortPath,
    biclique_from_families,
    canonical_from_dense_rake,
    check_rake,
    densify_rake,
    identity_grid_model,
    induced_path_or_biclique,
    rake_from_grid_model,
    shorten_hgraph,
    verify_witness,
    witness_from_json,
    witness_pipeline,
    witness_to_json,
)
from canonwit.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    grid_graph,
    path_graph,
    rake_graph,
    rake_layout,
)
from canonwit.graph import Graph
from canonwit.oracles import Embedding, find_biclique, find_minor_model, longest_induced_path, longest_path

from conftest import graphs, random_graph


def rake_embedding(k: int, density: int = 1) -> RakeEmbedding:
    base, teeth = rake_layout(k, density)
    return RakeEmbedding(tuple(base), tuple(teeth), density)


def with_edges(g: Graph, extra) -> Graph:
    return Graph(g.n, list(g.edges) + list(extra))


def assert_verified(g, w):
    ok, bad = verify_witness(g, w)
    assert ok, bad


# verify_witness and JSON

def test_verify_examples():
    c5 = cycle_graph(5)
    assert verify_witness(c5, InducedPath((0, 1, 2, 3))) == (True, None)
    ok, bad = verify_witness(c5, InducedPath((0, 1, 2, 3, 4)))
    assert not ok and "0" in bad and "4" in bad
    ok, bad = verify_witness(c5, Inconclusive("nothing"))
    assert not ok and bad == "not a witness"


def test_verify_biclique_and_canonical():
    k33 = complete_bipartite(3, 3)
    assert verify_witness(k33, Biclique((0, 1, 2), (3, 4, 5)))[0]
    assert not verify_witness(k33, Biclique((0, 1), (1, 3)))[0]
    assert not verify_witness(k33, Biclique((0, 1), (2, 3)))[0]
    c6 = cycle_graph(6)
    assert verify_witness(c6, Canonical(CanonicalWitness(CanonicalDescriptor(HOLE, 6), tuple(range(6)))))[0]
    # C_6 plus a chord is no longer an induced hole
    assert not verify_witness(with_edges(c6, [(0, 3)]),
                              Canonical(CanonicalWitness(CanonicalDescriptor(HOLE, 6), tuple(range(6)))))[0]


def test_verify_rake_density():
    g = rake_graph(5, 2)
    r = rake_embedding(5, 2)
    assert verify_witness(g, Rake(r))[0]
    sparse = RakeEmbedding(r.base, r.teeth, 1)
    assert not verify_witness(g, Rake(sparse))[0]


def test_json_round_trip():
    g = rake_graph(4)
    items = [
        InducedPath((0, 1, 2), ("a",)),
        Biclique((0,), (1, 2)),
        Canonical(CanonicalWitness(CanonicalDescriptor.parse("H''5"), tuple(range(9)))),
        Rake(rake_embedding(4)),
        Inconclusive("why", ("x", "y")),
    ]
    for w in items:
        d = json.loads(json.dumps(witness_to_json(w, verified=True)))
        back = witness_from_json(d)
        assert back == w and back.stage_log == w.stage_log
    d = witness_to_json(items[3], verified=verify_witness(g, items[3])[0])
    assert d["type"] == "rake" and d["verified"] is True and d["teeth"][0] == [6, 1]
    with pytest.raises(MalformedInputError):
        witness_from_json({"type": "tree"})


# biclique_from_families

def test_families_k33():
    g = complete_bipartite(3, 3)
    assert biclique_from_families(g, [[0], [1], [2]], [[3], [4], [5]], 2) == ((0, 1), (3, 4))
    a, b = biclique_from_families(g, [[0], [1], [2]], [[3], [4], [5]], 1)
    assert len(a) == len(b) == 1 and g.has_edge(a[0], b[0])


def test_families_missing_edge_is_named():
    g = Graph(4, [(0, 2)])
    with pytest.raises(MalformedInputError, match="1"):
        biclique_from_families(g, [[0], [1]], [[2], [3]], 1)


def test_families_at_the_guaranteed_size():
    rng = random.Random(33)
    n_sets = 33
    a_sets = [(2 * i, 2 * i + 1) for i in range(n_sets)]
    off = 2 * n_sets
    b_sets = [(off + 2 * j, off + 2 * j + 1) for j in range(n_sets)]
    edges = []
    for sa in a_sets:
        for sb in b_sets:
            edges.append((rng.choice(sa), rng.choice(sb)))
    g = Graph(4 * n_sets, edges)
    found = biclique_from_families(g, a_sets, b_sets, 2)
    assert found is not None
    side_a, side_b = found
    assert len(side_a) == len(side_b) == 2
    assert verify_witness(g, Biclique(side_a, side_b))[0]
    assert find_biclique(g, 2, 2) is not None


# induced_path_or_biclique

def test_ipb_examples():
    p9 = path_graph(9)
    res = induced_path_or_biclique(p9, range(9), 5, 4)
    assert isinstance(res, InducedPath) and len(res.vertices) >= 5
    k6 = complete_graph(6)
    res = induced_path_or_biclique(k6, range(6), 3, 4)
    assert isinstance(res, Biclique) and (len(res.side_a), len(res.side_b)) == (2, 2)
    assert_verified(k6, res)
    res = induced_path_or_biclique(k6, [4], 1, 9)
    assert isinstance(res, InducedPath) and len(res.vertices) == 1


def test_ipb_rejects_non_paths():
    with pytest.raises(MalformedInputError):
        induced_path_or_biclique(path_graph(4), [0, 2], 2, 2)
    with pytest.raises(MalformedInputError):
        induced_path_or_biclique(path_graph(4), [0, 1, 0], 2, 2)
    with pytest.raises(MalformedInputError):
        induced_path_or_biclique(path_graph(4), [0, 1], 0, 2)


def test_ipb_below_threshold_is_inconclusive():
    res = induced_path_or_biclique(path_graph(3), [0, 1, 2], 5, 4)
    assert isinstance(res, Inconclusive)


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=9, min_n=1), st.integers(1, 6), st.integers(1, 6), st.randoms(use_true_random=False))
def test_ipb_agrees_with_oracles(g, s, q, rnd):
    path = longest_path(g) if rnd.random() < 0.7 else [rnd.randrange(g.n)]
    res = induced_path_or_biclique(g, path, s, q)
    if isinstance(res, InducedPath):
        assert_verified(g, res)
        assert len(res.vertices) >= s
        assert len(longest_induced_path(g)) >= s
    elif isinstance(res, Biclique):
        assert_verified(g, res)
        assert (len(res.side_a), len(res.side_b)) == (q // 2, (q + 1) // 2)
        assert find_biclique(g, q // 2, (q + 1) // 2) is not None


# shorten_hgraph

def hgraph_host(order: int):
    """H-graph of the given order: body 0..order-1, wings order..order+3."""
    g = make_canonical(CanonicalDescriptor(HGRAPH, order, "plain"), min_h_order=2)
    h = HGraphEmbedding(tuple(range(order)), (order, order + 1), (order + 2, order + 3))
    return g, h


def test_shorten_bare_hgraph_is_canonical():
    g, h = hgraph_host(10)
    res = shorten_hgraph(g, h, 6)
    assert isinstance(res, Canonical) and res.descriptor.kind == HGRAPH
    assert res.descriptor.order >= 6
    assert_verified(g, res)


def test_shorten_wing_into_body_gives_short_path():
    g, h = hgraph_host(10)
    g = with_edges(g, [(10, 5)])
    res = shorten_hgraph(g, h, 6)
    assert isinstance(res, ShortPath)
    assert res.vertices == (10, 5, 6, 7, 8, 9, 12)
    assert 2 <= len(res.vertices) - 1 <= 6 + 1


def test_shorten_wing_to_wing_edge_gives_hole():
    g, h = hgraph_host(10)
    g = with_edges(g, [(10, 12)])
    res = shorten_hgraph(g, h, 6)
    assert isinstance(res, Canonical) and res.descriptor.kind == HOLE
    assert res.descriptor.order >= 6 + 1
    assert_verified(g, res)


def test_shorten_rejects_chorded_body():
    g, h = hgraph_host(6)
    with pytest.raises(MalformedInputError, match="chord"):
        shorten_hgraph(with_edges(g, [(0, 2)]), h, 3)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 10), st.integers(2, 8), st.lists(st.tuples(st.integers(0, 13), st.integers(0, 13)), max_size=6))
def test_shorten_dichotomy(order, s, extra):
    g, h = hgraph_host(order)
    body = set(h.body)
    n = g.n
    extra = [(a % n, b % n) for a, b in extra]
    extra = [(a, b) for a, b in extra if a != b and not (a in body and b in body)]
    g = with_edges(g, extra)
    res = shorten_hgraph(g, h, s)
    if isinstance(res, ShortPath):
        vs = res.vertices
        assert 2 <= len(vs) - 1 <= s + 1
        assert vs[0] in h.left and vs[-1] in h.right
        assert all(v in body for v in vs[1:-1])
        assert all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))
    else:
        assert isinstance(res, Canonical)
        assert_verified(g, res)
        assert res.descriptor.order >= s


# rake_from_grid_model

@pytest.mark.parametrize("k", [3, 4, 5, 6])
@pytest.mark.parametrize("structure", ["columns", "rows"])
def test_rake_from_identity_grid(k, structure):
    g = grid_graph(k)
    r = rake_from_grid_model(g, identity_grid_model(k), k, structure=structure)
    assert check_rake(g, r) is None
    assert len(r.teeth) == k


def test_rake_rows_structure_on_4_grid():
    g = grid_graph(4)
    r = rake_from_grid_model(g, identity_grid_model(4), 4, structure="rows")
    assert r.base == (0, 1, 2, 3)
    assert sorted(r.teeth) == [(4, 0), (5, 1), (6, 2), (7, 3)]


def test_rake_from_model_of_a_rake():
    # a 9-rake contains a 2x9 grid-like structure only as a minor of a wider
    # graph, so use the column structure over a 9x9 grid model instead
    g = grid_graph(9)
    r = rake_from_grid_model(g, identity_grid_model(9), 9)
    assert check_rake(g, r) is None and len(r.teeth) == 9


def test_rake_from_found_minor_model():
    g = grid_graph(4, 5)
    model = find_minor_model(g, grid_graph(3), ceiling=9)
    assert model is not None
    r = rake_from_grid_model(g, model, 3)
    assert check_rake(g, r) is None and len(r.teeth) == 3


def test_invalid_grid_model_rejected():
    g = grid_graph(3)
    g2 = Graph(9, [e for e in g.edges if e != (0, 1)])
    with pytest.raises(MalformedInputError):
        rake_from_grid_model(g2, identity_grid_model(3), 3)
    with pytest.raises(MalformedInputError):
        rake_from_grid_model(g, Embedding(tuple(range(9))), 3)


# densify_rake

def test_densify_bare_rake():
    k = 6
    g = rake_graph(k + 2)
    res = densify_rake(g, rake_embedding(k + 2), 4)
    assert isinstance(res, Rake)
    r = res.embedding
    assert len(r.teeth) == k and r.density == 4 + 5
    assert check_rake(g, r) is None


def test_densify_long_detour_gives_canonical():
    # 2-dense rake with a long chordless body between two consecutive roots
    base, teeth = rake_layout(4, 12)
    g = rake_graph(4, 12)
    res = densify_rake(g, RakeEmbedding(tuple(base), tuple(teeth)), 4)
    assert isinstance(res, Canonical) and res.descriptor.order >= 4
    assert_verified(g, res)


def test_densify_rejects_invalid_rake():
    g = path_graph(5)
    with pytest.raises(MalformedInputError):
        densify_rake(g, rake_embedding(3), 3)


def test_densify_too_few_inner_teeth():
    # teeth on the first and last base vertex are dropped, leaving one
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (4, 0), (5, 1), (6, 3)])
    r = RakeEmbedding((0, 1, 2, 3), ((4, 0), (5, 1), (6, 3)))
    assert check_rake(g, r) is None
    with pytest.raises(InsufficientInputError, match="teeth"):
        densify_rake(g, r, 3)


def chorded_rakes(count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        k = rng.randint(4, 8)
        d = rng.randint(1, 4)
        base, teeth = rake_layout(k, d)
        g = rake_graph(k, d)
        extra = [tuple(rng.sample(range(g.n), 2)) for _ in range(rng.randint(0, 6))]
        yield with_edges(g, extra), RakeEmbedding(tuple(base), tuple(teeth)), rng.randint(2, 5)


GLUE_CASES = {
    "both paths pass through it",
    "glued at #, tooth #",
    "glued at tooth #, new tooth #",
    "glued at tooth #, which becomes the root",
    "inserted # after tooth # on the right",
    "inserted # before tooth # on the left",
    "joined through #, tooth #",
    "left end swapped to #",
    "right start swapped to #",
    "left path now ends at tooth # via #",
    "right path restarted at tooth # via #",
}


def test_densify_glue_cases_are_all_exercised_and_sound():
    seen = set()
    for g, r, s in chorded_rakes(4000, 1):
        log: list[str] = []
        try:
            res = densify_rake(g, r, s, log=log)
        except InsufficientInputError:
            continue
        if isinstance(res, Rake):
            assert res.embedding.density == s + 5
            assert check_rake(g, res.embedding) is None
        else:
            assert_verified(g, res)
            assert res.descriptor.order >= s
        for line in log:
            m = re.match(r"root \d+: (.*)$", line)
            if m:
                seen.add(re.sub(r"\d+", "#", m.group(1)))
    assert GLUE_CASES <= seen, GLUE_CASES - seen


# canonical_from_dense_rake

def test_dense_rake_tree_gives_hgraph():
    s = 4
    g = rake_graph(s + 6)
    res = canonical_from_dense_rake(g, rake_embedding(s + 6), s, 2)
    assert isinstance(res, Canonical) and res.descriptor.kind == HGRAPH
    assert res.descriptor.order > s
    assert_verified(g, res)
    assert find_biclique(g, 2, 2) is None


def test_dense_rake_teeth_clique_gives_biclique():
    g = rake_graph(6)
    r = rake_embedding(6)
    teeth = [t for t, _ in r.teeth]
    g = with_edges(g, [(a, b) for i, a in enumerate(teeth) for b in teeth[i + 1:]])
    res = canonical_from_dense_rake(g, r, 4, 2)
    assert isinstance(res, Biclique) and res.order == 2
    assert set(res.side_a + res.side_b) <= set(teeth)
    assert_verified(g, res)


def test_dense_rake_tooth_spanning_a_gap_gives_hole():
    s = 5
    g = rake_graph(4, s + 1)
    r = rake_embedding(4, s + 1)
    tooth, root = r.teeth[0]
    far = r.base[root + s + 1]
    g = with_edges(g, [(tooth, far)])
    res = canonical_from_dense_rake(g, r, s, 2)
    assert isinstance(res, Canonical) and res.descriptor.kind == HOLE
    assert res.descriptor.order >= s
    assert_verified(g, res)


def test_dense_rake_needs_density():
    with pytest.raises(MalformedInputError):
        canonical_from_dense_rake(rake_graph(5), RakeEmbedding(*rake_layout(5)[0:1], ()), 3, 2)


def test_dense_rake_too_small():
    with pytest.raises(InsufficientInputError):
        canonical_from_dense_rake(rake_graph(1), rake_embedding(1), 6, 2)


@pytest.mark.parametrize("k", range(6, 13))
def test_dense_rake_on_trees_never_biclique(k):
    g = rake_graph(k)
    for s in range(2, 7):
        try:
            res = canonical_from_dense_rake(g, rake_embedding(k), s, 2)
        except InsufficientInputError:
            continue
        assert not isinstance(res, Biclique)
        assert_verified(g, res)


# pipeline

def test_pipeline_cycle():
    res = witness_pipeline(cycle_graph(9), 5, 2)
    assert isinstance(res, Canonical) and str(res.descriptor) == "C9"
    assert res.stage_log


def test_pipeline_rake_tree():
    g = rake_graph(12)
    res = witness_pipeline(g, 4, 2)
    assert isinstance(res, Canonical) and res.descriptor.kind == HGRAPH and res.descriptor.order >= 4
    assert_verified(g, res)
    res = witness_pipeline(g, 4, 2, stages=("dense-rake",), rake=rake_embedding(12))
    assert isinstance(res, Canonical) and res.descriptor.kind == HGRAPH and res.descriptor.order >= 4
    assert_verified(g, res)


def test_pipeline_k33():
    g = complete_bipartite(3, 3)
    # stage order puts the direct search first, and K_{3,3} holds an induced C_4
    res = witness_pipeline(g, 4, 3)
    assert isinstance(res, Canonical) and str(res.descriptor) == "C4"
    res = witness_pipeline(g, 4, 3, stages=("path",))
    assert isinstance(res, Biclique) and res.order == 3
    assert_verified(g, res)


def test_pipeline_inconclusive_and_errors():
    res = witness_pipeline(complete_graph(2), 5, 2)
    assert isinstance(res, Inconclusive) and res.stage_log
    with pytest.raises(MalformedInputError):
        witness_pipeline(complete_graph(2), 0, 2)
    with pytest.raises(MalformedInputError):
        witness_pipeline(complete_graph(2), 2, 2, stages=("magic",))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=9), st.integers(1, 6), st.integers(1, 3))
def test_pipeline_soundness(g, s, q):
    res = witness_pipeline(g, s, q)
    if not isinstance(res, Inconclusive):
        assert_verified(g, res)
    assert witness_pipeline(g, s, q) == res


def test_pipeline_sound_on_larger_random_graphs():
    rng = random.Random(20)
    for _ in range(60):
        n = rng.randint(10, 20)
        g = random_graph(rng, n, rng.choice([0.1, 0.2, 0.35]))
        s, q = rng.randint(2, 6), rng.randint(1, 3)
        res = witness_pipeline(g, s, q)
        if not isinstance(res, Inconclusive):
            assert_verified(g, res)
