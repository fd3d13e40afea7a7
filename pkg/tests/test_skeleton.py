import itertools

import pytest
from hypothesis import given, settings, strategies as st

from troplanar.antihoney import AntiHoneycombType, build_triangulation
from troplanar.errors import NotACutEdge, NotACycle
from troplanar.graphcat import canonical_form, faces_of, is_isomorphic, is_planar
from troplanar.graphs import Multigraph, cut_edges, graph_genus
from troplanar.lattice_geom import Compatibility, convex_hull, lattice_points, splits_compatible
from troplanar.skeleton import (
    cut_edge_split_witness,
    cycle_dual_interior_point,
    geometric_rotation,
    skeleton_of,
    skeletonize,
)
from troplanar.subdivision import dual_graph, enumerate_triangulations

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
POLYGONS = {
    "square2": [(0, 0), (2, 0), (2, 2), (0, 2)],
    "tri3": [(0, 0), (3, 0), (0, 3)],
    "strip2": [(0, 0), (3, 0), (3, 2), (0, 2)],
    "genus3": [(0, 0), (4, 0), (0, 4)],
    "genus4": [(-2, 0), (0, -2), (2, 2)],
}
BUDGET = 150

# (303): central triangle 2-3-4, bridges to three lollipops
G303 = Multigraph(6, ((0, 0), (0, 2), (1, 1), (1, 3), (2, 3), (2, 4), (3, 4), (4, 5), (5, 5)))


def _sample():
    out = []
    for name, verts in POLYGONS.items():
        cfg = lattice_points(convex_hull(verts))
        out += [(name, t) for t in enumerate_triangulations(cfg, budget=BUDGET)]
    return out


SAMPLE = _sample()


@pytest.fixture(scope="module")
def delta4():
    t = build_triangulation(AntiHoneycombType(-2, 0, -2, 0, -2, 0))
    sk, eta = skeleton_of(t)
    return t, sk, eta


def interior_cycle(t, eta, z):
    """Skeleton edges met by the dual cycle of triangles around point ``z``."""
    image = eta.image
    return sorted({image[d] for d, (i, j) in enumerate(eta.gamma.labels) if z in (i, j)})


# degenerate cases


def test_unit_square_skeleton_is_empty():
    cfg = lattice_points(convex_hull(SQUARE))
    for t in enumerate_triangulations(cfg):
        sk, eta = skeleton_of(t)
        assert sk.n == 0 and eta.degenerate == "empty"
        assert len(eta.redundant) == 1


def test_genus_one_skeleton_is_a_loop():
    cfg = lattice_points(convex_hull(POLYGONS["tri3"]))
    for t in enumerate_triangulations(cfg, budget=20):
        sk, eta = skeleton_of(t)
        assert (sk.n, sk.edges, eta.degenerate) == (1, ((0, 0),), "cycle")
        assert graph_genus(sk) == 1
        assert cycle_dual_interior_point(t, [0], eta) == (1, 1)


# (303)


def test_antihoneycomb_skeleton_is_303(delta4):
    _, sk, eta = delta4
    assert is_isomorphic(sk, G303)
    assert graph_genus(sk) == 4 and eta.degenerate is None
    assert len(cut_edges(sk)) == 3


def test_genus_examples():
    assert graph_genus(Multigraph(2, ((0, 1), (0, 1), (0, 1)))) == 2
    assert graph_genus(Multigraph(1, ((0, 0),))) == 1
    assert graph_genus(G303) == 4


def test_303_cut_edge_witnesses_are_the_three_splits(delta4):
    t, sk, eta = delta4
    mids = {(-1, -1), (1, 0), (0, 1)}
    seen = set()
    for e in cut_edges(sk):
        s = cut_edge_split_witness(t, e, eta)
        ends = frozenset(tuple(t.config.points[i]) for i in s.endpoints)
        assert ends <= mids
        seen.add(ends)
    assert len(seen) == 3


def test_non_cut_edge_has_no_witness(delta4):
    t, sk, eta = delta4
    inner = next(e for e in range(sk.m) if e not in cut_edges(sk))
    with pytest.raises(NotACutEdge):
        cut_edge_split_witness(t, inner, eta)


def test_central_cycle_maps_to_origin(delta4):
    t, sk, eta = delta4
    tri = [k for k, (u, v) in enumerate(sk.edges) if u != v and k not in cut_edges(sk)]
    assert len(tri) == 3
    assert cycle_dual_interior_point(t, tri, eta) == (0, 0)


def test_bad_cycles_rejected(delta4):
    t, sk, eta = delta4
    with pytest.raises(NotACycle):
        cycle_dual_interior_point(t, [], eta)
    with pytest.raises(NotACycle):
        cycle_dual_interior_point(t, cut_edges(sk)[:1], eta)


@pytest.mark.parametrize("name,t", SAMPLE[::9], ids=lambda x: x if isinstance(x, str) else "")
def test_witness_is_first_dual_cut_edge(name, t):
    sk, eta = skeleton_of(t)
    if eta.degenerate:
        return
    bridges = set(cut_edges(dual_graph(t).graph))
    for e in cut_edges(sk):
        hits = sorted(d for d in eta.paths[e] if d in bridges)
        assert hits
        s = cut_edge_split_witness(t, e, eta)
        assert s.endpoints == tuple(sorted(eta.gamma.labels[hits[0]]))


# properties over the sample


@pytest.mark.parametrize("name,t", SAMPLE[::7], ids=lambda x: x if isinstance(x, str) else "")
def test_skeleton_genus_matches_polygon(name, t):
    sk, eta = skeleton_of(t)
    g = t.config.genus
    assert graph_genus(sk) == g
    if g >= 2:
        assert sk.is_trivalent() and is_planar(sk)
        rot = geometric_rotation(t, eta)
        assert len(faces_of(sk, rot)) == 2 - sk.n + sk.m


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SAMPLE), st.integers(0, 10**6))
def test_skeleton_order_independent(sample, seed):
    _, t = sample
    a, eta_a = skeletonize(dual_graph(t))
    b, eta_b = skeletonize(dual_graph(t), seed=seed)
    assert canonical_form(a) == canonical_form(b)
    assert eta_a.redundant == eta_b.redundant
    assert {frozenset(p) for p in eta_a.paths} == {frozenset(p) for p in eta_b.paths}


@pytest.mark.parametrize("name,t", SAMPLE[::5], ids=lambda x: x if isinstance(x, str) else "")
def test_cut_split_and_compatible_lemmas(name, t):
    sk, eta = skeleton_of(t)
    if eta.degenerate:
        return
    witnesses = []
    for e in cut_edges(sk):
        s = cut_edge_split_witness(t, e, eta)
        assert all(not t.config.is_interior(i) for i in s.endpoints)
        assert t.has_edge(*s.endpoints)
        witnesses.append(s)
    for a, b in itertools.combinations(witnesses, 2):
        assert splits_compatible(a, b) is Compatibility.STRONGLY


@pytest.mark.parametrize("name,t", SAMPLE[::5], ids=lambda x: x if isinstance(x, str) else "")
def test_cycles_biject_with_interior_points(name, t):
    sk, eta = skeleton_of(t)
    if eta.degenerate == "empty":
        return
    cycles = set()
    for z in t.config.interior:
        cyc = interior_cycle(t, eta, z)
        assert cycle_dual_interior_point(t, cyc, eta) == t.config.points[z]
        cycles.add(tuple(cyc))
    assert len(cycles) == t.config.genus


def test_contraction_map_covers_surviving_edges(delta4):
    t, sk, eta = delta4
    dual = dual_graph(t).graph
    covered = set(eta.image) | set(eta.redundant)
    assert covered == set(range(dual.m))
    assert not set(eta.image) & set(eta.redundant)
    for k in range(sk.m):
        assert all(eta(d) == k for d in eta.preimage(k))
