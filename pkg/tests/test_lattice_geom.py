import itertools

import pytest
from hypothesis import given, settings, strategies as st

from troplanar.errors import ConfigMismatch, DegenerateInput, InvalidTransform, ParseError
from troplanar.lattice_geom import (
    COORD_LIMIT,
    Compatibility,
    LatticePolygon,
    LatticePoint,
    PointKind,
    Split,
    configuration,
    convex_hull,
    find_splits,
    genus,
    lattice_points,
    normal_form,
    splits_compatible,
    transform_points,
    unimodular_image,
)

from oracles import hull_points

GENUS4 = [(-2, 0), (0, -2), (2, 2)]
TRI4 = [(0, 0), (4, 0), (0, 4)]

unimodular = st.sampled_from([
    ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((1, 0), (1, 1)),
    ((2, 1), (1, 1)), ((1, -1), (0, 1)), ((-1, 0), (0, 1)), ((0, -1), (1, 0)),
    ((3, 2), (1, 1)), ((1, 2), (1, 3)),
])
small = st.integers(-6, 6)
point_sets = st.lists(st.tuples(small, small), min_size=3, max_size=7)


def _poly(pts):
    try:
        return convex_hull(pts)
    except DegenerateInput:
        return None


# convex hull


def test_hull_of_unit_triangle():
    assert set(convex_hull([(0, 0), (1, 0), (0, 1)]).vertices) == {(0, 0), (1, 0), (0, 1)}


def test_hull_drops_collinear_midpoint():
    assert set(convex_hull([(0, 0), (2, 0), (1, 0), (0, 2)]).vertices) == {(0, 0), (2, 0), (0, 2)}


def test_hull_of_genus_four_triangle_with_interior_point():
    assert set(convex_hull(GENUS4 + [(0, 0)]).vertices) == set(GENUS4)


def test_hull_rejects_collinear_and_too_few():
    with pytest.raises(DegenerateInput):
        convex_hull([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegenerateInput):
        convex_hull([(0, 0), (1, 0)])


def test_hull_rejects_huge_coordinates():
    with pytest.raises(Exception):
        convex_hull([(0, 0), (COORD_LIMIT * 4, 0), (0, 1)])


def test_polygon_requires_ccw_convex_vertices():
    with pytest.raises(DegenerateInput):
        LatticePolygon(((0, 0), (0, 1), (1, 0)))


# lattice points and genus


def test_lattice_points_unit_triangle():
    cfg = lattice_points(convex_hull([(0, 0), (1, 0), (0, 1)]))
    assert len(cfg) == 3 and cfg.genus == 0


def test_lattice_points_genus_four_triangle():
    cfg = lattice_points(convex_hull(GENUS4))
    assert len(cfg) == 10 and cfg.genus == 4
    assert cfg.points[cfg.interior[0]] in {(0, 0), (-1, 0), (1, 1), (0, -1)}


def test_lattice_points_match_oracle_on_tri4():
    cfg = lattice_points(convex_hull(TRI4))
    pts, inner = hull_points(TRI4)
    assert sorted(cfg.points) == sorted(pts)
    assert (len(cfg), cfg.genus) == (15, 3) == (len(pts), inner)


def test_point_kinds():
    cfg = lattice_points(convex_hull([(0, 0), (2, 0), (0, 2)]))
    kinds = {tuple(p): k for p, k in zip(cfg.points, cfg.kinds)}
    assert kinds[(0, 0)] is PointKind.VERTEX
    assert kinds[(1, 0)] is PointKind.EDGE
    assert sum(k is PointKind.INTERIOR for k in cfg.kinds) == 0


@pytest.mark.parametrize("verts,g", [([(0, 0), (1, 0), (0, 1)], 0), (GENUS4, 4), (TRI4, 3)])
def test_genus_examples(verts, g):
    assert genus(convex_hull(verts)) == g


@settings(max_examples=80, deadline=None)
@given(point_sets)
def test_lattice_points_agree_with_oracle(pts):
    poly = _poly(pts)
    if poly is None:
        return
    cfg = lattice_points(poly)
    ref, inner = hull_points(poly.vertices)
    assert sorted(cfg.points) == sorted(ref)
    assert cfg.genus == inner == genus(poly)


@settings(max_examples=80, deadline=None)
@given(point_sets)
def test_pick_formula(pts):
    poly = _poly(pts)
    if poly is None:
        return
    cfg = lattice_points(poly)
    # 2A = 2i + b - 2
    assert poly.area2() == 2 * cfg.genus + len(cfg.boundary) - 2
    assert len(cfg.boundary) == poly.boundary_count()


# unimodular maps


def test_identity_map_is_identity():
    cfg = lattice_points(convex_hull(TRI4))
    img = unimodular_image(cfg, ((1, 0), (0, 1)), (0, 0))
    assert img.points == cfg.points


def test_swap_preserves_symmetric_triangle():
    cfg = lattice_points(convex_hull(TRI4))
    img = unimodular_image(cfg, ((0, 1), (1, 0)), (0, 0))
    assert set(img.points) == set(cfg.points)


def test_shear_of_unit_triangle():
    cfg = lattice_points(convex_hull([(0, 0), (1, 0), (0, 1)]))
    img = unimodular_image(cfg, ((1, 1), (0, 1)), (0, 0))
    assert set(img.polygon.vertices) == {(0, 0), (1, 0), (1, 1)}
    assert img.genus == 0


def test_non_unimodular_map_rejected():
    cfg = lattice_points(convex_hull(TRI4))
    with pytest.raises(InvalidTransform):
        unimodular_image(cfg, ((2, 0), (0, 1)), (0, 0))


@settings(max_examples=60, deadline=None)
@given(point_sets, unimodular, st.tuples(small, small))
def test_genus_invariant_under_unimodular_maps(pts, m, shift):
    poly = _poly(pts)
    if poly is None:
        return
    cfg = lattice_points(poly)
    img = unimodular_image(cfg, m, shift)
    assert img.genus == cfg.genus
    assert len(img) == len(cfg)
    assert normal_form(img.polygon) == normal_form(poly)


def test_normal_form_separates_inequivalent_polygons():
    assert normal_form(convex_hull(TRI4)) != normal_form(convex_hull(GENUS4))
    assert normal_form(convex_hull([(0, 0), (2, 0), (0, 2)])) != normal_form(
        convex_hull([(0, 0), (2, 0), (2, 1), (0, 1)]))


def test_transform_points():
    assert transform_points([(1, 2)], ((1, 1), (0, 1)), (1, 0)) == [LatticePoint(4, 2)]


# splits


def test_unit_triangle_has_no_splits():
    assert find_splits(lattice_points(convex_hull([(0, 0), (1, 0), (0, 1)]))) == []


def test_square_contains_middle_split():
    cfg = lattice_points(convex_hull([(0, 0), (2, 0), (2, 2), (0, 2)]))
    target = {cfg.index((0, 1)), cfg.index((2, 1))}
    hits = [s for s in find_splits(cfg) if set(s.endpoints) == target]
    assert len(hits) == 1
    lower = {p for p in cfg.points if p[1] <= 1}
    upper = {p for p in cfg.points if p[1] >= 1}
    cells = {frozenset(cfg.points[i] for i in side) for side in hits[0].sides}
    assert cells == {frozenset(lower), frozenset(upper)}


def _genus4_splits():
    """The three chords joining edge midpoints of the genus-4 triangle."""
    cfg = lattice_points(convex_hull(GENUS4))
    mids = {(-1, -1), (1, 0), (0, 1)}
    return cfg, [s for s in find_splits(cfg)
                 if {tuple(cfg.points[i]) for i in s.endpoints} <= mids]


def test_genus_four_triangle_has_three_corner_splits():
    cfg, splits = _genus4_splits()
    assert len(splits) == 3
    # each split cuts off one corner holding exactly one interior point
    for s in splits:
        inner = sorted(sum(cfg.is_interior(i) and s.side_of(i) == side for i in range(len(cfg)))
                       for side in (0, 1))
        assert inner == [1, 3]


def test_genus_four_splits_pairwise_strongly_compatible():
    _, splits = _genus4_splits()
    for a, b in itertools.combinations(splits, 2):
        assert splits_compatible(a, b) is Compatibility.STRONGLY


def test_split_with_itself_is_strongly_compatible():
    _, splits = _genus4_splits()
    assert splits_compatible(splits[0], splits[0]) is Compatibility.STRONGLY


def test_crossing_mid_splits_are_weakly_compatible():
    cfg = lattice_points(convex_hull([(0, 0), (4, 0), (4, 4), (0, 4)]))
    h = Split.from_endpoints(cfg, cfg.index((0, 2)), cfg.index((4, 2)))
    v = Split.from_endpoints(cfg, cfg.index((2, 0)), cfg.index((2, 4)))
    assert splits_compatible(h, v) is Compatibility.WEAKLY


def test_crossing_off_lattice_is_incompatible():
    cfg = lattice_points(convex_hull([(0, 0), (3, 0), (3, 3), (0, 3)]))
    a = Split.from_endpoints(cfg, cfg.index((0, 0)), cfg.index((3, 3)))
    b = Split.from_endpoints(cfg, cfg.index((0, 2)), cfg.index((3, 1)))
    assert splits_compatible(a, b) is Compatibility.INCOMPATIBLE


def test_compatibility_rejects_foreign_configurations():
    _, s4 = _genus4_splits()
    cfg = lattice_points(convex_hull([(0, 0), (2, 0), (2, 2), (0, 2)]))
    with pytest.raises(ConfigMismatch):
        splits_compatible(s4[0], find_splits(cfg)[0])


@settings(max_examples=40, deadline=None)
@given(point_sets)
def test_split_properties(pts):
    poly = _poly(pts)
    if poly is None:
        return
    cfg = lattice_points(poly)
    splits = find_splits(cfg)
    for s in splits:
        assert all(not cfg.is_interior(i) for i in s.endpoints)
        assert s.sides[0] | s.sides[1] == frozenset(range(len(cfg)))
    for a, b in itertools.combinations(splits[:8], 2):
        assert splits_compatible(a, b) == splits_compatible(b, a)


# serialization


def test_polygon_text_and_json_round_trip():
    poly = convex_hull(GENUS4)
    assert LatticePolygon.from_text(poly.to_text()) == poly
    assert LatticePolygon.from_json(poly.to_json()) == poly


def test_polygon_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 3"):
        LatticePolygon.from_text("polygon\n0 0\n1 x\n0 1\n")
    with pytest.raises(ParseError, match="line 1"):
        LatticePolygon.from_text("poly\n")


def test_configuration_from_points():
    cfg = configuration([(0, 0), (2, 0), (0, 2), (1, 1)])
    assert len(cfg) == 6 and (1, 1) in cfg
