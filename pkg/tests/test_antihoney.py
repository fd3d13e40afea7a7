from pathlib import Path

import pytest

from troplanar.antihoney import (
    AntiHoneycombType,
    build_polygon,
    build_triangulation,
    coarse_cells,
    coarse_triangulation_edges,
    in_coarse_lattice,
    triangle_genus_formula,
    valid_types,
)
from troplanar.errors import DegenerateType, OutOfRange
from troplanar.graphcat import is_isomorphic
from troplanar.graphs import Multigraph, graph_genus
from troplanar.lattice_geom import convex_hull, genus, lattice_points, normal_form
from troplanar.obstructions import classify, detect_sprawling_triangle
from troplanar.skeleton import geometric_rotation, skeleton_of
from troplanar.subdivision import is_regular, lower_envelope, validate

DATA = Path(__file__).parent / "data"
DELTA4 = AntiHoneycombType(-2, 0, -2, 0, -2, 0)
G303 = Multigraph(6, ((0, 0), (0, 2), (1, 1), (1, 3), (2, 3), (2, 4), (3, 4), (4, 5), (5, 5)))

# non-boundary segments of the drawn genus-4 triangulation
FIG3_INNER = {
    ((2, 2), (1, 1)), ((1, 1), (1, 0)), ((1, 1), (0, 1)), ((0, 1), (1, 0)), ((0, 1), (0, 0)),
    ((1, 0), (0, 0)), ((0, 1), (-1, 0)), ((0, 1), (-1, -1)), ((1, 0), (-1, -1)), ((1, 0), (0, -1)),
    ((-1, 0), (-2, 0)), ((-1, 0), (-1, -1)), ((0, -1), (-1, -1)), ((0, -1), (0, -2)),
    ((0, 0), (-1, -1)),
}

GRID = list(valid_types())


def edge_points(t, e):
    return frozenset(tuple(t.config.points[i]) for i in e)


# type validation


def test_type_needs_strict_inequalities():
    with pytest.raises(DegenerateType):
        AntiHoneycombType(0, 0, 0, 1, 0, 1)
    with pytest.raises(DegenerateType):
        AntiHoneycombType(0, 1, 2, 1, 0, 1)


def test_type_parse():
    assert AntiHoneycombType.parse("-2,0;-2,0;-2,0") == DELTA4
    assert AntiHoneycombType.parse("(-2, 0; -2, 0; -2, 0)") == DELTA4
    with pytest.raises(DegenerateType):
        AntiHoneycombType.parse("1 2 3")


def test_empty_region_is_degenerate():
    with pytest.raises(DegenerateType):
        build_polygon(AntiHoneycombType(3, 4, 3, 4, 3, 4))


# polygons


def test_genus_four_polygon():
    poly = build_polygon(DELTA4)
    assert set(poly.vertices) == {(2, 2), (-2, 0), (0, -2)}
    assert genus(poly) == 4


@pytest.mark.parametrize("k", range(1, 8))
def test_standard_triangle_family(k):
    poly = build_polygon(AntiHoneycombType(0, k, 0, k, 0, k))
    assert set(poly.vertices) == {(-k, -k), (0, k), (k, 0)}
    assert genus(poly) == triangle_genus_formula(k)


def test_genus_formula_values():
    assert [triangle_genus_formula(k) for k in (1, 2, 4)] == [1, 4, 19]
    with pytest.raises(OutOfRange):
        triangle_genus_formula(0)


def test_k2_triangle_is_the_genus_four_triangle():
    a = build_polygon(AntiHoneycombType(0, 2, 0, 2, 0, 2))
    assert genus(a) == 4
    assert normal_form(a) == normal_form(build_polygon(DELTA4))


def test_grid_polygons_have_three_to_six_sides():
    assert len(GRID) == 721
    for _, poly in GRID:
        assert 3 <= len(poly.vertices) <= 6


# triangulations


def test_genus_four_triangulation_matches_drawing():
    t = build_triangulation(DELTA4)
    assert len(t.triangles) == 12
    inner = {edge_points(t, e) for e in t.internal_edges()}
    assert inner == {frozenset(e) for e in FIG3_INNER}


def test_genus_four_skeleton_is_303_with_sprawling_triangle():
    sk, eta = skeleton_of(build_triangulation(DELTA4))
    assert is_isomorphic(sk, G303)
    assert detect_sprawling_triangle(sk) is not None
    assert graph_genus(sk) == 4


def test_genus_four_triangulation_is_regular():
    t = build_triangulation(DELTA4)
    r = is_regular(t)
    assert r.regular
    assert lower_envelope(t.config, r.heights).key == t.key


def test_genus_nineteen_skeleton_matches_drawing():
    t = build_triangulation(AntiHoneycombType(0, 4, 0, 4, 0, 4))
    assert t.config.genus == 19
    sk, eta = skeleton_of(t)
    drawn = Multigraph.from_text((DATA / "antihoney_genus19_skeleton.graph").read_text())
    assert is_isomorphic(sk, drawn)
    assert not classify(sk, rotation_hint=geometric_rotation(t, eta)).obstructed


@pytest.mark.parametrize("k", [2, 3, 5])
def test_misaligned_standard_triangles_are_degenerate(k):
    # their corners sit off the coarse lattice
    with pytest.raises(DegenerateType):
        build_triangulation(AntiHoneycombType(0, k, 0, k, 0, k))


def test_whole_grid_triangulates():
    for pi, poly in GRID:
        t = build_triangulation(pi)
        assert validate(t).valid
        sk, _ = skeleton_of(t)
        assert graph_genus(sk) == t.config.genus == genus(poly)


def test_fine_points_are_interior_and_in_one_cell():
    for pi, poly in GRID[::17]:
        cfg = lattice_points(poly)
        cells = coarse_cells(poly)
        for i, p in enumerate(cfg.points):
            if in_coarse_lattice(p):
                continue
            assert cfg.is_interior(i)
            hosts = [c for c in cells if convex_hull(c).locate(tuple(p)) > 0]
            assert len(hosts) == 1


def test_coarse_edges_follow_the_three_directions():
    directions = {(2, 1), (1, 2), (1, -1)}
    for pi, _ in GRID[::11]:
        for p, q in coarse_triangulation_edges(pi):
            d = (q[0] - p[0], q[1] - p[1])
            assert d in directions or (-d[0], -d[1]) in directions


def test_stellar_centres_have_degree_three():
    t = build_triangulation(DELTA4)
    cfg = t.config
    for i, p in enumerate(cfg.points):
        if not in_coarse_lattice(p):
            assert sum(i in tri for tri in t.triangles) == 3


def test_coarse_cells_refuse_misaligned_polygons():
    with pytest.raises(DegenerateType):
        coarse_cells(convex_hull([(0, 0), (4, 0), (0, 4)]))


def test_genus_four_grid_members_are_the_triangle():
    target = normal_form(build_polygon(DELTA4))
    g4 = [poly for _, poly in GRID if genus(poly) == 4]
    assert g4
    assert all(normal_form(p) == target for p in g4)


def test_distinct_types_can_share_a_polygon():
    seen = {}
    for pi, poly in GRID:
        seen.setdefault(poly.vertices, []).append(pi)
    assert any(len(v) > 1 for v in seen.values())
    a, b = next(v for v in seen.values() if len(v) > 1)[:2]
    assert build_triangulation(a).key == build_triangulation(b).key
