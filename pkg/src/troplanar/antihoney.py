"""Anti-honeycomb polygons and their triangulations.

Three linear forms organise everything:

    f1 = y - 2x,    f2 = x - 2y,    f3 = x + y,

with ``f1 + f2 + f3 == 0``. Their level sets are the line families of
slopes 2, 1/2 and -1. A type ``(k, k'; l, l'; m, m')`` bounds each form on
both sides; the bound for one form combines the parameters of all three
pairs (``k - l' - m' <= f1 <= k' - l - m`` and cyclically), which is what
makes ``(-2,0;-2,0;-2,0)`` the genus-4 triangle and ``(0,k;0,k;0,k)`` the
triangle ``conv{(-k,-k), (0,k), (k,0)}``.

The coarse lattice is ``{(x, y) : x + y = 1 mod 3}``; on it every form is
``1 mod 3`` and the family lines through it cut the plane into triangles
of normalized area 3, each with one non-lattice point at its centroid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateType, OutOfRange
from .lattice_geom import LatticePolygon, convex_hull, lattice_points
from .subdivision import Triangulation, require_valid

FORMS = ((-2, 1), (1, -2), (1, 1))  # coefficients (a, b) of a*x + b*y


@dataclass(frozen=True)
class AntiHoneycombType:
    k: int
    kp: int
    l: int  # noqa: E741
    lp: int
    m: int
    mp: int

    def __post_init__(self):
        if not (self.k < self.kp and self.l < self.lp and self.m < self.mp):
            raise DegenerateType("need k < k', l < l', m < m'")

    @classmethod
    def parse(cls, text: str) -> "AntiHoneycombType":
        """Accepts ``"k,k';l,l';m,m'"`` (spaces and parentheses ignored)."""
        clean = text.strip().strip("()").replace(" ", "")
        parts = [p for chunk in clean.split(";") for p in chunk.split(",") if p]
        if len(parts) != 6:
            raise DegenerateType(f"type needs six integers, got {text!r}")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError:
            raise DegenerateType(f"type needs six integers, got {text!r}") from None

    def __str__(self) -> str:
        return f"({self.k},{self.kp};{self.l},{self.lp};{self.m},{self.mp})"

    def bounds(self) -> tuple[tuple[int, int], ...]:
        """``(lo, hi)`` for each of f1, f2, f3."""
        k, kp, l, lp, m, mp = self.k, self.kp, self.l, self.lp, self.m, self.mp
        return (
            (k - lp - mp, kp - l - m),
            (l - kp - mp, lp - k - m),
            (m - kp - lp, mp - k - l),
        )


def _halfplanes(pi: AntiHoneycombType):
    out = []
    for (a, b), (lo, hi) in zip(FORMS, pi.bounds()):
        out.append((a, b, lo))      # a x + b y >= lo
        out.append((-a, -b, -hi))   # -(a x + b y) >= -hi
    return out


def _region_vertices(pi: AntiHoneycombType) -> list[tuple[Fraction, Fraction]]:
    hp = _halfplanes(pi)
    pts = set()
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(hp, 2):
        d = a1 * b2 - a2 * b1
        if d == 0:
            continue
        x = Fraction(c1 * b2 - c2 * b1, d)
        y = Fraction(a1 * c2 - a2 * c1, d)
        if all(a * x + b * y >= c for a, b, c in hp):
            pts.add((x, y))
    return sorted(pts)


def build_polygon(pi: AntiHoneycombType) -> LatticePolygon:
    """The anti-honeycomb polygon of type ``pi``."""
    verts = _region_vertices(pi)
    if len(verts) < 3:
        raise DegenerateType(f"type {pi} cuts out an empty or lower-dimensional region")
    if any(x.denominator != 1 or y.denominator != 1 for x, y in verts):
        raise DegenerateType(f"type {pi} has non-integral vertices")
    try:
        return convex_hull([(int(x), int(y)) for x, y in verts])
    except Exception as exc:  # collinear vertex set
        raise DegenerateType(f"type {pi}: {exc}") from None


def triangle_genus_formula(k: int) -> int:
    if k < 1:
        raise OutOfRange("k must be positive")
    return (3 * k * k - 3 * k + 2) // 2


def in_coarse_lattice(p) -> bool:
    return (p[0] + p[1]) % 3 == 1


def coarse_cells(polygon: LatticePolygon) -> list[tuple[tuple[int, int], ...]]:
    """Triangles of the line arrangement inside ``polygon``, as triples of
    coarse-lattice points; requires every boundary lattice point to be
    on the coarse lattice."""
    cfg = lattice_points(polygon)
    for i in cfg.boundary:
        if not in_coarse_lattice(cfg.points[i]):
            raise DegenerateType(
                f"boundary point {tuple(cfg.points[i])} is off the coarse lattice; "
                "the polygon edges do not lie on family lines")
    coarse = {tuple(p) for p in cfg.points if in_coarse_lattice(p)}
    cells = []
    for p in sorted(coarse):
        x, y = p
        up = (p, (x + 2, y + 1), (x + 1, y + 2))
        down = (p, (x + 1, y + 2), (x - 1, y + 1))
        for cell in (up, down):
            if all(q in coarse for q in cell):
                cells.append(cell)
    if 3 * len(cells) != polygon.area2():
        raise DegenerateType("coarse cells do not tile the polygon")
    return cells


def build_triangulation(pi: AntiHoneycombType) -> Triangulation:
    """Coarse triangulation by the three line families, then a stellar
    subdivision at the one fine lattice point inside each cell."""
    poly = build_polygon(pi)
    return _stellar(poly)


def _stellar(poly: LatticePolygon) -> Triangulation:
    cfg = lattice_points(poly)
    tris = []
    for a, b, c in coarse_cells(poly):
        cx = Fraction(a[0] + b[0] + c[0], 3)
        cy = Fraction(a[1] + b[1] + c[1], 3)
        centre = (int(cx), int(cy))
        if cx.denominator != 1 or cy.denominator != 1 or not cfg.polygon.locate(centre) > 0:
            raise DegenerateType("cell centroid is not an interior lattice point")
        z = cfg.index(centre)
        ia, ib, ic = cfg.index(a), cfg.index(b), cfg.index(c)
        tris += [(ia, ib, z), (ib, ic, z), (ia, ic, z)]
    t = Triangulation(cfg, tuple(tris))
    require_valid(t)
    return t


def coarse_triangulation_edges(pi: AntiHoneycombType) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Edges of the coarse triangulation, for structural checks."""
    edges = set()
    for cell in coarse_cells(build_polygon(pi)):
        for p, q in itertools.combinations(cell, 2):
            edges.add((min(p, q), max(p, q)))
    return sorted(edges)


def valid_types(lo: int = -4, hi: int = 4):
    """Every type with parameters in ``[lo, hi]`` whose triangulation exists."""
    pairs = [(a, b) for a in range(lo, hi + 1) for b in range(a + 1, hi + 1)]
    for (k, kp), (l, lp), (m, mp) in itertools.product(pairs, repeat=3):
        pi = AntiHoneycombType(k, kp, l, lp, m, mp)
        try:
            poly = build_polygon(pi)
            coarse_cells(poly)
        except DegenerateType:
            continue
        yield pi, poly
