"""Exact lattice geometry in the plane.

Everything here works on Python integers, with a coordinate bound that keeps
every cross product inside signed 64-bit range. Rationals appear only when
intersecting split lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import ConfigMismatch, DegenerateInput, InvalidTransform, ParseError

# |coordinate| <= 2**30 keeps (differences)**2 sums below 2**63
COORD_LIMIT = 2 ** 30
INT64_MAX = 2 ** 63 - 1


def _checked(value: int) -> int:
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise OverflowError(f"value {value} leaves signed 64-bit range")
    return value


class LatticePoint(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # type: ignore[override]
        return LatticePoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return LatticePoint(self.x - other[0], self.y - other[1])


def _point(p) -> LatticePoint:
    x, y = p
    if isinstance(x, bool) or isinstance(y, bool) or int(x) != x or int(y) != y:
        raise TypeError(f"lattice point needs integer coordinates, got {p!r}")
    x, y = int(x), int(y)
    if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
        raise OverflowError(f"coordinate of {p!r} exceeds {COORD_LIMIT}")
    return LatticePoint(x, y)


def cross(o, a, b) -> int:
    """Twice the signed area of triangle ``o a b`` (positive when ccw)."""
    return _checked((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def _gcd_steps(a, b) -> int:
    from math import gcd
    return gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))


# ---------------------------------------------------------------------------
# polygons


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon, vertices counter-clockwise and strictly convex."""

    vertices: tuple[LatticePoint, ...]

    def __post_init__(self):
        vs = tuple(_point(v) for v in self.vertices)
        if len(vs) < 3:
            raise DegenerateInput("a polygon needs at least 3 vertices")
        k = len(vs)
        for i in range(k):
            if cross(vs[i], vs[(i + 1) % k], vs[(i + 2) % k]) <= 0:
                raise DegenerateInput("vertices are not in strictly convex ccw position")
        object.__setattr__(self, "vertices", vs)

    @property
    def edges(self) -> list[tuple[LatticePoint, LatticePoint]]:
        k = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % k]) for i in range(k)]

    def area2(self) -> int:
        """Twice the Euclidean area (the normalized area)."""
        o = self.vertices[0]
        return sum(cross(o, a, b) for a, b in self.edges)

    def locate(self, p) -> int:
        """1 strictly inside, 0 on the boundary, -1 outside."""
        best = 1
        for a, b in self.edges:
            c = cross(a, b, p)
            if c < 0:
                return -1
            if c == 0:
                best = 0
        return best

    def bbox(self) -> tuple[int, int, int, int]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def boundary_count(self) -> int:
        return sum(_gcd_steps(a, b) for a, b in self.edges)

    # serialization

    def to_text(self) -> str:
        return "polygon\n" + "".join(f"{v.x} {v.y}\n" for v in self.vertices)

    def to_json(self) -> dict:
        return {"polygon": [[v.x, v.y] for v in self.vertices]}

    @classmethod
    def from_text(cls, text: str) -> "LatticePolygon":
        rows = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
        rows = [(i, ln) for i, ln in rows if ln and not ln.startswith("#")]
        if not rows or rows[0][1] != "polygon":
            raise ParseError("expected header 'polygon'", line=rows[0][0] if rows else 1)
        pts = []
        for lineno, ln in rows[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ParseError("vertex line must be 'x y'", line=lineno)
            try:
                pts.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise ParseError("coordinates must be integers", line=lineno) from None
        try:
            return convex_hull(pts)
        except DegenerateInput as exc:
            raise ParseError(str(exc), line=rows[-1][0]) from None

    @classmethod
    def from_json(cls, data) -> "LatticePolygon":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "polygon" not in data:
            raise ParseError("JSON polygon needs a 'polygon' key")
        return convex_hull([tuple(p) for p in data["polygon"]])


def convex_hull(points: Iterable) -> LatticePolygon:
    """Convex hull by monotone chain; collinear boundary points are dropped."""
    pts = sorted(set(_point(p) for p in points))
    if len(pts) < 3:
        raise DegenerateInput("need at least 3 distinct points")

    def chain(seq):
        out: list[LatticePoint] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("points are collinear")
    return LatticePolygon(tuple(hull))


# ---------------------------------------------------------------------------
# point configurations


class PointKind(str, Enum):
    INTERIOR = "interior"
    VERTEX = "vertex"
    EDGE = "edge"


@dataclass(frozen=True)
class PointConfiguration:
    """All lattice points of a polygon in lexicographic order, each tagged
    as interior, hull vertex or relative interior of a hull edge."""

    points: tuple[LatticePoint, ...]
    kinds: tuple[PointKind, ...]
    polygon: LatticePolygon
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def index(self, p) -> int:
        return self._index[LatticePoint(*p)]

    def __contains__(self, p) -> bool:
        return LatticePoint(*p) in self._index

    @property
    def interior(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k is PointKind.INTERIOR]

    @property
    def boundary(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k is not PointKind.INTERIOR]

    def is_interior(self, i: int) -> bool:
        return self.kinds[i] is PointKind.INTERIOR

    @property
    def genus(self) -> int:
        return len(self.interior)

    def hull_edge_of(self, i: int, j: int) -> bool:
        """True when points i and j lie on one common edge of the hull."""
        p, q = self.points[i], self.points[j]
        return any(cross(a, b, p) == 0 and cross(a, b, q) == 0 for a, b in self.polygon.edges)


def lattice_points(polygon: LatticePolygon) -> PointConfiguration:
    x0, y0, x1, y1 = polygon.bbox()
    vset = set(polygon.vertices)
    pts, kinds = [], []
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            loc = polygon.locate((x, y))
            if loc < 0:
                continue
            p = LatticePoint(x, y)
            pts.append(p)
            if loc > 0:
                kinds.append(PointKind.INTERIOR)
            else:
                kinds.append(PointKind.VERTEX if p in vset else PointKind.EDGE)
    return PointConfiguration(tuple(pts), tuple(kinds), polygon)


def configuration(points: Iterable) -> PointConfiguration:
    """Lattice points of the convex hull of ``points``."""
    return lattice_points(convex_hull(points))


def genus(polygon: LatticePolygon) -> int:
    """Number of interior lattice points, counted directly."""
    x0, y0, x1, y1 = polygon.bbox()
    return sum(1 for x in range(x0 + 1, x1) for y in range(y0 + 1, y1) if polygon.locate((x, y)) > 0)


def _apply(matrix, shift, p) -> LatticePoint:
    (a, b), (c, d) = matrix
    return _point((a * p[0] + b * p[1] + shift[0], c * p[0] + d * p[1] + shift[1]))


def unimodular_image(config: PointConfiguration, matrix: Sequence[Sequence[int]],
                     shift=(0, 0)) -> PointConfiguration:
    """Image under ``p -> matrix @ p + shift``; requires ``|det| = 1``."""
    (a, b), (c, d) = matrix
    if abs(a * d - b * c) != 1:
        raise InvalidTransform(f"determinant {a * d - b * c} is not +-1")
    poly = convex_hull(_apply(matrix, shift, v) for v in config.polygon.vertices)
    return lattice_points(poly)


def transform_points(points, matrix, shift=(0, 0)) -> list[LatticePoint]:
    (a, b), (c, d) = matrix
    if abs(a * d - b * c) != 1:
        raise InvalidTransform(f"determinant {a * d - b * c} is not +-1")
    return [_apply(matrix, shift, p) for p in points]


# ---------------------------------------------------------------------------
# splits


class Compatibility(str, Enum):
    STRONGLY = "strongly"
    WEAKLY = "weakly"
    INCOMPATIBLE = "incompatible"


@dataclass(frozen=True)
class Split:
    """Chord between two boundary points and the two closed cells it cuts
    the configuration into (points on the chord belong to both)."""

    config: PointConfiguration = field(compare=False, repr=False)
    endpoints: tuple[int, int]
    sides: tuple[frozenset, frozenset]

    @classmethod
    def from_endpoints(cls, config: PointConfiguration, i: int, j: int) -> "Split":
        if i == j:
            raise DegenerateInput("split endpoints coincide")
        i, j = min(i, j), max(i, j)
        p, q = config.points[i], config.points[j]
        left, right = set(), set()
        for k, r in enumerate(config.points):
            c = cross(p, q, r)
            if c >= 0:
                left.add(k)
            if c <= 0:
                right.add(k)
        return cls(config, (i, j), (frozenset(left), frozenset(right)))

    @property
    def line_points(self) -> frozenset:
        return self.sides[0] & self.sides[1]

    def side_of(self, k: int) -> int:
        """0 or 1 for points off the chord, -1 on it."""
        if k in self.line_points:
            return -1
        return 0 if k in self.sides[0] else 1


def find_splits(config: PointConfiguration) -> list[Split]:
    """Every chord between boundary points that crosses the interior and
    leaves at least one point strictly on each side. Interior lattice
    points may lie on the chord."""
    bd = config.boundary
    out = []
    for a in range(len(bd)):
        for b in range(a + 1, len(bd)):
            i, j = bd[a], bd[b]
            if config.hull_edge_of(i, j):
                continue
            s = Split.from_endpoints(config, i, j)
            if len(s.sides[0] - s.line_points) == 0 or len(s.sides[1] - s.line_points) == 0:
                continue
            out.append(s)
    return out


def _line_meet(p1, p2, q1, q2):
    d = (p2[0] - p1[0]) * (q2[1] - q1[1]) - (p2[1] - p1[1]) * (q2[0] - q1[0])
    if d == 0:
        return None
    t = Fraction((q1[0] - p1[0]) * (q2[1] - q1[1]) - (q1[1] - p1[1]) * (q2[0] - q1[0]), d)
    return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))


def _strictly_inside(poly: LatticePolygon, pt) -> bool:
    for a, b in poly.edges:
        c = (b[0] - a[0]) * (pt[1] - a[1]) - (b[1] - a[1]) * (pt[0] - a[0])
        if c <= 0:
            return False
    return True


def splits_compatible(a: Split, b: Split) -> Compatibility:
    if a.config is not b.config and a.config.points != b.config.points:
        raise ConfigMismatch("splits live on different configurations")
    if a.endpoints == b.endpoints:
        return Compatibility.STRONGLY
    pts = a.config.points
    meet = _line_meet(pts[a.endpoints[0]], pts[a.endpoints[1]], pts[b.endpoints[0]], pts[b.endpoints[1]])
    if meet is None or not _strictly_inside(a.config.polygon, meet):
        return Compatibility.STRONGLY
    x, y = meet
    if x.denominator == 1 and y.denominator == 1:
        return Compatibility.WEAKLY
    return Compatibility.INCOMPATIBLE


# ---------------------------------------------------------------------------
# normal form up to affine unimodular equivalence


def _primitive(v) -> tuple[int, int]:
    from math import gcd
    g = gcd(abs(v[0]), abs(v[1]))
    return v[0] // g, v[1] // g


def _complement(d) -> tuple[int, int]:
    """Integer vector ``e`` with ``det(d, e) = 1`` for primitive ``d``."""
    # extended Euclid on (d0, d1): d0*s + d1*t = 1 gives e = (-t, s)
    a, b = d
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return -old_t, old_s


def _charts(polygon: LatticePolygon):
    """(vertex tuple, coordinate map) for every vertex and edge choice."""
    vs = polygon.vertices
    k = len(vs)
    for i in range(k):
        v = vs[i]
        for j, o in ((i + 1) % k, (i - 1) % k), ((i - 1) % k, (i + 1) % k):
            d = _primitive((vs[j][0] - v[0], vs[j][1] - v[1]))
            e = _complement(d)
            w = (vs[o][0] - v[0], vs[o][1] - v[1])
            sign = 1 if d[0] * w[1] - d[1] * w[0] > 0 else -1

            def coords(p, _v=v, _d=d, _e=e, _sign=sign):
                q = (p[0] - _v[0], p[1] - _v[1])
                a = q[0] * _e[1] - q[1] * _e[0]
                b = _d[0] * q[1] - _d[1] * q[0]
                return a, _sign * b

            wx, wy = coords(vs[o])
            shear = -(wx // wy)

            def chart(p, _c=coords, _s=shear):
                a, b = _c(p)
                return LatticePoint(a + _s * b, b)

            yield tuple(sorted(map(chart, vs))), chart


def normal_form(polygon: LatticePolygon) -> tuple[LatticePoint, ...]:
    """Canonical vertex tuple of the unimodular equivalence class.

    Every choice of a vertex ``v`` and an incident edge direction ``d``
    gives coordinates with ``v`` at the origin, ``d`` along the positive
    x-axis and the polygon in the upper half-plane; the shear freedom is
    fixed by putting the other edge at ``v`` in the strip ``0 <= x < y``.
    The smallest resulting sorted vertex tuple is the normal form.
    """
    return min(cand for cand, _ in _charts(polygon))


def normalizing_maps(polygon: LatticePolygon) -> list:
    """The unimodular affine maps taking ``polygon`` onto its normal form,
    as callables on points. More than one when the polygon has symmetries."""
    charts = list(_charts(polygon))
    best = min(cand for cand, _ in charts)
    return [f for cand, f in charts if cand == best]
