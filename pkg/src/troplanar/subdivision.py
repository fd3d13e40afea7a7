"""Unimodular triangulations of lattice point configurations.

A triangulation is a set of index triples into a ``PointConfiguration``.
Unimodular here means every triangle has normalized area one; for a lattice
polygon that is the same as using every lattice point as a vertex.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import FlipNotAllowed, InvalidTriangulation, ParseError, SplitNotRefined
from .graphs import Multigraph, is_connected
from .lattice_geom import (
    LatticePolygon,
    PointConfiguration,
    Split,
    convex_hull,
    cross,
    lattice_points,
    normalizing_maps,
)

Tri = tuple[int, int, int]
DEFAULT_BUDGET = 10_000_000


def _tri(a: int, b: int, c: int) -> Tri:
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


def _edges_of(t: Tri):
    a, b, c = t
    return ((a, b), (a, c), (b, c))


@dataclass(frozen=True)
class Triangulation:
    config: PointConfiguration = field(compare=False, repr=False)
    triangles: tuple[Tri, ...]

    def __post_init__(self):
        tris = tuple(sorted(set(_tri(*t) for t in self.triangles)))
        object.__setattr__(self, "triangles", tris)

    @property
    def key(self) -> tuple[Tri, ...]:
        return self.triangles

    def edge_map(self) -> dict[tuple[int, int], list[int]]:
        """Primal edge -> indices of the triangles containing it."""
        out: dict[tuple[int, int], list[int]] = {}
        for k, t in enumerate(self.triangles):
            for e in _edges_of(t):
                out.setdefault(e, []).append(k)
        return out

    def internal_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, ts in self.edge_map().items() if len(ts) == 2)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_map()

    # serialization

    def to_text(self) -> str:
        body = self.config.polygon.to_text()
        rows = "".join(f"{a} {b} {c}\n" for a, b, c in self.triangles)
        return "triangulation\n" + body + rows

    def to_json(self) -> dict:
        out = self.config.polygon.to_json()
        out["triangles"] = [list(t) for t in self.triangles]
        return out

    @classmethod
    def from_text(cls, text: str) -> "Triangulation":
        rows = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
        rows = [(i, ln) for i, ln in rows if ln and not ln.startswith("#")]
        if len(rows) < 2 or rows[0][1] != "triangulation" or rows[1][1] != "polygon":
            raise ParseError("expected 'triangulation' then 'polygon'", line=rows[0][0] if rows else 1)
        verts, tris = [], []
        for lineno, ln in rows[2:]:
            parts = ln.split()
            try:
                nums = [int(x) for x in parts]
            except ValueError:
                raise ParseError("expected integers", line=lineno) from None
            if len(nums) == 2 and not tris:
                verts.append(tuple(nums))
            elif len(nums) == 3:
                tris.append((lineno, tuple(nums)))
            else:
                raise ParseError("expected 'x y' vertex or 'i j k' triangle", line=lineno)
        config = lattice_points(convex_hull(verts))
        for lineno, t in tris:
            if not all(0 <= i < len(config) for i in t):
                raise ParseError("triangle index out of range", line=lineno)
        return cls(config, tuple(t for _, t in tris))

    @classmethod
    def from_json(cls, data) -> "Triangulation":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            config = lattice_points(convex_hull([tuple(p) for p in data["polygon"]]))
            return cls(config, tuple(tuple(t) for t in data["triangles"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad triangulation JSON: {exc}") from None


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidityReport:
    valid: bool
    problems: list[str]

    def __bool__(self) -> bool:
        return self.valid


def _on_hull_boundary(config: PointConfiguration, e: tuple[int, int]) -> bool:
    return config.hull_edge_of(*e)


def validate(t: Triangulation) -> ValidityReport:
    """Check areas, coverage, point usage and edge incidences."""
    cfg = t.config
    pts = cfg.points
    problems = []
    n = len(pts)
    for tri in t.triangles:
        if not all(0 <= i < n for i in tri):
            problems.append(f"triangle {tri}: index out of range")
            return ValidityReport(False, problems)
    for tri in t.triangles:
        a, b, c = (pts[i] for i in tri)
        if abs(cross(a, b, c)) != 1:
            problems.append(f"triangle {tri}: normalized area {abs(cross(a, b, c))}, not 1")
    total = sum(abs(cross(*(pts[i] for i in tri))) for tri in t.triangles)
    if total != cfg.polygon.area2():
        problems.append(f"coverage: triangles have normalized area {total}, hull has {cfg.polygon.area2()}")
    used = {i for tri in t.triangles for i in tri}
    for i in range(n):
        if i not in used:
            problems.append(f"point {i} {tuple(pts[i])} unused")
    for e, ts in sorted(t.edge_map().items()):
        boundary = _on_hull_boundary(cfg, e)
        want = 1 if boundary else 2
        if len(ts) != want:
            kind = "hull edge" if boundary else "internal edge"
            problems.append(f"{kind} {e}: in {len(ts)} triangles, expected {want}")
        elif want == 2:
            (i, j) = e
            o1 = [k for k in t.triangles[ts[0]] if k not in e][0]
            o2 = [k for k in t.triangles[ts[1]] if k not in e][0]
            if cross(pts[i], pts[j], pts[o1]) * cross(pts[i], pts[j], pts[o2]) >= 0:
                problems.append(f"internal edge {e}: triangles {ts} overlap")
    return ValidityReport(not problems, problems)


def require_valid(t: Triangulation) -> None:
    rep = validate(t)
    if not rep.valid:
        raise InvalidTriangulation("; ".join(rep.problems[:5]), report=rep)


# ---------------------------------------------------------------------------
# dual graph


@dataclass(frozen=True)
class DualGraph:
    """Nodes are triangle indices; edge ``k`` joins the two triangles that
    share primal edge ``labels[k]``."""

    graph: Multigraph
    labels: tuple[tuple[int, int], ...]


def dual_graph(t: Triangulation) -> DualGraph:
    require_valid(t)
    edges, labels = [], []
    for e, ts in sorted(t.edge_map().items()):
        if len(ts) == 2:
            edges.append((ts[0], ts[1]))
            labels.append(e)
    g = Multigraph(len(t.triangles), tuple(edges))
    if g.n > 1 and not is_connected(g):
        raise InvalidTriangulation("dual graph is disconnected")
    return DualGraph(g, tuple(labels))


# ---------------------------------------------------------------------------
# flips


def _flip_data(t: Triangulation, emap, e):
    ts = emap.get(e)
    if ts is None or len(ts) != 2:
        raise FlipNotAllowed(f"edge {e} is not an internal edge")
    i, j = e
    c = [k for k in t.triangles[ts[0]] if k not in e][0]
    d = [k for k in t.triangles[ts[1]] if k not in e][0]
    p = t.config.points
    # strictly convex quad: c and d on opposite sides of ij, i and j on opposite sides of cd
    if cross(p[c], p[d], p[i]) * cross(p[c], p[d], p[j]) >= 0:
        raise FlipNotAllowed(f"quadrilateral around {e} is not strictly convex")
    return ts, c, d


def flip(t: Triangulation, shared_edge: Sequence[int]) -> Triangulation:
    """Replace the diagonal ``shared_edge`` of its quadrilateral by the other one."""
    e = (min(shared_edge), max(shared_edge))
    emap = t.edge_map()
    ts, c, d = _flip_data(t, emap, e)
    i, j = e
    keep = [tri for k, tri in enumerate(t.triangles) if k not in ts]
    return Triangulation(t.config, tuple(keep + [_tri(c, d, i), _tri(c, d, j)]))


def flippable_edges(t: Triangulation) -> list[tuple[int, int]]:
    emap = t.edge_map()
    out = []
    for e, ts in sorted(emap.items()):
        if len(ts) != 2:
            continue
        try:
            _flip_data(t, emap, e)
        except FlipNotAllowed:
            continue
        out.append(e)
    return out


# ---------------------------------------------------------------------------
# seed and enumeration


def placing_triangulation(config: PointConfiguration) -> Triangulation:
    """Insert points in lexicographic order, coning each new point to the
    part of the current hull it sees. With every lattice point inserted the
    triangles are empty, hence unimodular."""
    pts = config.points
    order = list(range(len(pts)))
    chain = [order[0], order[1]]
    k = 2
    while k < len(order) and cross(pts[chain[0]], pts[chain[1]], pts[order[k]]) == 0:
        chain.append(order[k])
        k += 1
    if k == len(order):
        raise InvalidTriangulation("configuration is collinear")
    apex = order[k]
    tris = [_tri(chain[a], chain[a + 1], apex) for a in range(len(chain) - 1)]
    if cross(pts[chain[0]], pts[chain[-1]], pts[apex]) > 0:
        hull = chain + [apex]
    else:
        hull = [apex] + chain[::-1]
    for p in order[k + 1:]:
        h = len(hull)
        vis = [cross(pts[hull[i]], pts[hull[(i + 1) % h]], pts[p]) < 0 for i in range(h)]
        # rotate so that the visible run is contiguous and starts at index 0
        start = next(i for i in range(h) if vis[i] and not vis[i - 1])
        hull = hull[start:] + hull[:start]
        vis = vis[start:] + vis[:start]
        run = 0
        while vis[run]:
            tris.append(_tri(hull[run], hull[run + 1], p))
            run += 1
        # the visible chain hull[0] .. hull[run] is replaced by hull[0], p, hull[run]
        hull = [hull[0], p] + hull[run:]
    return Triangulation(config, tuple(tris))


class TriangulationStream:
    """Iterable over every unimodular triangulation, in BFS flip order.

    After iteration ``truncated`` tells whether the budget stopped it early.
    """

    def __init__(self, config: PointConfiguration, budget: int | None = DEFAULT_BUDGET,
                 seed: Triangulation | None = None):
        self.config = config
        self.budget = DEFAULT_BUDGET if budget is None else budget
        self.seed = seed
        self.truncated = False
        self.count = 0

    def __iter__(self) -> Iterator[Triangulation]:
        seed = self.seed or placing_triangulation(self.config)
        require_valid(seed)
        seen = {seed.key}
        queue = deque([seed])
        self.count = 0
        self.truncated = False
        while queue:
            t = queue.popleft()
            if self.count >= self.budget:
                self.truncated = True
                return
            self.count += 1
            yield t
            for e in flippable_edges(t):
                u = flip(t, e)
                if u.key not in seen:
                    seen.add(u.key)
                    queue.append(u)


def enumerate_triangulations(config: PointConfiguration, budget: int | None = DEFAULT_BUDGET,
                             seed: Triangulation | None = None) -> TriangulationStream:
    return TriangulationStream(config, budget, seed)


# ---------------------------------------------------------------------------
# regularity


def _fold_rows(t: Triangulation) -> list[dict[int, int]]:
    """One row per internal edge: coefficients ``lam`` with ``sum lam*h > 0``
    exactly when the lifted pair of triangles folds upward along the edge."""
    p = t.config.points
    rows = []
    for (a, b), ts in sorted(t.edge_map().items()):
        if len(ts) != 2:
            continue
        c = [k for k in t.triangles[ts[0]] if k not in (a, b)][0]
        d = [k for k in t.triangles[ts[1]] if k not in (a, b)][0]
        lam = {
            a: cross(p[b], p[c], p[d]),
            b: -cross(p[a], p[c], p[d]),
            c: cross(p[a], p[b], p[d]),
            d: -cross(p[a], p[b], p[c]),
        }
        if lam[c] < 0:
            lam = {k: -v for k, v in lam.items()}
        rows.append(lam)
    return rows


def _simplex_max(A: list[list[Fraction]], b: list[Fraction], c: list[Fraction]) -> tuple[Fraction, list[Fraction]]:
    """Maximize ``c x`` subject to ``A x <= b``, ``x >= 0`` with ``b >= 0``.

    Dense exact tableau, Bland's rule. The origin is feasible so no first
    phase is needed; the caller guarantees boundedness.
    """
    m, n = len(A), len(c)
    tab = [list(A[i]) + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    obj = [-x for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise ArithmeticError("LP unbounded")
        piv = tab[leave][enter]
        row = [x / piv for x in tab[leave]]
        tab[leave] = row
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], row)]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, row)]
        basis[leave] = enter
    x = [Fraction(0)] * (n + m)
    for i, v in enumerate(basis):
        x[v] = tab[i][-1]
    return obj[-1], x[:n]


@dataclass
class RegularityResult:
    regular: bool
    slack: Fraction
    heights: list[Fraction] | None

    def __bool__(self) -> bool:
        return self.regular


def is_regular(t: Triangulation) -> RegularityResult:
    """Exact test for a height function inducing ``t``.

    Maximizes a uniform slack ``s <= 1`` over the fold inequalities
    ``sum lam*h >= s``; regular exactly when the optimum is positive.
    """
    require_valid(t)
    n = len(t.config)
    rows = _fold_rows(t)
    if not rows:
        return RegularityResult(True, Fraction(1), [Fraction(0)] * n)
    # variables: h+ (n), h- (n), s (1)
    A, b = [], []
    for lam in rows:
        r = [Fraction(0)] * (2 * n + 1)
        for k, v in lam.items():
            r[k] = Fraction(-v)
            r[n + k] = Fraction(v)
        r[2 * n] = Fraction(1)
        A.append(r)
        b.append(Fraction(0))
    cap = [Fraction(0)] * (2 * n) + [Fraction(1)]
    A.append(cap)
    b.append(Fraction(1))
    c = [Fraction(0)] * (2 * n) + [Fraction(1)]
    value, x = _simplex_max(A, b, c)
    if value <= 0:
        return RegularityResult(False, value, None)
    heights = [x[k] - x[n + k] for k in range(n)]
    return RegularityResult(True, value, heights)


def lower_envelope(config: PointConfiguration, heights: Sequence) -> Triangulation | None:
    """Triangles of the lower hull of the lifted points when every lower
    face is a unimodular triangle; None otherwise."""
    p = config.points
    h = [Fraction(x) for x in heights]
    n = len(p)
    tris = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                det = cross(p[i], p[j], p[k])
                if abs(det) != 1:
                    continue
                if _all_above(p, h, i, j, k, det):
                    tris.append((i, j, k))
    t = Triangulation(config, tuple(tris))
    return t if validate(t).valid else None


def _all_above(p, h, i, j, k, det) -> bool:
    # affine function through the three lifted points, evaluated elsewhere
    (x0, y0), (x1, y1), (x2, y2) = p[i], p[j], p[k]
    h0, h1, h2 = h[i], h[j], h[k]
    ax = ((h1 - h0) * (y2 - y0) - (h2 - h0) * (y1 - y0)) / det
    ay = ((h2 - h0) * (x1 - x0) - (h1 - h0) * (x2 - x0)) / det
    for m, (x, y) in enumerate(p):
        if m in (i, j, k):
            continue
        if h[m] - (h0 + ax * (x - x0) + ay * (y - y0)) <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# splits


def induced_split_components(t: Triangulation, s: Split) -> tuple[Triangulation, Triangulation]:
    """The two triangulations ``t`` induces on the closed cells of ``s``."""
    i, j = s.endpoints
    if not t.has_edge(i, j):
        raise SplitNotRefined(f"split edge {s.endpoints} is not an edge of the triangulation")
    groups: tuple[list[Tri], list[Tri]] = ([], [])
    for tri in t.triangles:
        sides = {s.side_of(k) for k in tri} - {-1}
        if len(sides) != 1:
            raise SplitNotRefined(f"triangle {tri} crosses the split line")
        groups[sides.pop()].append(tri)
    out = []
    for cell, tris in zip(s.sides, groups):
        sub = lattice_points(convex_hull([t.config.points[k] for k in cell]))
        remap = {k: sub.index(t.config.points[k]) for k in cell}
        out.append(Triangulation(sub, tuple(tuple(remap[k] for k in tri) for tri in tris)))
    return out[0], out[1]


def polygon_triangulation(polygon: LatticePolygon, triangles) -> Triangulation:
    return Triangulation(lattice_points(polygon), tuple(triangles))


def normal_form(t: Triangulation) -> tuple:
    """Canonical triangle list of ``t`` up to unimodular equivalence: the
    smallest image under the maps normalizing its polygon. Two
    triangulations are equivalent iff their normal forms agree."""
    pts = t.config.points
    best = None
    for f in normalizing_maps(t.config.polygon):
        img = tuple(sorted(tuple(sorted(f(pts[i]) for i in tri)) for tri in t.triangles))
        if best is None or img < best:
            best = img
    return best
