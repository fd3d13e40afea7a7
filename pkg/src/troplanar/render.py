"""SVG drawings of triangulations, dual graphs and skeletons.

Documents are assembled with ``xml.etree`` so the output is always
well-formed. Lattice coordinates are flipped vertically (SVG grows
downward). Skeleton layouts are force-directed, started from the
centroids of the triangles the skeleton nodes came from; only the
combinatorics of these pictures is meaningful.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .graphs import Multigraph
from .skeleton import ContractionMap, skeletonize
from .subdivision import Triangulation, dual_graph

SVG_NS = "http://www.w3.org/2000/svg"
TARGETS = ("triangulation", "dual", "skeleton")


@dataclass(frozen=True)
class RenderSpec:
    target: str = "triangulation"
    scale: float = 40.0
    point_labels: bool = False
    node_labels: bool = False

    def __post_init__(self):
        if self.target not in TARGETS and self.target != "all":
            raise ValueError(f"unknown render target {self.target!r}")
        if self.scale < 1:
            raise ValueError("scale must be at least 1")


class _Canvas:
    """Maps lattice coordinates into one panel of the document."""

    def __init__(self, root, bbox, scale, offset_x, margin):
        self.root = root
        self.xmin, self.ymin, self.xmax, self.ymax = bbox
        self.scale = scale
        self.ox = offset_x
        self.margin = margin

    @property
    def width(self) -> float:
        return (self.xmax - self.xmin) * self.scale + 2 * self.margin

    def xy(self, p) -> tuple[float, float]:
        return (self.ox + self.margin + (p[0] - self.xmin) * self.scale,
                self.margin + (self.ymax - p[1]) * self.scale)

    def line(self, p, q, cls):
        (x1, y1), (x2, y2) = self.xy(p), self.xy(q)
        ET.SubElement(self.root, "line", {
            "class": cls, "x1": _f(x1), "y1": _f(y1), "x2": _f(x2), "y2": _f(y2)})

    def path(self, d, cls):
        ET.SubElement(self.root, "path", {"class": cls, "d": d, "fill": "none"})

    def dot(self, p, cls, r=3.0):
        x, y = self.xy(p)
        ET.SubElement(self.root, "circle", {"class": cls, "cx": _f(x), "cy": _f(y), "r": _f(r)})

    def text(self, p, s):
        x, y = self.xy(p)
        el = ET.SubElement(self.root, "text", {"x": _f(x + 4), "y": _f(y - 4), "font-size": "10"})
        el.text = s


def _f(v: float) -> str:
    return f"{v:.2f}"


def _style(root):
    st = ET.SubElement(root, "style")
    st.text = (
        ".edge{stroke:#222;stroke-width:1.5}"
        ".dual{stroke:#c33;stroke-width:1.2}"
        ".skel{stroke:#236;stroke-width:2}"
        ".pt{fill:#222}.node{fill:#c33}.snode{fill:#236}"
    )


def _centroid(t: Triangulation, tri) -> tuple[float, float]:
    pts = t.config.points
    return (sum(pts[i][0] for i in tri) / 3, sum(pts[i][1] for i in tri) / 3)


def _draw_triangulation(cv: _Canvas, t: Triangulation, spec: RenderSpec):
    pts = t.config.points
    for i, j in sorted(t.edge_map()):
        cv.line(pts[i], pts[j], "edge")
    for k, p in enumerate(pts):
        cv.dot(p, "pt", 2.5)
        if spec.point_labels:
            cv.text(p, str(k))


def _draw_dual(cv: _Canvas, t: Triangulation, spec: RenderSpec):
    gamma = dual_graph(t)
    cents = [_centroid(t, tri) for tri in t.triangles]
    for u, v in gamma.graph.edges:
        cv.line(cents[u], cents[v], "dual")
    for k, c in enumerate(cents):
        cv.dot(c, "node", 2.5)
        if spec.node_labels:
            cv.text(c, str(k))


def skeleton_layout(g: Multigraph, start: Optional[dict] = None, seed: int = 0) -> dict:
    """Force-directed positions for the skeleton nodes."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u, v) for u, v in g.edges if u != v)
    if g.n == 0:
        return {}
    if g.n == 1:
        return {0: start[0] if start else (0.0, 0.0)}
    pos = nx.spring_layout(h, pos=start, seed=seed, iterations=200)
    return {k: (float(x), float(y)) for k, (x, y) in pos.items()}


def _draw_skeleton(cv: _Canvas, g: Multigraph, pos: dict, spec: RenderSpec):
    seen: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        k = seen.get((u, v), 0)
        seen[(u, v)] = k + 1
        (x1, y1), (x2, y2) = cv.xy(pos[u]), cv.xy(pos[v])
        if u == v:
            r = 10.0 + 6 * k
            cv.path(f"M {_f(x1)} {_f(y1)} c {_f(-r)} {_f(-2 * r)} {_f(r)} {_f(-2 * r)} 0 0", "skel")
            continue
        if k == 0:
            cv.line(pos[u], pos[v], "skel")
            continue
        # parallel edges bow out alternately
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        norm = math.hypot(dx, dy) or 1.0
        bend = 14.0 * ((k + 1) // 2) * (1 if k % 2 else -1)
        cx, cy = mx - dy / norm * bend, my + dx / norm * bend
        cv.path(f"M {_f(x1)} {_f(y1)} Q {_f(cx)} {_f(cy)} {_f(x2)} {_f(y2)}", "skel")
    for k in range(g.n):
        cv.dot(pos[k], "snode", 3.5)
        if spec.node_labels:
            cv.text(pos[k], str(k))


def _bbox(points) -> tuple[float, float, float, float]:
    xs = [p[0] for p in points] or [0.0]
    ys = [p[1] for p in points] or [0.0]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    if xmax == xmin:
        xmax += 1
    if ymax == ymin:
        ymax += 1
    return xmin, ymin, xmax, ymax


def render_svg(t: Triangulation, spec: RenderSpec = RenderSpec(),
               eta: Optional[ContractionMap] = None) -> str:
    """SVG document for ``spec.target``, or the three panels side by side
    when the target is ``"all"``."""
    targets = TARGETS if spec.target == "all" else (spec.target,)
    root = ET.Element("svg", {"xmlns": SVG_NS, "version": "1.1"})
    _style(root)
    margin = 12.0
    poly_box = _bbox(t.config.polygon.vertices)
    offset = 0.0
    height = 0.0
    for target in targets:
        group = ET.SubElement(root, "g", {"class": target})
        if target == "skeleton":
            if eta is None:
                _, eta = skeletonize(dual_graph(t))
            start = {k: _centroid(t, t.triangles[node]) for k, node in enumerate(eta.node_of)}
            raw = skeleton_layout(eta.skeleton, start)
            pos = _fit(raw, poly_box)
            cv = _Canvas(group, poly_box, spec.scale, offset, margin)
            _draw_skeleton(cv, eta.skeleton, pos, spec)
        else:
            cv = _Canvas(group, poly_box, spec.scale, offset, margin)
            if target == "triangulation":
                _draw_triangulation(cv, t, spec)
            else:
                _draw_dual(cv, t, spec)
        offset += cv.width
        height = max(height, (poly_box[3] - poly_box[1]) * spec.scale + 2 * margin)
    root.set("width", _f(offset))
    root.set("height", _f(height))
    root.set("viewBox", f"0 0 {_f(offset)} {_f(height)}")
    return ET.tostring(root, encoding="unicode", xml_declaration=True)


def _fit(pos: dict, box) -> dict:
    """Rescale layout positions into ``box``."""
    if not pos:
        return pos
    sx0, sy0, sx1, sy1 = _bbox(list(pos.values()))
    bx0, by0, bx1, by1 = box
    pad = 0.1
    out = {}
    for k, (x, y) in pos.items():
        u = pad + (1 - 2 * pad) * (x - sx0) / (sx1 - sx0)
        v = pad + (1 - 2 * pad) * (y - sy0) / (sy1 - sy0)
        out[k] = (bx0 + u * (bx1 - bx0), by0 + v * (by1 - by0))
    return out
