"""Forbidden-pattern detectors for tropically planar graphs and the
classifier that combines them.

Conventions used throughout: a *lollipop* is a node carrying a self-loop;
in a trivalent graph the far side of any bridge automatically has positive
genus, so "cut edge to a positive-genus part" reduces to "bridge".
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from functools import cached_property
from typing import Optional

import networkx as nx

from .errors import NotPlanar, OutOfScope
from .graphcat import canonical_form, faces_of, is_planar, planar_rotations
from .graphs import (
    Multigraph,
    betti,
    bridges,
    components,
    cut_edges,
    graph_genus,
    shortest_path,
    without_edges,
)

DETECTORS = ("sprawling_node", "crowded", "tie_fighter", "sprawling_triangle", "heavy_two_loops")


class _Structure:
    """Cached bridge data for one graph."""

    def __init__(self, g: Multigraph):
        self.g = g
        self.bridges = cut_edges(g)
        self.bridge_set = set(self.bridges)

    @cached_property
    def genus(self) -> int:
        return graph_genus(self.g)

    def bridge_at(self, v: int) -> list[int]:
        return [e for e, _ in self.g.darts[v] if e in self.bridge_set]

    def split_by(self, drop: list[int]) -> list[list[int]]:
        return components(self.g.n, without_edges(self.g, drop))

    def far_side(self, bridge: int, near: int) -> list[int]:
        """Nodes separated from ``near`` by removing ``bridge``."""
        for comp in self.split_by([bridge]):
            if near not in comp:
                return comp
        raise AssertionError("bridge does not separate")


@dataclass
class HeavyCycleWitness:
    cycle: list[int]                # edge indices of C
    v1: int
    v2: int
    e1: int                         # cut edge at v1
    e2: int                         # cut edge at v2
    g1: list[int]                   # nodes beyond e1
    g2: list[int]                   # nodes beyond e2
    heavy_component: list[int]      # nodes of the component of G - {e1, e2} containing C
    heavy_genus: int
    attachments: list[list[int]] = field(default_factory=list)


def _middle(st: _Structure, e1: int, e2: int):
    """For bridges e1 != e2: (v1, v2, G1, G2, H) where H is the component of
    G - {e1, e2} touched by both bridges."""
    g = st.g
    comps = st.split_by([e1, e2])
    where = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            where[v] = idx
    a1, b1 = g.edges[e1]
    a2, b2 = g.edges[e2]
    s1 = {where[a1], where[b1]}
    s2 = {where[a2], where[b2]}
    mid = s1 & s2
    if len(mid) != 1:
        return None
    h = mid.pop()
    v1 = a1 if where[a1] == h else b1
    v2 = a2 if where[a2] == h else b2
    g1 = comps[(s1 - {h}).pop()]
    g2 = comps[(s2 - {h}).pop()]
    return v1, v2, g1, g2, comps[h]


def _sub_edges(g: Multigraph, nodes) -> list[int]:
    nodes = set(nodes)
    return [i for i, (u, v) in enumerate(g.edges) if u in nodes and v in nodes]


def _attachments(g: Multigraph, heavy: list[int], cycle: list[int]) -> list[list[int]]:
    """Pieces of the heavy component hanging off the cycle: components of
    H minus the cycle's edges that keep at least one edge. Together they
    carry the genus of H beyond that of C."""
    in_h = _sub_edges(g, heavy)
    on_c = set(cycle)
    rest = [g.edges[i] for i in in_h if i not in on_c]
    used = {v for e in rest for v in e}
    return [comp for comp in components(g.n, rest, heavy) if set(comp) & used]


# ---------------------------------------------------------------------------
# detectors


def detect_sprawling_node(g: Multigraph) -> Optional[int]:
    """A node whose deletion leaves three components, or None."""
    for v in range(g.n):
        rest = [e for e in g.edges if v not in e]
        nodes = [w for w in range(g.n) if w != v]
        if len(components(g.n, rest, nodes)) >= 3:
            return v
    return None


def detect_heavy_cycles(g: Multigraph, adjacent: bool = True) -> list[HeavyCycleWitness]:
    """Every heavy cycle, one witness per pair of cut edges.

    The pattern is a cycle C through nodes ``v1`` and ``v2`` carrying
    bridges ``e1`` and ``e2``, plus a further positive-genus piece meeting
    C, i.e. the component of ``G - {e1, e2}`` containing C has genus at
    least two. By default ``v1 v2`` must be an edge of C, as in the
    drawn pattern, and C is a shortest cycle through that edge. With
    ``adjacent=False`` any cycle through both nodes qualifies.
    """
    st = _Structure(g)
    out = []
    bs = st.bridges
    for i, e1 in enumerate(bs):
        for e2 in bs[i + 1:]:
            mid = _middle(st, e1, e2)
            if mid is None:
                continue
            v1, v2, g1, g2, heavy = mid
            if v1 == v2:
                continue
            in_h = _sub_edges(g, heavy)
            h_edges = [g.edges[k] for k in in_h]
            hgenus = betti(heavy, h_edges)
            if hgenus < 2:
                continue
            cycle = _cycle_through_edge(g, in_h, v1, v2) if adjacent else _cycle_through(g, in_h, v1, v2)
            if cycle is None:
                continue
            out.append(HeavyCycleWitness(
                cycle=cycle, v1=v1, v2=v2, e1=e1, e2=e2, g1=g1, g2=g2,
                heavy_component=heavy, heavy_genus=hgenus,
                attachments=_attachments(g, heavy, cycle),
            ))
    return out


def _cycle_through_edge(g: Multigraph, in_h: list[int], v1: int, v2: int):
    h_edges = [g.edges[k] for k in in_h]
    hb = set(in_h[k] for k in bridges(g.n, h_edges))
    for k in in_h:
        if set(g.edges[k]) != {v1, v2} or k in hb:
            continue
        path = _path_in(g, in_h, v2, v1, k)
        if path is not None:
            return [k] + path
    return None


def _cycle_through(g: Multigraph, in_h: list[int], v1: int, v2: int):
    """Edges of a cycle through both nodes, from two internally disjoint
    paths in the twice-subdivided component."""
    h = nx.Graph()
    for k in in_h:
        u, v = g.edges[k]
        if u == v:
            continue
        a, b = ("s", k, 0), ("s", k, 1)
        h.add_edges_from([(u, a), (a, b), (b, v)])
    if v1 not in h or v2 not in h:
        return None
    try:
        paths = list(nx.node_disjoint_paths(h, v1, v2, cutoff=2))
    except nx.NetworkXNoPath:
        return None
    if len(paths) < 2:
        return None
    return sorted({x[1] for p in paths for x in p if isinstance(x, tuple)})


def _path_in(g: Multigraph, allowed: list[int], src: int, dst: int, skip: int):
    allowed = set(allowed)
    # masked edges become loops, which shortest_path ignores; indices survive
    edges = [e if i in allowed else (src, src) for i, e in enumerate(g.edges)]
    return shortest_path(g.n, edges, src, dst, skip_edge=skip)


def detect_sprawling_triangle(g: Multigraph) -> Optional[dict]:
    """Three pairwise adjacent nodes, each carrying a bridge."""
    st = _Structure(g)
    for a in range(g.n):
        for b in g.neighbors(a):
            if b <= a:
                continue
            for c in g.neighbors(a) & g.neighbors(b):
                if c <= b:
                    continue
                spokes = []
                for v in (a, b, c):
                    bv = st.bridge_at(v)
                    if len(bv) != 1:
                        break
                    spokes.append(bv[0])
                else:
                    tri = [i for i, e in enumerate(g.edges)
                           if set(e) in ({a, b}, {b, c}, {a, c}) and e[0] != e[1]]
                    return {"nodes": [a, b, c], "triangle_edges": tri, "cut_edges": spokes}
    return None


def detect_tie_fighter(g: Multigraph) -> Optional[dict]:
    """Two bridged nodes u, v joined by two arcs, each arc running through
    its own positive-genus piece.

    Concretely: bridges at u and v, and removing u and v from the component
    between the two bridges leaves exactly two pieces, each of positive
    genus and each attached to both u and v.
    """
    st = _Structure(g)
    bs = st.bridges
    for i, e1 in enumerate(bs):
        for e2 in bs[i + 1:]:
            mid = _middle(st, e1, e2)
            if mid is None:
                continue
            u, v, _, _, heavy = mid
            if u == v:
                continue
            rest_nodes = [w for w in heavy if w not in (u, v)]
            in_h = [g.edges[k] for k in _sub_edges(g, heavy)]
            inner = [e for e in in_h if u not in e and v not in e]
            wings = components(g.n, inner, rest_nodes)
            if len(wings) != 2:
                continue
            ok = True
            for wing in wings:
                ws = set(wing)
                touches_u = any(w in ws for _, w in g.darts[u])
                touches_v = any(w in ws for _, w in g.darts[v])
                if not (touches_u and touches_v and betti(wing, inner) >= 1):
                    ok = False
            if ok:
                return {"u": u, "v": v, "cut_edges": [e1, e2], "wings": wings}
    return None


def _bounded_face_trouble(g: Multigraph, faces, outer: int) -> bool:
    side = {}
    for f, walk in enumerate(faces):
        for d in walk:
            side[d] = f
    shared: dict[tuple[int, int], int] = {}
    for e in range(g.m):
        f1, f2 = side[2 * e], side[2 * e + 1]
        if f1 == outer or f2 == outer:
            continue
        if f1 == f2:
            return True
        key = (min(f1, f2), max(f1, f2))
        shared[key] = shared.get(key, 0) + 1
        if shared[key] >= 2:
            return True
    return False


def detect_crowded(g: Multigraph, hint=None) -> Optional[dict]:
    """Fires iff every embedding with every outer face is crowded: two
    bounded faces share two or more edges, or a bounded face meets an
    edge from both sides. Returns the count of (embedding, outer face)
    pairs examined as evidence.

    ``hint`` is an optional rotation system (for instance the one a
    triangulation induces); when it is planar and has an uncrowded outer
    face choice the exhaustive search is skipped.
    """
    if not is_planar(g):
        raise NotPlanar("crowdedness is defined for planar graphs")
    if hint is not None:
        faces = faces_of(g, hint)
        if len(faces) == 2 - g.n + g.m:
            for outer in range(len(faces)):
                if not _bounded_face_trouble(g, faces, outer):
                    return None
    checked = 0
    for rot, faces in planar_rotations(g):
        for outer in range(len(faces)):
            checked += 1
            if not _bounded_face_trouble(g, faces, outer):
                return None
    return {"embeddings_checked": checked}


def _is_terminal_chain(g_sub: Multigraph, faces, outer: int, link_edge: int) -> bool:
    """Bounded faces form a path under vertex-sharing adjacency, with the
    face across ``link_edge`` from the outer face at one end."""
    side = {}
    for f, walk in enumerate(faces):
        for d in walk:
            side[d] = f
    f1, f2 = side[2 * link_edge], side[2 * link_edge + 1]
    if outer not in (f1, f2) or f1 == f2:
        return False
    c_face = f2 if f1 == outer else f1
    bounded = [f for f in range(len(faces)) if f != outer]
    verts = {}
    for f in bounded:
        vs = set()
        for d in faces[f]:
            u, v = g_sub.edges[d >> 1]
            vs.add(u if d % 2 == 0 else v)
        verts[f] = vs
    adj = {f: {h for h in bounded if h != f and verts[f] & verts[h]} for f in bounded}
    if len(bounded) == 1:
        return True
    ends = [f for f in bounded if len(adj[f]) == 1]
    if any(len(adj[f]) > 2 for f in bounded) or len(ends) != 2:
        return False
    if c_face not in ends:
        return False
    # connected path check
    seen, stack = {c_face}, [c_face]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(bounded)


def _heavy_embeds_as_terminal_chain(g: Multigraph, w: HeavyCycleWitness) -> bool:
    heavy = sorted(w.heavy_component)
    index = {v: i for i, v in enumerate(heavy)}
    in_h = _sub_edges(g, heavy)
    sub = Multigraph(len(heavy), tuple((index[g.edges[k][0]], index[g.edges[k][1]]) for k in in_h))
    link = in_h.index(w.cycle[0])
    v1, v2 = index[w.v1], index[w.v2]
    for rot, faces in planar_rotations(sub):
        for outer in range(len(faces)):
            outer_nodes = set()
            for d in faces[outer]:
                u, v = sub.edges[d >> 1]
                outer_nodes.add(u if d % 2 == 0 else v)
            if v1 not in outer_nodes or v2 not in outer_nodes:
                continue
            if _is_terminal_chain(sub, faces, outer, link):
                return True
    return False


def detect_heavy_two_loops(g: Multigraph) -> Optional[dict]:
    """Heavy cycle whose two bridges end in lollipops, judged by the genus
    and shape of the heavy component.

    Obstructed when the heavy component has genus >= 4, or genus 3 with no
    embedding in which its bounded faces form a chain (faces adjacent when
    their boundaries meet) ending at the face of C. Returns a witness dict
    with ``obstructed`` set accordingly; None when no such cycle exists.
    """
    found = None
    for w in detect_heavy_cycles(g):
        if len(w.g1) != 1 or len(w.g2) != 1:
            continue
        if g.loops_at(w.g1[0]) != 1 or g.loops_at(w.g2[0]) != 1:
            continue
        if w.heavy_genus >= 4:
            reason = "heavy component genus >= 4"
            obstructed = True
        elif w.heavy_genus == 3:
            obstructed = not _heavy_embeds_as_terminal_chain(g, w)
            reason = "no terminal chain embedding" if obstructed else "terminal chain"
        else:
            obstructed = False
            reason = "heavy component genus <= 2"
        rec = {"witness": asdict(w), "heavy_genus": w.heavy_genus,
               "obstructed": obstructed, "reason": reason}
        if obstructed:
            return rec
        if found is None:
            found = rec
    return found


# ---------------------------------------------------------------------------
# classifier


@dataclass
class ObstructionReport:
    graph: Multigraph
    genus: int
    planar: bool
    flags: dict
    witnesses: dict
    verdict: str

    @property
    def obstructed(self) -> bool:
        return self.verdict == "obstructed"

    def to_json(self) -> dict:
        label = self.verdict
        if not self.obstructed and self.genus <= 5:
            planar_label = "tropically_planar"
        else:
            planar_label = None
        return {
            "hash": canonical_form(self.graph).hash,
            "n": self.graph.n,
            "m": self.graph.m,
            "edges": [list(e) for e in self.graph.edges],
            "genus": self.genus,
            "planar": self.planar,
            "flags": self.flags,
            "witnesses": self.witnesses,
            "verdict": label,
            "characterization": planar_label,
        }


def classify(g: Multigraph, rotation_hint=None) -> ObstructionReport:
    """Run every detector and combine the flags into a verdict.

    The sprawling-triangle flag only counts towards the verdict for genus
    at least five. For genus <= 5 an unobstructed verdict means tropically
    planar; above that it only means no known obstruction applies.
    """
    if not g.is_trivalent():
        raise OutOfScope("classifier expects a trivalent graph")
    genus = graph_genus(g)
    if genus < 3:
        raise OutOfScope(f"classifier needs genus >= 3, got {genus}")
    planar = is_planar(g)
    flags: dict[str, bool] = {}
    wit: dict[str, object] = {}

    node = detect_sprawling_node(g)
    flags["sprawling_node"] = node is not None
    wit["sprawling_node"] = node

    if planar:
        crowd = detect_crowded(g, hint=rotation_hint)
        flags["crowded"] = crowd is not None
        wit["crowded"] = crowd
    else:
        flags["crowded"] = False
        wit["crowded"] = None

    tie = detect_tie_fighter(g)
    flags["tie_fighter"] = tie is not None
    wit["tie_fighter"] = tie

    tri = detect_sprawling_triangle(g)
    flags["sprawling_triangle"] = tri is not None
    wit["sprawling_triangle"] = tri

    h2l = detect_heavy_two_loops(g) if planar else None
    flags["heavy_two_loops"] = bool(h2l and h2l["obstructed"])
    wit["heavy_two_loops"] = h2l

    counted = [
        not planar,
        flags["sprawling_node"],
        flags["crowded"],
        flags["tie_fighter"],
        flags["sprawling_triangle"] and genus >= 5,
        flags["heavy_two_loops"],
    ]
    verdict = "obstructed" if any(counted) else "not_obstructed_by_known_criteria"
    return ObstructionReport(g, genus, planar, flags, wit, verdict)
