"""Skeleton of a dual graph: prune leaves, then smooth degree-2 nodes.

Each skeleton edge remembers the dual-graph edge path it came from, so
geometric questions about a skeleton edge can be pushed back to the
triangles along that path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotACutEdge, NotACycle
from .graphs import Multigraph, components, cut_edges, graph_genus
from .lattice_geom import LatticePoint, Split
from .subdivision import DualGraph, Triangulation

__all__ = [
    "ContractionMap",
    "skeletonize",
    "graph_genus",
    "cut_edge_split_witness",
    "cycle_dual_interior_point",
    "skeleton_of",
    "geometric_rotation",
]


@dataclass(frozen=True)
class ContractionMap:
    """The map from surviving dual edges onto skeleton edges.

    ``paths[k]`` is the ordered dual-edge path of skeleton edge ``k``, read
    from ``skeleton.edges[k][0]`` to ``skeleton.edges[k][1]``;
    ``node_paths[k]`` lists the dual nodes visited on the way. Pruned dual
    edges are in ``redundant``. ``degenerate`` is ``"empty"`` (tree),
    ``"cycle"`` (one cycle, drawn as a node with a loop) or None.
    """

    gamma: DualGraph
    skeleton: Multigraph
    paths: tuple[tuple[int, ...], ...]
    node_paths: tuple[tuple[int, ...], ...]
    node_of: tuple[int, ...]
    redundant: frozenset
    degenerate: Optional[str]

    def __call__(self, dual_edge: int) -> int:
        return self.image[dual_edge]

    @property
    def image(self) -> dict[int, int]:
        return {d: k for k, p in enumerate(self.paths) for d in p}

    def preimage(self, skeleton_edge: int) -> tuple[int, ...]:
        return self.paths[skeleton_edge]


def skeletonize(gamma: DualGraph, seed: Optional[int] = None) -> tuple[Multigraph, ContractionMap]:
    """Skeleton and contraction map of ``gamma``.

    Leaves and degree-2 nodes are processed in ascending order, or in a
    shuffled order when ``seed`` is given; the result does not depend on it
    up to isomorphism.
    """
    g = gamma.graph
    rng = random.Random(seed) if seed is not None else None
    # edge id -> [u, v, dual edge path from u to v, dual node path from u to v]
    live: dict[int, list] = {i: [u, v, [i], [u, v]] for i, (u, v) in enumerate(g.edges)}
    inc: dict[int, list[int]] = {x: [] for x in range(g.n)}
    for i, (u, v) in enumerate(g.edges):
        inc[u].append(i)
        inc[v].append(i)
    redundant = set()

    def order(nodes):
        nodes = sorted(nodes)
        if rng is not None:
            rng.shuffle(nodes)
        return nodes

    # prune leaves until none remain
    leaves = [x for x in order(inc) if len(inc[x]) == 1]
    while leaves:
        x = leaves.pop(0) if rng is None else leaves.pop(rng.randrange(len(leaves)))
        if len(inc[x]) != 1:
            continue
        e = inc[x][0]
        u, v = live[e][0], live[e][1]
        other = v if u == x else u
        redundant.update(live.pop(e)[2])
        inc[x].remove(e)
        inc[other].remove(e)
        del inc[x]
        if len(inc[other]) == 1:
            leaves.append(other)
    for x in [x for x, es in inc.items() if not es]:
        del inc[x]

    if not live:
        sk = Multigraph(0, ())
        return sk, ContractionMap(gamma, sk, (), (), (), frozenset(redundant), "empty")

    # smooth degree-2 nodes
    for x in order(inc):
        es = inc[x]
        if len(es) != 2 or es[0] == es[1]:
            continue
        a_edge, b_edge = es
        a = _oriented(live[a_edge], x, toward=True)
        b = _oriented(live[b_edge], x, toward=False)
        new_id = max(live) + 1
        live[new_id] = [a[0], b[1], a[2] + b[2], a[3] + b[3][1:]]
        del live[a_edge], live[b_edge]
        for end in (a[0], b[1]):
            for old in (a_edge, b_edge):
                if old in inc[end]:
                    inc[end].remove(old)
        inc[a[0]].append(new_id)
        inc[b[1]].append(new_id)
        del inc[x]

    nodes = sorted(inc)
    label = {x: i for i, x in enumerate(nodes)}
    rows = []
    for u, v, path, npath in live.values():
        # orient so that the smaller skeleton label comes first; loops from the smaller end dart
        if label[u] > label[v] or (u == v and path[0] > path[-1]):
            u, v, path, npath = v, u, path[::-1], npath[::-1]
        rows.append((label[u], label[v], tuple(path), tuple(npath)))
    rows.sort()
    sk = Multigraph(len(nodes), tuple((u, v) for u, v, _, _ in rows))
    degenerate = "cycle" if len(nodes) == 1 and sk.m == 1 else None
    eta = ContractionMap(
        gamma, sk,
        tuple(r[2] for r in rows), tuple(r[3] for r in rows),
        tuple(nodes), frozenset(redundant), degenerate,
    )
    return sk, eta


def _oriented(rec, x, toward: bool):
    u, v, path, npath = rec
    ends_at_x = v == x
    if toward == ends_at_x:
        return u, v, list(path), list(npath)
    return v, u, path[::-1], npath[::-1]


# ---------------------------------------------------------------------------
# geometric witnesses


def cut_edge_split_witness(t: Triangulation, skeleton_edge: int, eta: ContractionMap) -> Split:
    """Primal split edge dual to a cut edge on the path of ``skeleton_edge``.

    Every dual edge on that path is a cut edge of the dual graph; the first
    in dual-edge order is returned.
    """
    if skeleton_edge not in set(cut_edges(eta.skeleton)):
        raise NotACutEdge(f"skeleton edge {skeleton_edge} is not a cut edge")
    dual_bridges = set(cut_edges(eta.gamma.graph))
    for d in sorted(eta.paths[skeleton_edge]):
        if d in dual_bridges:
            i, j = eta.gamma.labels[d]
            return Split.from_endpoints(t.config, i, j)
    raise NotACutEdge("no dual cut edge on the preimage path")


def _check_cycle(g: Multigraph, cycle: Sequence[int]) -> None:
    if not cycle or len(set(cycle)) != len(cycle):
        raise NotACycle("cycle must be a nonempty list of distinct edges")
    deg: dict[int, int] = {}
    for k in cycle:
        if not 0 <= k < g.m:
            raise NotACycle(f"edge {k} out of range")
        u, v = g.edges[k]
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        raise NotACycle("every node of a cycle has degree 2 in it")
    if len(components(g.n, [g.edges[k] for k in cycle], deg)) != 1:
        raise NotACycle("edges do not form a single cycle")


def cycle_dual_interior_point(t: Triangulation, cycle: Sequence[int], eta: ContractionMap) -> LatticePoint:
    """Interior lattice point shared by every triangle along the cycle."""
    _check_cycle(eta.skeleton, cycle)
    shared = None
    for k in cycle:
        for node in eta.node_paths[k]:
            verts = set(t.triangles[node])
            shared = verts if shared is None else shared & verts
    inner = [i for i in sorted(shared or ()) if t.config.is_interior(i)]
    if len(inner) != 1:
        raise NotACycle("cycle does not bound a single region of the skeleton")
    return t.config.points[inner[0]]


def skeleton_of(t: Triangulation, seed: Optional[int] = None) -> tuple[Multigraph, ContractionMap]:
    from .subdivision import dual_graph
    return skeletonize(dual_graph(t), seed=seed)


def geometric_rotation(t: Triangulation, eta: ContractionMap) -> tuple[tuple[int, ...], ...]:
    """Rotation system of the skeleton inherited from the plane.

    At node ``s`` (a triangle) each dart leaves through one of the
    triangle's edges; darts are sorted counter-clockwise by the direction
    from the triangle's centroid to that edge's midpoint. Dart ``2k`` sits
    at ``edges[k][0]`` and ``2k + 1`` at ``edges[k][1]``.
    """
    import math

    pts = t.config.points
    sk = eta.skeleton
    darts: list[list[tuple[float, int]]] = [[] for _ in range(sk.n)]
    for k, (u, v) in enumerate(sk.edges):
        for dart, node, dual_edge in ((2 * k, u, eta.paths[k][0]), (2 * k + 1, v, eta.paths[k][-1])):
            tri = t.triangles[eta.node_of[node]]
            i, j = eta.gamma.labels[dual_edge]
            # 6 * (midpoint - centroid), kept integral
            dx = 3 * (pts[i][0] + pts[j][0]) - 2 * sum(pts[a][0] for a in tri)
            dy = 3 * (pts[i][1] + pts[j][1]) - 2 * sum(pts[a][1] for a in tri)
            darts[node].append((math.atan2(dy, dx), dart))
    return tuple(tuple(d for _, d in sorted(ds)) for ds in darts)
