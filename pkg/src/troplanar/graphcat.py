"""Catalogue of connected trivalent multigraphs.

Generation works genus by genus: every connected trivalent multigraph of
genus ``g >= 3`` reduces to one of genus ``g - 1`` by deleting a non-loop
non-bridge edge and smoothing its endpoints, or by deleting a pendant loop
together with its stem. Running the two inverse moves over a complete list
of genus ``g - 1`` representatives therefore reaches every class, and
canonical forms reject the isomorphic duplicates.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import networkx as nx

from .errors import NotPlanar, OutOfRange
from .graphs import Edge, Multigraph, cut_edges, is_connected

__all__ = [
    "CanonicalForm",
    "PlanarEmbedding",
    "canonical_form",
    "cut_edges",
    "enumerate_embeddings",
    "enumerate_trivalent",
    "is_isomorphic",
    "is_planar",
    "rotation_systems",
    "faces_of",
    "census_line",
]

GENUS_RANGE = (2, 7)


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    edges: tuple[Edge, ...]

    @property
    def hash(self) -> str:
        body = f"{self.n}:" + ";".join(f"{u},{v}" for u, v in self.edges)
        return hashlib.sha1(body.encode()).hexdigest()[:16]

    def graph(self) -> Multigraph:
        return Multigraph(self.n, self.edges)


def _adjacency(g: Multigraph) -> list[list[int]]:
    a = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        if u == v:
            a[u][u] += 1
        else:
            a[u][v] += 1
            a[v][u] += 1
    return a


def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    n = len(adj)
    while True:
        sigs = []
        for v in range(n):
            nb = sorted((colors[w], adj[v][w]) for w in range(n) if w != v and adj[v][w])
            sigs.append((colors[v], adj[v][v], tuple(nb)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _leaf_code(adj: list[list[int]], colors: list[int]) -> tuple:
    # colors are a discrete partition: colors[v] is the new label of v
    n = len(adj)
    inv = [0] * n
    for v, c in enumerate(colors):
        inv[c] = v
    return tuple(adj[inv[i]][inv[j]] for i in range(n) for j in range(i, n)), tuple(colors)


def _search(adj, colors, best):
    colors = _refine(adj, colors)
    n = len(adj)
    k = len(set(colors))
    if k == n:
        code = _leaf_code(adj, colors)
        if best[0] is None or code[0] < best[0][0]:
            best[0] = code
        return
    # first smallest non-singleton cell; the choice uses invariant data only
    sizes: dict[int, int] = {}
    for c in colors:
        sizes[c] = sizes.get(c, 0) + 1
    target = min((s, c) for c, s in sizes.items() if s > 1)[1]
    for v in range(n):
        if colors[v] != target:
            continue
        # individualise v: it keeps rank `target`, the rest of its cell moves up
        nc = [2 * c + (1 if (c == target and w != v) else 0) for w, c in enumerate(colors)]
        _search(adj, nc, best)


def canonical_form(g: Multigraph) -> CanonicalForm:
    """Edge multiset of ``g`` under a canonical relabeling.

    Individualisation-refinement: colour refinement, then branch on every
    vertex of the first smallest non-trivial cell, keeping the smallest
    adjacency code over all leaves.
    """
    if g.n == 0:
        return CanonicalForm(0, ())
    adj = _adjacency(g)
    best = [None]
    _search(adj, [0] * g.n, best)
    perm = best[0][1]
    relabeled = sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges)
    return CanonicalForm(g.n, tuple(relabeled))


def is_isomorphic(a: Multigraph, b: Multigraph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# census


def _subdivide(edges: list[Edge], idx: int, new: int) -> list[Edge]:
    u, v = edges[idx]
    out = edges[:idx] + edges[idx + 1:]
    out += [(u, new), (new, v)]
    return out


def _augmentations(g: Multigraph) -> Iterator[Multigraph]:
    n, edges = g.n, list(g.edges)
    a, b = n, n + 1
    # join two subdivision points by a new edge
    for i, j in itertools.combinations_with_replacement(range(len(edges)), 2):
        if i == j:
            u, v = edges[i]
            rest = edges[:i] + edges[i + 1:]
            yield Multigraph(n + 2, tuple(rest + [(u, a), (a, b), (b, v), (a, b)]))
        else:
            e1 = _subdivide(edges, j, b)
            e1 = _subdivide(e1, i, a)
            yield Multigraph(n + 2, tuple(e1 + [(a, b)]))
    # hang a pendant loop from a subdivision point
    for i in range(len(edges)):
        e1 = _subdivide(edges, i, a)
        yield Multigraph(n + 2, tuple(e1 + [(a, b), (b, b)]))


def _genus2() -> list[Multigraph]:
    return [
        Multigraph(2, ((0, 1), (0, 1), (0, 1))),  # theta
        Multigraph(2, ((0, 0), (0, 1), (1, 1))),  # dumbbell
    ]


@lru_cache(maxsize=None)
def _census(genus: int) -> tuple[CanonicalForm, ...]:
    if genus == 2:
        return tuple(sorted(canonical_form(g) for g in _genus2()))
    seen: set[CanonicalForm] = set()
    for cf in _census(genus - 1):
        for h in _augmentations(cf.graph()):
            seen.add(canonical_form(h))
    return tuple(sorted(seen))


def enumerate_trivalent(genus: int) -> list[Multigraph]:
    """One representative per isomorphism class of connected trivalent
    multigraphs of the given genus, in canonical order."""
    lo, hi = GENUS_RANGE
    if not lo <= genus <= hi:
        raise OutOfRange(f"genus must lie in [{lo}, {hi}], got {genus}")
    return [cf.graph() for cf in _census(genus)]


def census_line(g: Multigraph) -> str:
    """One census row: ``"n m: u v; u v; ... #hash"`` in canonical labels."""
    cf = canonical_form(g)
    body = "; ".join(f"{u} {v}" for u, v in cf.edges)
    return f"{cf.n} {len(cf.edges)}: {body} #{cf.hash}"


# ---------------------------------------------------------------------------
# planarity and embeddings


def _simple_subdivision(g: Multigraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for i, (u, v) in enumerate(g.edges):
        # two subdivision nodes per edge turn loops and parallels into paths
        p, q = ("s", i, 0), ("s", i, 1)
        h.add_edges_from([(u, p), (p, q), (q, v)])
    return h


def is_planar(g: Multigraph) -> bool:
    planar, _ = nx.check_planarity(_simple_subdivision(g))
    return planar


@dataclass(frozen=True)
class PlanarEmbedding:
    """Rotation system plus face walks and a chosen outer face.

    ``rotation[v]`` lists the darts at ``v`` in counter-clockwise order,
    where dart ``2*e`` sits at ``edges[e][0]`` and ``2*e + 1`` at
    ``edges[e][1]``. ``faces[f]`` is the dart walk of face ``f``.
    """

    graph: Multigraph
    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[int, ...], ...]
    outer: int

    @property
    def bounded_faces(self) -> list[int]:
        return [f for f in range(len(self.faces)) if f != self.outer]

    def face_edges(self, f: int) -> list[int]:
        return [d >> 1 for d in self.faces[f]]

    def euler_ok(self) -> bool:
        return self.graph.n - self.graph.m + len(self.faces) == 2


def _dart_nodes(g: Multigraph) -> list[list[int]]:
    at: list[list[int]] = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        at[u].append(2 * e)
        at[v].append(2 * e + 1)
    return at


def _cyclic_orders(darts: list[int]) -> list[tuple[int, ...]]:
    if len(darts) <= 2:
        return [tuple(darts)]
    first, rest = darts[0], darts[1:]
    return [(first,) + p for p in itertools.permutations(rest)]


def rotation_systems(g: Multigraph, mod_reflection: bool = False) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All rotation systems of ``g``.

    With ``mod_reflection`` one system of each mirror pair is produced (the
    one whose reversal is not smaller).
    """
    at = _dart_nodes(g)
    choices = [_cyclic_orders(d) for d in at]
    for rot in itertools.product(*choices):
        if mod_reflection:
            mirror = tuple(_normal_cycle(tuple(reversed(r))) for r in rot)
            if mirror < tuple(rot):
                continue
        yield tuple(rot)


def _normal_cycle(c: tuple[int, ...]) -> tuple[int, ...]:
    if not c:
        return c
    i = c.index(min(c))
    return c[i:] + c[:i]


def faces_of(g: Multigraph, rotation: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Face walks (dart sequences) of the given rotation system."""
    succ: dict[int, int] = {}
    for r in rotation:
        for i, d in enumerate(r):
            succ[d] = r[(i + 1) % len(r)]
    seen: set[int] = set()
    faces = []
    for start in range(2 * g.m):
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            # leave along d, arrive at the twin, turn to the next dart there
            d = succ[d ^ 1]
        faces.append(tuple(walk))
    return faces


def planar_rotations(g: Multigraph, mod_reflection: bool = True) -> Iterator[tuple[tuple, list]]:
    target = 2 - g.n + g.m
    for rot in rotation_systems(g, mod_reflection=mod_reflection):
        faces = faces_of(g, rot)
        if len(faces) == target:
            yield rot, faces


def enumerate_embeddings(g: Multigraph) -> list[PlanarEmbedding]:
    """Every sphere embedding (mirror pairs identified), once per outer face."""
    if not is_connected(g):
        raise NotPlanar("embedding enumeration needs a connected graph")
    if not is_planar(g):
        raise NotPlanar("graph is not planar")
    out = []
    for rot, faces in planar_rotations(g):
        faces = tuple(faces)
        for f in range(len(faces)):
            out.append(PlanarEmbedding(g, rot, faces, f))
    return out
