"""Multigraphs with loops and parallel edges, plus the structural queries
every other module leans on (connectivity, bridges, Betti numbers)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NotConnected, ParseError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on nodes ``0..n-1``.

    Edges are kept in the order given (edge indices are meaningful for
    witnesses), each stored as ``(min, max)``. A loop ``(v, v)`` adds 2 to
    the degree of ``v``.
    """

    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        norm = tuple(_norm(int(u), int(v)) for u, v in self.edges)
        for u, v in norm:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.n} nodes")
        object.__setattr__(self, "edges", norm)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def darts(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per node, the incident ``(edge_index, other_end)`` pairs; loops twice."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append((i, v))
            inc[v].append((i, u))
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.darts[v])

    def degrees(self) -> list[int]:
        return [len(d) for d in self.darts]

    def is_trivalent(self) -> bool:
        return all(len(d) == 3 for d in self.darts)

    def loops_at(self, v: int) -> int:
        return sum(1 for u, w in self.edges if u == w == v)

    def multiplicity(self, u: int, v: int) -> int:
        e = _norm(u, v)
        return sum(1 for f in self.edges if f == e)

    def neighbors(self, v: int) -> set[int]:
        return {w for _, w in self.darts[v]}

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Graph with node ``v`` renamed to ``perm[v]``."""
        return Multigraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def sorted(self) -> "Multigraph":
        return Multigraph(self.n, tuple(sorted(self.edges)))

    def to_text(self) -> str:
        lines = [f"graph {self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Multigraph":
        rows = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
        rows = [(i, ln) for i, ln in rows if ln and not ln.startswith("#")]
        if not rows:
            raise ParseError("empty graph file", line=1)
        lineno, head = rows[0]
        parts = head.split()
        if len(parts) != 3 or parts[0] != "graph":
            raise ParseError("expected header 'graph n m'", line=lineno)
        try:
            n, m = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError("node and edge counts must be integers", line=lineno) from None
        if n < 0 or m < 0:
            raise ParseError("negative count", line=lineno)
        body = rows[1:]
        if len(body) != m:
            where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else lineno + 1)
            raise ParseError(f"expected {m} edge lines, found {len(body)}", line=where)
        edges = []
        for lineno, ln in body:
            parts = ln.split()
            if len(parts) != 2:
                raise ParseError("edge line must be 'u v'", line=lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("node ids must be integers", line=lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"node id out of range 0..{n - 1}", line=lineno)
            edges.append((u, v))
        return cls(n, tuple(edges))


def components(n: int, edges: Iterable[Edge], nodes: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of the graph on ``nodes`` (default all) using ``edges``."""
    keep = set(range(n)) if nodes is None else set(nodes)
    adj: dict[int, list[int]] = {v: [] for v in keep}
    for u, v in edges:
        if u in keep and v in keep:
            adj[u].append(v)
            adj[v].append(u)
    seen: set[int] = set()
    out = []
    for s in sorted(keep):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Multigraph) -> bool:
    return g.n > 0 and len(components(g.n, g.edges)) == 1


def betti(nodes: Iterable[int], edges: Sequence[Edge]) -> int:
    """First Betti number ``m - n + c`` of the subgraph spanned by ``nodes``."""
    nodes = set(nodes)
    sub = [e for e in edges if e[0] in nodes and e[1] in nodes]
    if not nodes:
        return 0
    return len(sub) - len(nodes) + len(components(0, sub, nodes))


def graph_genus(g: Multigraph) -> int:
    """``m - n + 1`` for a connected multigraph."""
    if not is_connected(g):
        raise NotConnected("graph genus needs a connected graph")
    return g.m - g.n + 1


def bridges(n: int, edges: Sequence[Edge]) -> list[int]:
    """Indices of bridge edges (iterative Tarjan lowpoint, parallel-edge safe)."""
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        if u == v:
            continue
        inc[u].append((i, v))
        inc[v].append((i, u))
    order = [-1] * n
    low = [0] * n
    out = []
    counter = 0
    for root in range(n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(inc[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for eid, w in it:
                if eid == via:
                    continue
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, iter(inc[w])))
                    advanced = True
                    break
                low[v] = min(low[v], order[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > order[parent]:
                    out.append(via)
    return sorted(out)


def cut_edges(g: Multigraph) -> list[int]:
    """Bridge edge indices of ``g``; every other edge lies on a cycle."""
    return bridges(g.n, g.edges)


def without_edges(g: Multigraph, drop: Iterable[int]) -> list[Edge]:
    drop = set(drop)
    return [e for i, e in enumerate(g.edges) if i not in drop]


def shortest_path(n: int, edges: Sequence[Edge], src: int, dst: int,
                  skip_edge: int | None = None) -> list[int] | None:
    """Edge indices of a BFS-shortest path from ``src`` to ``dst``."""
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        if i == skip_edge or u == v:
            continue
        inc[u].append((i, v))
        inc[v].append((i, u))
    prev: dict[int, tuple[int, int]] = {src: (-1, -1)}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for eid, y in inc[x]:
            if y not in prev:
                prev[y] = (x, eid)
                queue.append(y)
    if dst not in prev:
        return None
    path = []
    x = dst
    while x != src:
        x, eid = prev[x]
        path.append(eid)
    return path[::-1]
