"""Simple undirected graphs, with and without a combinatorial planar embedding.

Two representations are used throughout the package:

* ``Graph`` -- plain adjacency, used for squares, verification instances and
  anything else that does not need faces.
* ``EmbeddedGraph`` -- adjacency plus a rotation system (a cyclic order of
  neighbors around every vertex), from which faces are traced.

Both are immutable; mutating operations return new graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx

INF = float("inf")


class GraphError(ValueError):
    pass


def _check_simple(n, adj):
    for v, nbrs in enumerate(adj):
        if v in nbrs:
            raise GraphError(f"self-loop at vertex {v}")
        if len(set(nbrs)) != len(nbrs):
            raise GraphError(f"multi-edge at vertex {v}")
        for u in nbrs:
            if not 0 <= u < n:
                raise GraphError(f"vertex {u} out of range")
            if v not in adj[u]:
                raise GraphError(f"asymmetric adjacency {v}->{u}")


class Graph:
    """Simple undirected graph on vertices 0..n-1, no embedding."""

    __slots__ = ("n", "adj")

    def __init__(self, n, edges=()):
        adj = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        _check_simple(n, self.adj)

    @property
    def m(self):
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v):
        return len(self.adj[v])

    def neighbors(self, v):
        return self.adj[v]

    def has_edge(self, u, v):
        return v in self.adj[u]

    def edges(self):
        """Edges as sorted (u, v) pairs with u < v, lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def add_edge(self, u, v):
        if u == v:
            raise GraphError("self-loop rejected")
        if self.has_edge(u, v):
            raise GraphError(f"duplicate edge {{{u},{v}}}")
        return Graph(self.n, self.edges() + [(u, v)])

    def induced_subgraph(self, vertices):
        """Subgraph induced on `vertices`, renumbered in sorted order.

        Returns (subgraph, vmap) where vmap maps old vertex ids to new ones.
        """
        vs = sorted(set(vertices))
        if vs and not (0 <= vs[0] and vs[-1] < self.n):
            raise GraphError("vertex out of range")
        vmap = {v: i for i, v in enumerate(vs)}
        edges = [(vmap[u], vmap[v]) for u, v in self.edges()
                 if u in vmap and v in vmap]
        return Graph(len(vs), edges), vmap

    def distances_from(self, source):
        """BFS hop counts from `source`; INF for unreachable vertices."""
        dist = [INF] * self.n
        dist[source] = 0
        q = deque([source])
        while q:
            v = q.popleft()
            for u in self.adj[v]:
                if dist[u] is INF:
                    dist[u] = dist[v] + 1
                    q.append(u)
        return dist

    def is_connected(self):
        if self.n == 0:
            return True
        return INF not in self.distances_from(0)

    def __eq__(self, other):
        return isinstance(other, (Graph, EmbeddedGraph)) and \
            self.n == other.n and self.edges() == other.edges()

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Face:
    """A face of an embedded graph, as the closed walk of its boundary."""

    boundary: tuple

    @property
    def length(self):
        return len(self.boundary)

    def vertex_set(self):
        return frozenset(self.boundary)

    def is_cycle(self):
        return len(set(self.boundary)) == len(self.boundary)


class EmbeddedGraph(Graph):
    """Graph with a rotation system: neighbors listed in cyclic order."""

    __slots__ = ("rot",)

    def __init__(self, rotations):
        rot = tuple(tuple(r) for r in rotations)
        self.rot = rot
        self.n = len(rot)
        self.adj = tuple(tuple(sorted(r)) for r in rot)
        _check_simple(self.n, self.rot)

    @classmethod
    def from_edges(cls, n, edges):
        """Embedding with an arbitrary (sorted) rotation at each vertex."""
        g = Graph(n, edges)
        return cls(g.adj)

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def add_edge(self, u, v):
        """Append v (resp. u) at the end of each rotation."""
        if u == v:
            raise GraphError("self-loop rejected")
        if self.has_edge(u, v):
            raise GraphError(f"duplicate edge {{{u},{v}}}")
        rot = [list(r) for r in self.rot]
        rot[u].append(v)
        rot[v].append(u)
        return EmbeddedGraph(rot)

    def induced_subgraph(self, vertices):
        """Induced subgraph keeping the relative rotation order."""
        vs = sorted(set(vertices))
        keep = set(vs)
        vmap = {v: i for i, v in enumerate(vs)}
        rot = [[vmap[u] for u in self.rot[v] if u in keep] for v in vs]
        return EmbeddedGraph(rot), vmap

    def faces(self):
        """All faces traced by the next-edge rule on the rotation system.

        Every directed edge lies on exactly one face walk.  Raises on
        disconnected input, and asserts the Euler identity n - m + f = 2,
        so a rotation system of positive genus is rejected.
        """
        if not self.is_connected():
            raise GraphError("faces() requires a connected graph")
        pos = [{u: i for i, u in enumerate(r)} for r in self.rot]
        seen = set()
        faces = []
        for v0 in range(self.n):
            for u0 in self.rot[v0]:
                if (v0, u0) in seen:
                    continue
                walk = []
                v, u = v0, u0
                while (v, u) not in seen:
                    seen.add((v, u))
                    walk.append(v)
                    # next edge counterclockwise: predecessor of v in u's
                    # rotation, which traces each bounded face once
                    r = self.rot[u]
                    v, u = u, r[(pos[u][v] - 1) % len(r)]
                faces.append(Face(tuple(walk)))
        f = len(faces)
        if self.n - self.m + f != 2:
            raise GraphError(
                f"embedding is not planar: n-m+f = {self.n - self.m + f}")
        return faces

    def to_graph(self):
        return Graph(self.n, self.edges())


def square(g):
    """Square of `g`: same vertices, edges between vertices at distance 1 or 2.

    The result carries no embedding.
    """
    edges = []
    for v in range(g.n):
        ball = set(g.adj[v])
        for u in g.adj[v]:
            ball.update(g.adj[u])
        ball.discard(v)
        edges.extend((v, u) for u in ball if v < u)
    return Graph(g.n, edges)


def face_distance(g, f1, f2):
    """Minimum hop count between a vertex of `f1` and a vertex of `f2`."""
    s1, s2 = f1.vertex_set(), f2.vertex_set()
    if s1 & s2:
        return 0
    best = INF
    for v in s1:
        dist = g.distances_from(v)
        best = min(best, min(dist[u] for u in s2))
    return best


def is_cubic(g):
    return all(g.degree(v) == 3 for v in range(g.n))


def is_subcubic(g):
    return all(g.degree(v) <= 3 for v in range(g.n))


def is_3_edge_connected(g):
    if g.n < 2:
        return False
    return edge_connectivity(g) >= 3


def edge_connectivity(g):
    """Exact edge connectivity (minimum edge cut size)."""
    if not g.is_connected():
        return 0
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return nx.edge_connectivity(h)


def is_planar(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return nx.check_planarity(h, counterexample=False)[0]


# ---------------------------------------------------------------------------
# Text format
#
# Line 1: vertex count n.  Each subsequent non-empty line is "u v" with
# 0 <= u < v < n, sorted lexicographically; '#' starts a comment line.  An
# optional section starting with the line "rotations" lists one line per
# vertex: "v: a b c" giving the cyclic neighbor order.
# ---------------------------------------------------------------------------

def parse_graph_text(text):
    """Parse the text format; returns EmbeddedGraph if rotations are given."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty graph file")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphError(f"bad vertex count line: {lines[0]!r}")
    edges = []
    i = 1
    while i < len(lines) and lines[i] != "rotations":
        parts = lines[i].split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line: {lines[i]!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < v < n):
            raise GraphError(f"edge {u} {v} violates 0 <= u < v < n")
        edges.append((u, v))
        i += 1
    if edges != sorted(edges):
        raise GraphError("edge lines must be sorted lexicographically")
    if i == len(lines):
        return Graph(n, edges)
    rot = [None] * n
    for ln in lines[i + 1:]:
        head, _, rest = ln.partition(":")
        v = int(head)
        rot[v] = [int(x) for x in rest.split()]
    if any(r is None for r in rot):
        raise GraphError("rotations section must list every vertex")
    g = EmbeddedGraph(rot)
    if g.edges() != edges:
        raise GraphError("rotations disagree with edge list")
    return g


def format_graph_text(g, comment=None):
    out = []
    if comment:
        out.append(f"# {comment}")
    out.append(str(g.n))
    out.extend(f"{u} {v}" for u, v in g.edges())
    if isinstance(g, EmbeddedGraph):
        out.append("rotations")
        out.extend(f"{v}: " + " ".join(map(str, g.rot[v]))
                   for v in range(g.n))
    return "\n".join(out) + "\n"
