"""Shared test helpers: independent oracles and graph generators.

Everything here is deliberately written from first principles (BFS, direct
enumeration, textbook recurrences) so the package code is checked against
logic that shares nothing with it.
"""

import random
from collections import deque

import networkx as nx

from subcubic7.graphs import EmbeddedGraph, Graph


def square_oracle(g):
    """Distance-<=2 adjacency by plain BFS, independent of square()."""
    pairs = set()
    for s in range(g.n):
        dist = {s: 0}
        q = deque([s])
        while q:
            v = q.popleft()
            if dist[v] == 2:
                continue
            for u in g.adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    q.append(u)
        for v, d in dist.items():
            if v != s and d <= 2:
                pairs.add((min(s, v), max(s, v)))
    return sorted(pairs)


def random_subcubic(rng, n, p=0.5):
    """Random graph with maximum degree 3: sample edges, keep degree caps."""
    deg = [0] * n
    edges = []
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(candidates)
    for u, v in candidates:
        if deg[u] < 3 and deg[v] < 3 and rng.random() < p:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def set_partition_count(t, kmax):
    """Number of partitions of a t-set into at most kmax blocks.

    Restricted-growth-string recursion; shares nothing with the engine's
    canonical enumeration.
    """
    def rec(i, blocks):
        if i == t:
            return 1
        total = blocks * rec(i + 1, blocks)
        if blocks < kmax:
            total += rec(i + 1, blocks + 1)
        return total

    return rec(0, 0)


def embed(n, edges):
    """EmbeddedGraph from a planar graph via networkx's embedding."""
    gx = nx.Graph()
    gx.add_nodes_from(range(n))
    gx.add_edges_from(edges)
    ok, emb = nx.check_planarity(gx)
    assert ok, "graph is not planar"
    data = emb.get_data()
    return EmbeddedGraph([data[v] for v in range(n)])


def apollonian_triangulation(rng, inserts):
    """Random stacked triangulation: start at K4, split random faces."""
    edges = {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}
    faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    n = 4
    for _ in range(inserts):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        w = n
        n += 1
        for x in (a, b, c):
            edges.add((min(x, w), max(x, w)))
        faces.extend([(a, b, w), (a, c, w), (b, c, w)])
    return n, sorted(edges)


def dual_graph(emb):
    """Dual of an embedded graph, with the inherited rotation system."""
    faces = emb.faces()
    side = {}  # directed boundary edge -> face index
    for i, f in enumerate(faces):
        b = f.boundary
        for j in range(len(b)):
            side[(b[j], b[(j + 1) % len(b)])] = i
    rotations = []
    for f in faces:
        b = f.boundary
        rotations.append([side[(b[(j + 1) % len(b)], b[j])]
                          for j in range(len(b))])
    return EmbeddedGraph(rotations)


def random_cubic_planar(seed, inserts=None):
    """Random cubic planar graph: the dual of a random triangulation."""
    rng = random.Random(seed)
    if inserts is None:
        inserts = rng.randint(0, 12)
    n, edges = apollonian_triangulation(rng, inserts)
    return dual_graph(embed(n, edges))


# Named cubic planar graphs used as fixed points in charge tests.
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

CUBE_EDGES = [(0, 1), (0, 3), (0, 4), (1, 2), (1, 5), (2, 3), (2, 6),
              (3, 7), (4, 5), (4, 7), (5, 6), (6, 7)]

# pentagonal faces; standard adjacency list of the dodecahedral graph
DODECAHEDRON_EDGES = [
    (0, 1), (0, 4), (0, 5), (1, 2), (1, 6), (2, 3), (2, 7), (3, 4), (3, 8),
    (4, 9), (5, 10), (5, 14), (6, 10), (6, 11), (7, 11), (7, 12), (8, 12),
    (8, 13), (9, 13), (9, 14), (10, 15), (11, 16), (12, 17), (13, 18),
    (14, 19), (15, 16), (15, 19), (16, 17), (17, 18), (18, 19),
]


def find_sharp_graphs(n=7):
    """Exhaustive search: subcubic planar graphs on n vertices whose square
    is complete.  Returns the edge sets found (as sorted tuples)."""
    from subcubic7.graphs import Graph, is_planar, square

    all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    full = [(1 << n) - 1 - (1 << v) for v in range(n)]
    found = []

    def ball_ok(adjbits):
        # square == K_n iff every closed 2-ball covers all vertices
        for v in range(n):
            ball = adjbits[v] | (1 << v)
            nb = adjbits[v]
            while nb:
                low = nb & -nb
                ball |= adjbits[low.bit_length() - 1]
                nb ^= low
            if ball != (1 << n) - 1:
                return False
        return True

    def rec(i, deg, chosen, adjbits):
        # prune: a vertex with all its remaining potential edges decided
        # and degree 0 can never reach the others
        if i == len(all_edges):
            if all(d >= 2 for d in deg) and ball_ok(adjbits):
                g = Graph(n, chosen)
                if sorted(square(g).edges()) == square_oracle(g) and \
                        len(square(g).edges()) == n * (n - 1) // 2 and \
                        is_planar(g):
                    found.append(tuple(chosen))
            return
        u, v = all_edges[i]
        rec(i + 1, deg, chosen, adjbits)
        if deg[u] < 3 and deg[v] < 3:
            deg[u] += 1
            deg[v] += 1
            adjbits[u] |= 1 << v
            adjbits[v] |= 1 << u
            rec(i + 1, deg, chosen + [(u, v)], adjbits)
            adjbits[u] ^= 1 << v
            adjbits[v] ^= 1 << u
            deg[u] -= 1
            deg[v] -= 1

    rec(0, [0] * n, [], [0] * n)
    return found
