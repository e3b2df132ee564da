"""Configuration notation, construction, and the built-in catalog.

A configuration describes a face pattern inside a cubic 3-edge-connected
planar graph: either a central face with (some of) its neighbors listed in
counterclockwise order (ring form), or two faces at a given distance
(distance form).  The notation grammar:

    ring:      <center> 'c' (<digit> | '*')+     e.g.  4c5*5
               a digit may carry a trailing 'm' meaning "at most": 3c6m
    distance:  <len> 'd' <dist> '-' <len>        e.g.  3d2-4   (exact)
               <len> 'D' <dist> '-' <len>        e.g.  3D3-3   (at most)

Configurations are materialized as an embedded graph F: the black vertices
realize the faces (every black vertex has degree 3, as in a cubic host
graph), each black vertex of degree 2 within the black part gets a white
stem, and every white vertex at distance 1 from a black vertex is topped up
to degree 3 with white leaves.  The verification instance J is the square
of F plus the optional augmentation edges.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import combinations

from .engine import ColorProblem, detect_twins
from .graphs import (EmbeddedGraph, Graph, GraphError, format_graph_text,
                     is_planar, square)

STAR = "*"


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class ConfigSpec:
    """Parsed configuration notation."""

    kind: str                 # "ring" or "distance"
    center: int = 0           # ring: central face length
    entries: tuple = ()       # ring: ints, "*", or ("atmost", int)
    lengths: tuple = ()       # distance: the two face lengths
    dist: int = 0             # distance: separation, >= 1 after expansion
    dist_at_most: bool = False

    def is_exact(self):
        if self.kind == "distance":
            return not self.dist_at_most
        return all(e == STAR or isinstance(e, int) for e in self.entries)

    def name(self):
        if self.kind == "distance":
            sep = "D" if self.dist_at_most else "d"
            return f"{self.lengths[0]}{sep}{self.dist}-{self.lengths[1]}"
        out = [str(self.center), "c"]
        for e in self.entries:
            if e == STAR:
                out.append(STAR)
            elif isinstance(e, tuple):
                out.append(f"{e[1]}m")
            else:
                out.append(str(e))
        return "".join(out)

    def __str__(self):
        return self.name()


_RING_RE = re.compile(r"^(\d+)c((?:\d m?|\*)+)$".replace(" ", ""))
_DIST_RE = re.compile(r"^(\d+)([dD])(\d+)-(\d+)$")


def parse_spec(text):
    """Parse configuration notation; family markers are preserved."""
    m = _DIST_RE.match(text)
    if m:
        l1, sep, d, l2 = int(m.group(1)), m.group(2), int(m.group(3)), \
            int(m.group(4))
        if min(l1, l2) < 3:
            raise SpecError(f"face length < 3 in {text!r}")
        if d < 1:
            raise SpecError(
                f"distance 0 in {text!r}: faces sharing an edge are a ring")
        return ConfigSpec(kind="distance", lengths=(l1, l2), dist=d,
                          dist_at_most=(sep == "D"))
    m = _RING_RE.match(text)
    if m:
        center = int(m.group(1))
        entries = []
        for tok in re.findall(r"\dm?|\*", m.group(2)):
            if tok == STAR:
                entries.append(STAR)
            elif tok.endswith("m"):
                entries.append(("atmost", int(tok[:-1])))
            else:
                entries.append(int(tok))
        if center < 3:
            raise SpecError(f"central face length < 3 in {text!r}")
        if len(entries) > center:
            raise SpecError(f"ring list longer than center in {text!r}")
        for e in entries:
            v = e[1] if isinstance(e, tuple) else e
            if v != STAR and v < 3:
                raise SpecError(f"face length < 3 in {text!r}")
        return ConfigSpec(kind="ring", center=center, entries=tuple(entries))
    raise SpecError(f"malformed configuration spec {text!r}")


def expand_spec(spec):
    """Expand family markers into the exact configurations they denote."""
    if spec.kind == "distance":
        if spec.dist_at_most:
            return [ConfigSpec(kind="distance", lengths=spec.lengths, dist=d)
                    for d in range(1, spec.dist + 1)]
        return [spec]
    out = [()]
    for e in spec.entries:
        if isinstance(e, tuple):
            out = [pre + (v,) for pre in out for v in range(3, e[1] + 1)]
        else:
            out = [pre + (e,) for pre in out]
    return [ConfigSpec(kind="ring", center=spec.center, entries=entries)
            for entries in out]


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

@dataclass
class ConfigurationGraph:
    """A materialized configuration.

    `graph` is F: black vertices first, white after.  `faces` holds the
    boundary cycles of the configured faces (for face-census checks).
    `anchors` are the white non-leaf vertices in their construction order
    (stems and connector whites); `leaves_of` maps each anchor to its
    leaves.  Augmentation edges live in `dashed` (part of D / F') and
    `dashdot` (search-space reduction; only ever added to J).
    """

    spec: ConfigSpec
    graph: EmbeddedGraph
    black: tuple
    anchors: tuple
    leaves_of: dict
    faces: tuple
    dashed: tuple = ()
    dashdot: tuple = ()

    @property
    def whites(self):
        out = []
        for a in self.anchors:
            out.append(a)
            out.extend(self.leaves_of[a])
        return out

    @property
    def stems(self):
        return [a for a in self.anchors
                if any(b in self.blackset for b in self.graph.adj[a])]

    @property
    def leaves(self):
        return [v for a in self.anchors for v in self.leaves_of[a]]

    @property
    def blackset(self):
        return frozenset(self.black)

    def black_degree(self, v):
        return sum(1 for u in self.graph.adj[v] if u in self.blackset)


class _Builder:
    def __init__(self):
        self.pos = {}
        self.edges = []

    def vertex(self, x, y):
        v = len(self.pos)
        self.pos[v] = (x, y)
        return v

    def edge(self, u, v):
        self.edges.append((u, v) if u < v else (v, u))

    def embed(self):
        rot = []
        adj = [[] for _ in self.pos]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in range(len(self.pos)):
            x0, y0 = self.pos[v]
            rot.append(sorted(
                adj[v],
                key=lambda u: math.atan2(self.pos[u][1] - y0,
                                         self.pos[u][0] - x0)))
        return EmbeddedGraph(rot)


def _ring_skeleton(b, spec):
    """Black part of a ring configuration; returns (blacks, faces)."""
    ell = spec.center
    step = 2 * math.pi / ell
    center = [b.vertex(math.cos(i * step), math.sin(i * step))
              for i in range(ell)]
    for i in range(ell):
        b.edge(center[i], center[(i + 1) % ell])
    faces = [tuple(center)]
    outward = {}

    def out_vertex(i):
        if i not in outward:
            outward[i] = b.vertex(1.7 * math.cos(i * step),
                                  1.7 * math.sin(i * step))
            b.edge(center[i], outward[i])
        return outward[i]

    extra = []
    for j, e in enumerate(spec.entries):
        if e == STAR:
            continue
        jn = (j + 1) % ell
        if e == 3:
            # a triangle shares the outward edges at both endpoints
            if j in outward or jn in outward:
                raise SpecError(
                    f"{spec}: triangle adjacent to a specified face is not "
                    "supported by this construction")
            ang = (j + 0.5) * step
            w = b.vertex(1.7 * math.cos(ang), 1.7 * math.sin(ang))
            outward[j] = outward[jn] = w
            b.edge(center[j], w)
            b.edge(center[jn], w)
            extra.append(w)
            faces.append((center[j], center[jn], w))
            continue
        tj, tn = out_vertex(j), out_vertex(jn)
        path = [tj]
        npath = e - 4
        for r in range(1, npath + 1):
            ang = (j + r / (npath + 1)) * step
            p = b.vertex(1.9 * math.cos(ang), 1.9 * math.sin(ang))
            extra.append(p)
            path.append(p)
        path.append(tn)
        for u, v in zip(path, path[1:]):
            b.edge(u, v)
        faces.append((center[j], center[jn]) + tuple(reversed(path)))
    blacks = center + sorted(set(outward.values()) | set(extra))
    return sorted(set(blacks)), faces


def _distance_skeleton(b, spec):
    """Black part of a distance configuration.

    The two face cycles are joined by a geodesic whose internal vertices
    belong to the configuration (they are black: a shortest connecting
    path exists whenever the faces are at the stated distance, and taking
    it into H leaves each internal vertex with degree 2, hence a stem).
    """
    l1, l2 = spec.lengths
    d = spec.dist
    gap = 2.0 + 0.8 * d
    ax, bx = -gap / 2 - 1, gap / 2 + 1
    cyc_a = [b.vertex(ax + math.cos(2 * math.pi * i / l1),
                      math.sin(2 * math.pi * i / l1)) for i in range(l1)]
    cyc_b = [b.vertex(bx + math.cos(math.pi + 2 * math.pi * i / l2),
                      math.sin(math.pi + 2 * math.pi * i / l2))
             for i in range(l2)]
    for cyc in (cyc_a, cyc_b):
        for i in range(len(cyc)):
            b.edge(cyc[i], cyc[(i + 1) % len(cyc)])
    x0, x1 = ax + 1, bx - 1
    connector = []
    for r in range(1, d):
        connector.append(b.vertex(x0 + (x1 - x0) * r / d, 0.0))
    chain = [cyc_a[0]] + connector + [cyc_b[0]]
    for u, v in zip(chain, chain[1:]):
        b.edge(u, v)
    blacks = cyc_a + cyc_b + connector
    faces = [tuple(cyc_a), tuple(cyc_b)]
    return sorted(blacks), faces


def build_configuration(spec):
    """Materialize an exact configuration into F (no augmentation edges).

    Realizes the conservative model: all vertices distinct, no adjacencies
    beyond those the cubic embedding forces.
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if not spec.is_exact():
        raise SpecError(f"{spec} is a family; expand it first")
    b = _Builder()
    if spec.kind == "ring":
        blacks, faces = _ring_skeleton(b, spec)
    else:
        blacks, faces = _distance_skeleton(b, spec)
    blackset = set(blacks)

    deg = [0] * len(b.pos)
    for u, v in b.edges:
        deg[u] += 1
        deg[v] += 1

    # stems: one white neighbor for each degree-2 black vertex
    anchors = []
    for v in sorted(blackset):
        if deg[v] == 3:
            continue
        if deg[v] != 2:
            raise SpecError(f"{spec}: black vertex of degree {deg[v]}")
        x, y = b.pos[v]
        direction = _away(b, v)
        s = b.vertex(x + 0.9 * direction[0], y + 0.9 * direction[1])
        b.edge(v, s)
        deg[v] += 1
        anchors.append(s)

    # leaves: top every white at distance 1 from a black up to degree 3
    leaves_of = {}
    for a in anchors:
        degree = len(_nbrs(b, a))
        x, y = b.pos[a]
        direction = _away(b, a)
        leaves = []
        for idx in range(3 - degree):
            off = (idx - 0.5) * 0.25
            lx = x + 0.8 * direction[0] - off * direction[1]
            ly = y + 0.8 * direction[1] + off * direction[0]
            leaf = b.vertex(lx, ly)
            b.edge(a, leaf)
            leaves.append(leaf)
        leaves_of[a] = tuple(leaves)

    g = b.embed()
    for v in blacks:
        if g.degree(v) != 3:
            raise SpecError(f"{spec}: black vertex {v} has degree "
                            f"{g.degree(v)} after stems")
    return ConfigurationGraph(
        spec=spec, graph=g, black=tuple(blacks), anchors=tuple(anchors),
        leaves_of=leaves_of, faces=tuple(faces))


def _nbrs(b, v):
    out = []
    for x, y in b.edges:
        if x == v:
            out.append(y)
        elif y == v:
            out.append(x)
    return out


def _away(b, v):
    """Unit direction pointing away from the neighbors of v."""
    x, y = b.pos[v]
    dx = dy = 0.0
    for u in _nbrs(b, v):
        dx += x - b.pos[u][0]
        dy += y - b.pos[u][1]
    norm = math.hypot(dx, dy)
    if norm < 1e-9:
        dx, dy = 0.0, 1.0
        norm = 1.0
    return dx / norm, dy / norm


# ---------------------------------------------------------------------------
# Augmentation edges
# ---------------------------------------------------------------------------

def outer_walk(cfg):
    """The boundary walk of the unbounded face of F."""
    target = None
    leaves = set(cfg.leaves)
    for f in cfg.graph.faces():
        if leaves & set(f.boundary):
            target = f
            break
    if target is None:  # no leaves: fall back to the longest walk
        target = max(cfg.graph.faces(), key=lambda f: f.length)
    return target.boundary


def dashed_candidates(cfg):
    """Legal stem pairs for dashed edges.

    Walk the outer face, keep the black vertices: two degree-2 (within the
    black part) vertices lying 2 or 3 apart with exactly one degree-2 black
    vertex strictly between them have provably distinct white neighbors,
    which may be joined by an added edge.
    """
    blackset = cfg.blackset
    walk = [v for v in outer_walk(cfg) if v in blackset]
    # pendant white subtrees make the walk revisit their black anchor;
    # collapse consecutive repeats to recover the black boundary walk
    walk = [v for i, v in enumerate(walk) if v != walk[i - 1]]
    s = len(walk)
    deg2 = [cfg.black_degree(v) == 2 for v in walk]
    pairs = set()
    for i in range(s):
        if not deg2[i]:
            continue
        for gap in (2, 3):
            k = (i + gap) % s
            if not deg2[k]:
                continue
            between = [walk[(i + j) % s] for j in range(1, gap)]
            if sum(1 for j in range(1, gap) if deg2[(i + j) % s]) != 1:
                continue
            vi, vk = walk[i], walk[k]
            if vi == vk or vi in between or vk in between:
                continue
            wi, wk = _white_neighbor(cfg, vi), _white_neighbor(cfg, vk)
            if wi is None or wk is None or wi == wk:
                continue
            if cfg.graph.has_edge(wi, wk):
                continue
            pairs.add((min(wi, wk), max(wi, wk)))
    return sorted(pairs)


def _white_neighbor(cfg, v):
    for u in cfg.graph.adj[v]:
        if u not in cfg.blackset:
            return u
    return None


def add_dashed_edges(cfg, pairs):
    """Record dashed edges joining white stems, checking D stays legal.

    D is the white part of F plus the dashed edges; it must remain simple,
    subcubic and planar.
    """
    if cfg.dashed:
        raise SpecError("configuration already carries dashed edges")
    pairs = tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))
    blackset = cfg.blackset
    whites = [v for v in range(cfg.graph.n) if v not in blackset]
    d_edges = [(u, v) for u, v in cfg.graph.edges()
               if u not in blackset and v not in blackset]
    for u, v in pairs:
        if u in blackset or v in blackset:
            raise SpecError("dashed edges join white vertices only")
        if (u, v) in d_edges or u == v:
            raise SpecError(f"illegal dashed edge {{{u},{v}}}")
        d_edges.append((u, v))
    remap = {v: i for i, v in enumerate(whites)}
    d = Graph(len(whites), [(remap[u], remap[v]) for u, v in d_edges])
    if any(d.degree(v) > 3 for v in range(d.n)):
        raise SpecError("dashed edges would make D non-subcubic")
    if not is_planar(d):
        raise SpecError("dashed edges would make D non-planar")
    return ConfigurationGraph(
        spec=cfg.spec, graph=cfg.graph, black=cfg.black,
        anchors=cfg.anchors, leaves_of=cfg.leaves_of, faces=cfg.faces,
        dashed=pairs, dashdot=cfg.dashdot)


def add_dashdot_edges(cfg):
    """Search-space reduction: force each white leaf to differ from every
    other white non-leaf constraining the same black vertex.

    Incompatible with dashed edges (the interaction of the two kinds of
    added edges is not controlled).
    """
    if cfg.dashed:
        raise SpecError("dash-dotted edges require a configuration "
                        "without dashed edges")
    g = cfg.graph
    blackset = cfg.blackset
    nonleaves = set(cfg.anchors)
    dist = {v: g.distances_from(v) for v in nonleaves}
    edges = set()
    for a in cfg.anchors:
        constrained = [bv for bv in g.adj[a] if bv in blackset]
        for leaf in cfg.leaves_of[a]:
            for bv in constrained:
                for v in nonleaves:
                    if v != a and dist[v][bv] <= 2:
                        edges.add((min(leaf, v), max(leaf, v)))
    return ConfigurationGraph(
        spec=cfg.spec, graph=cfg.graph, black=cfg.black,
        anchors=cfg.anchors, leaves_of=cfg.leaves_of, faces=cfg.faces,
        dashed=(), dashdot=tuple(sorted(edges)))


def augmentation_plan(cfg):
    """Variants of cfg to try for reducibility, strongest claim first.

    The plain configuration with dash-dotted edges is attempted before any
    dashed edges; dashed subsets follow in (size, lexicographic) order,
    skipping subsets that would break D.
    """
    yield add_dashdot_edges(cfg)
    cands = dashed_candidates(cfg)
    for size in range(1, len(cands) + 1):
        for subset in combinations(cands, size):
            try:
                yield add_dashed_edges(cfg, subset)
            except SpecError:
                continue


# ---------------------------------------------------------------------------
# The verification graph J
# ---------------------------------------------------------------------------

def build_J(cfg, k=7):
    """The instance actually verified: square(F) plus augmentations.

    Returns a ColorProblem whose vertices are the whites of F first (the
    precolored prefix, twin leaves consecutive) and the blacks after.
    J = square(F), plus the dashed edges, plus white pairs joined in F' by
    a path of length 2 using exactly one dashed edge, plus the dash-dotted
    edges.  A white and a black vertex at distance 2 through a dashed edge
    are never joined.
    """
    g = cfg.graph
    order = cfg.whites + list(cfg.black)
    new = {v: i for i, v in enumerate(order)}
    blackset = cfg.blackset
    edges = {(min(new[u], new[v]), max(new[u], new[v]))
             for u, v in square(g).edges()}
    for u, v in cfg.dashed:
        edges.add((min(new[u], new[v]), max(new[u], new[v])))
        for a, b in ((u, v), (v, u)):
            for w in g.adj[b]:
                if w not in blackset and w != a:
                    edges.add((min(new[a], new[w]), max(new[a], new[w])))
    for u, v in cfg.dashdot:
        edges.add((min(new[u], new[v]), max(new[u], new[v])))
    j = Graph(g.n, sorted(edges))
    t = len(cfg.whites)
    return ColorProblem(j, k=k, t=t, twins=detect_twins(j, t))


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

# The 31 reducible configurations, written as the families quoted in the
# discharging case analysis.
CATALOG_FAMILIES = (
    "3c6m",
    "3D3-3", "3D3-4", "4D3-4",
    "4c4", "4c55", "4c56", "4c66", "4c5*5", "4c5*6", "4c6*6",
    "5c4*5", "5c56", "5c66", "5c5*5", "5c55*6",
    "7c3*5", "7c3**5", "7c4*5", "7c4**5", "7c55*5",
    "8c3*55*55",
)


@dataclass
class CatalogEntry:
    name: str
    spec: ConfigSpec
    configuration: ConfigurationGraph = field(default=None)

    def build(self):
        if self.configuration is None:
            self.configuration = build_configuration(self.spec)
        return self.configuration


def catalog():
    """The 31 expanded configurations, in catalog order."""
    entries = []
    for fam in CATALOG_FAMILIES:
        for spec in expand_spec(parse_spec(fam)):
            entries.append(CatalogEntry(spec.name(), spec))
    assert len(entries) == 31, "catalog must contain exactly 31 entries"
    return entries


def catalog_names():
    return [e.name for e in catalog()]


def export_catalog(directory):
    """Write each configuration as a graph file plus a manifest.

    Manifest line per entry: `<spec> <n_black> <n_white> <dashed?> <dashdot?>`
    (counts for the plain construction; augmentations are resolved at
    verification time, so the flags report candidate availability).
    """
    import os
    os.makedirs(directory, exist_ok=True)
    lines = []
    for e in catalog():
        cfg = e.build()
        fname = e.name.replace("*", "s") + ".graph"
        with open(os.path.join(directory, fname), "w") as fh:
            fh.write(format_graph_text(cfg.graph, comment=e.name))
        n_black = len(cfg.black)
        n_white = len(cfg.whites)
        has_dashed = 1 if dashed_candidates(cfg) else 0
        has_dashdot = 1 if add_dashdot_edges(cfg).dashdot else 0
        lines.append(f"{e.name} {n_black} {n_white} "
                     f"{has_dashed} {has_dashdot}")
    with open(os.path.join(directory, "manifest.txt"), "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return lines
