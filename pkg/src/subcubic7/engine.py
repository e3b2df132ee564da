"""Exact precoloring-extension engine.

Decides whether every proper k-coloring of a designated vertex prefix
(vertices 0..t-1) extends to a proper k-coloring of the whole graph.

Prefix colorings are enumerated canonically: vertex 0 gets color 0, and each
later prefix vertex may use a previously used color or the single smallest
unused color.  When two consecutive prefix vertices have the same
neighborhood (a twin pair, e.g. the two leaves on a stem), the second
vertex's color must exceed the first's.  Every proper prefix coloring is a
color permutation of exactly one canonical coloring (up to twin swaps).

Extension vertices t..n-1 are searched with all k colors in increasing
order.  Forbidden-color sets are maintained incrementally as bit masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .graphs import Graph

ALL_EXTENDABLE = "all-extendable"
COUNTEREXAMPLE = "counterexample"

MAX_COLORS = 62  # color masks live in a signed 64-bit word


class EngineError(ValueError):
    pass


def detect_twins(graph, t):
    """Consecutive adjacent prefix vertex pairs with identical neighborhoods.

    Neighborhoods are compared ignoring the pair itself.  Only adjacent
    pairs qualify: their colors are forced distinct, so requiring the
    second color to exceed the first breaks the swap symmetry without
    losing any precoloring.  (For non-adjacent equal-neighborhood pairs
    the two vertices may share a color, and the rule would be unsound.)
    """
    twins = []
    for v in range(1, t):
        if not graph.has_edge(v - 1, v):
            continue
        a = set(graph.adj[v - 1]) - {v}
        b = set(graph.adj[v]) - {v - 1}
        if a == b:
            twins.append((v - 1, v))
    return twins


@dataclass
class ColorProblem:
    graph: Graph
    k: int
    t: int
    twins: list = field(default=None)

    def __post_init__(self):
        if not 0 <= self.t <= self.graph.n:
            raise EngineError(f"t={self.t} out of range")
        if not 1 <= self.k <= MAX_COLORS:
            raise EngineError(f"k={self.k} out of range")
        if self.twins is None:
            self.twins = detect_twins(self.graph, self.t)
        else:
            for u, v in self.twins:
                if v != u + 1 or (u, v) not in detect_twins(self.graph, self.t):
                    raise EngineError(f"invalid twin pair ({u},{v})")


@dataclass
class RootColoring:
    """Fixed colors for the first r prefix vertices, canonical."""

    colors: tuple

    def __post_init__(self):
        self.colors = tuple(self.colors)

    @property
    def depth(self):
        return len(self.colors)


@dataclass
class VerificationResult:
    verdict: str
    counterexample: tuple | None
    precolorings: int
    nodes: int

    @property
    def ok(self):
        return self.verdict == ALL_EXTENDABLE

    def report(self):
        lines = [f"VERDICT {self.verdict}"]
        if self.counterexample is not None:
            lines.append("CEX " + " ".join(map(str, self.counterexample)))
        lines.append(f"STATS precolorings={self.precolorings} "
                     f"nodes={self.nodes}")
        return "\n".join(lines)


def _csr(graph):
    indptr = np.zeros(graph.n + 1, dtype=np.int32)
    for v in range(graph.n):
        indptr[v + 1] = indptr[v] + len(graph.adj[v])
    indices = np.fromiter(
        (u for v in range(graph.n) for u in graph.adj[v]),
        dtype=np.int32, count=indptr[-1])
    return indptr, indices


def _twin_flags(p):
    flags = np.zeros(p.graph.n, dtype=np.bool_)
    for _, v in p.twins:
        flags[v] = True
    return flags


def _search_core(indptr, indices, n, k, t, twin2, root, stop_depth,
                 out_prefix):
    """Iterative backtracking over canonical prefixes plus extensions.

    Vertices 0..len(root)-1 are fixed to `root`.  If stop_depth is given
    (not None), the search only enumerates canonical prefixes of that depth
    and records them through `out_prefix` (used for root partitioning);
    otherwise it verifies extension for every enumerated precoloring.

    Returns (status, precolorings, nodes) with status 0 = all-extendable,
    1 = counterexample (prefix recorded in out_prefix), 2 = enumeration
    only, 3 = root rejected.
    """
    enum_mode = stop_depth is not None
    if not enum_mode:
        stop_depth = n
    color = np.full(n, -1, dtype=np.int8)
    cnt = np.zeros((n, k), dtype=np.int32)
    mask = np.zeros(n, dtype=np.int64)
    used = np.zeros(n + 2, dtype=np.int32)
    trycol = np.zeros(n, dtype=np.int8)
    precolorings = 0
    nodes = 0
    r = len(root)

    # seed the root coloring
    for d in range(r):
        c = int(root[d])
        lo = color[d - 1] + 1 if (d > 0 and twin2[d]) else 0
        hi = min(used[d] + 1, k)
        if c < lo or c >= hi or (mask[d] >> c) & 1:
            return 3, precolorings, nodes  # root not canonical/proper
        color[d] = c
        used[d + 1] = used[d] + (1 if c == used[d] else 0)
        for i in range(indptr[d], indptr[d + 1]):
            u = indices[i]
            cnt[u, c] += 1
            if cnt[u, c] == 1:
                mask[u] |= np.int64(1) << c

    d = r
    fresh = True
    while True:
        if fresh:
            if d == t and not enum_mode:
                precolorings += 1
            if d == stop_depth:
                if enum_mode:
                    # enumeration-only mode: record prefix, then resume
                    out_prefix.append([int(color[i]) for i in range(d)])
                    precolorings += 1
                    if d == r:
                        return 2, precolorings, nodes
                    d -= 1
                    fresh = False
                    continue
                # full coloring found: unwind the extension region
                while d > t:
                    d -= 1
                    c = color[d]
                    color[d] = -1
                    for i in range(indptr[d], indptr[d + 1]):
                        u = indices[i]
                        cnt[u, c] -= 1
                        if cnt[u, c] == 0:
                            mask[u] &= ~(np.int64(1) << c)
                if t == r:
                    return 0, precolorings, nodes
                d -= 1
                fresh = False
                continue
            trycol[d] = color[d - 1] + 1 if (d > 0 and d < t and twin2[d]) \
                else 0
        else:
            c = color[d]
            color[d] = -1
            for i in range(indptr[d], indptr[d + 1]):
                u = indices[i]
                cnt[u, c] -= 1
                if cnt[u, c] == 0:
                    mask[u] &= ~(np.int64(1) << c)
            trycol[d] = c + 1

        hi = k if d >= t else min(used[d] + 1, k)
        c = trycol[d]
        while c < hi and (mask[d] >> c) & 1:
            c += 1
        if c < hi:
            color[d] = c
            used[d + 1] = used[d] + (1 if c == used[d] else 0)
            for i in range(indptr[d], indptr[d + 1]):
                u = indices[i]
                cnt[u, c] += 1
                if cnt[u, c] == 1:
                    mask[u] |= np.int64(1) << c
            if d >= t:
                nodes += 1
            d += 1
            fresh = True
        else:
            if d == t and not enum_mode:
                # current precoloring admits no extension
                out_prefix.append([int(color[j]) for j in range(t)])
                return 1, precolorings, nodes
            if d == r:
                return 0, precolorings, nodes
            d -= 1
            fresh = False

    # unreachable
    return 0, precolorings, nodes


def enumerate_precolorings(p, root=None):
    """All canonical proper colorings of the prefix, in enumeration order."""
    return [tuple(pre) for pre in _enumerate_prefixes(p, p.t, root)]


def _enumerate_prefixes(p, depth, root=None):
    indptr, indices = _csr(p.graph)
    twin2 = _twin_flags(p)
    rootcols = np.array(root.colors if root else (), dtype=np.int8)
    out = []
    status, _, _ = _search_core(indptr, indices, p.graph.n, p.k, p.t,
                                twin2, rootcols, depth, out)
    if status == 3:
        raise EngineError(f"root coloring {tuple(rootcols)} is not a "
                          "canonical proper prefix")
    return out


def partition_by_root(p, depth):
    """Canonical colorings of the first `depth` prefix vertices.

    The precoloring sets they induce are pairwise disjoint and cover the
    whole canonical enumeration, in order.
    """
    if not 0 <= depth <= p.t:
        raise EngineError(f"root depth {depth} out of range")
    return [RootColoring(tuple(c)) for c in _enumerate_prefixes(p, depth)]


def extend(p, prefix):
    """Extend one proper prefix coloring; returns a full coloring or None."""
    prefix = tuple(prefix)
    if len(prefix) != p.t:
        raise EngineError("prefix length must equal t")
    g = p.graph
    for v in range(p.t):
        for u in g.adj[v]:
            if u < v and prefix[u] == prefix[v]:
                raise EngineError("prefix coloring is not proper")
    color = list(prefix) + [-1] * (g.n - p.t)
    if _extend_rec(g, p.k, color, p.t):
        full = tuple(color)
        assert _is_proper(g, full), "extension produced an improper coloring"
        return full
    return None


def _extend_rec(g, k, color, v):
    if v == g.n:
        return True
    forbid = {color[u] for u in g.adj[v] if color[u] >= 0}
    for c in range(k):
        if c not in forbid:
            color[v] = c
            if _extend_rec(g, k, color, v + 1):
                return True
            color[v] = -1
    return False


def _is_proper(g, coloring):
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def _run_root(p, root, use_fast=True):
    indptr, indices = _csr(p.graph)
    twin2 = _twin_flags(p)
    rootcols = np.array(root.colors if root else (), dtype=np.int8)
    n = p.graph.n
    if use_fast:
        core = _fast_core()
        if core is not None:
            cex = np.full(max(p.t, 1), -1, dtype=np.int8)
            status, pre, nodes = core(indptr, indices, n, p.k, p.t, twin2,
                                      rootcols, cex)
            if status == 3:
                raise EngineError(f"root coloring {tuple(rootcols)} is not "
                                  "a canonical proper prefix")
            bad = tuple(int(c) for c in cex[:p.t]) if status == 1 else None
            return VerificationResult(
                COUNTEREXAMPLE if status == 1 else ALL_EXTENDABLE,
                bad, pre, nodes)
    out = []
    status, pre, nodes = _search_core(indptr, indices, n, p.k, p.t, twin2,
                                      rootcols, None, out)
    if status == 3:
        raise EngineError(f"root coloring {tuple(rootcols)} is not a "
                          "canonical proper prefix")
    bad = tuple(out[0]) if status == 1 else None
    return VerificationResult(COUNTEREXAMPLE if status == 1 else
                              ALL_EXTENDABLE, bad, pre, nodes)


def verify_all(p, root=None, jobs=1, root_depth=0, use_fast=True,
               progress=None):
    """Check that every canonical precoloring extends.

    Work is split by canonical root colorings at `root_depth` (ignored when
    an explicit root is given).  The verdict, counterexample and counters
    are deterministic for any `jobs` value: roots are combined in canonical
    order and counting stops at the first failing root.
    """
    if root is not None:
        return _run_root(p, root, use_fast)
    if root_depth == 0:
        return _run_root(p, RootColoring(()), use_fast)
    roots = partition_by_root(p, root_depth)
    if not roots:
        # no proper prefix coloring exists at all: vacuously extendable
        return VerificationResult(ALL_EXTENDABLE, None, 0, 0)
    results = []
    if jobs <= 1:
        for i, r in enumerate(roots):
            res = _run_root(p, r, use_fast)
            results.append(res)
            if progress is not None:
                progress(i + 1, len(roots), res)
            if not res.ok:
                break
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_run_root, p, r, use_fast) for r in roots]
            for i, f in enumerate(futs):
                res = f.result()
                results.append(res)
                if progress is not None:
                    progress(i + 1, len(roots), res)
                if not res.ok:
                    for g in futs[i + 1:]:
                        g.cancel()
                    break
    pre = sum(r.precolorings for r in results)
    nodes = sum(r.nodes for r in results)
    last = results[-1]
    if not last.ok:
        return VerificationResult(COUNTEREXAMPLE, last.counterexample,
                                  pre, nodes)
    return VerificationResult(ALL_EXTENDABLE, None, pre, nodes)


def brute_force_oracle(p, limit=10**8):
    """Independent oracle: exhaustive enumeration, no canonicalization.

    Checks all k^t prefix colorings and, for the proper ones, all
    k^(n-t) extensions.  Counters are not comparable with verify_all.
    """
    g, k, t = p.graph, p.k, p.t
    if k ** g.n > limit:
        raise EngineError("instance too large for exhaustive enumeration")
    checked = 0
    for prefix in product(range(k), repeat=t):
        if not all(prefix[u] != prefix[v]
                   for u in range(t) for v in g.adj[u] if v < u):
            continue
        checked += 1
        for rest in product(range(k), repeat=g.n - t):
            if _is_proper(g, prefix + rest):
                break
        else:
            return VerificationResult(COUNTEREXAMPLE, prefix, checked, 0)
    return VerificationResult(ALL_EXTENDABLE, None, checked, 0)


def chromatic_number_upto(graph, kmax):
    """Smallest k <= kmax with a proper k-coloring, or None if none exists."""
    for k in range(1, kmax + 1):
        p = ColorProblem(graph, k=k, t=0)
        if verify_all(p).ok:
            return k
    return None


# ---------------------------------------------------------------------------
# Optional numba-compiled core (same algorithm as _search_core, verification
# mode only; cross-checked against the pure-Python core in the tests).
# ---------------------------------------------------------------------------

_FAST = None


def _fast_core():
    global _FAST
    if _FAST is not None:
        return _FAST if _FAST is not False else None
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _FAST = False
        return None

    @njit(cache=True, nogil=True)
    def core(indptr, indices, n, k, t, twin2, root, cex):
        color = np.full(n, -1, dtype=np.int8)
        cnt = np.zeros((n, k), dtype=np.int32)
        mask = np.zeros(n, dtype=np.int64)
        used = np.zeros(n + 2, dtype=np.int32)
        trycol = np.zeros(n, dtype=np.int8)
        precolorings = 0
        nodes = 0
        r = len(root)
        for d in range(r):
            c = root[d]
            lo = color[d - 1] + 1 if (d > 0 and twin2[d]) else 0
            hi = min(used[d] + 1, k)
            if c < lo or c >= hi or (mask[d] >> c) & 1:
                return 3, precolorings, nodes
            color[d] = c
            used[d + 1] = used[d] + (1 if c == used[d] else 0)
            for i in range(indptr[d], indptr[d + 1]):
                u = indices[i]
                cnt[u, c] += 1
                if cnt[u, c] == 1:
                    mask[u] |= np.int64(1) << c
        d = r
        fresh = True
        while True:
            if fresh:
                if d == t:
                    precolorings += 1
                if d == n:
                    while d > t:
                        d -= 1
                        c = color[d]
                        color[d] = -1
                        for i in range(indptr[d], indptr[d + 1]):
                            u = indices[i]
                            cnt[u, c] -= 1
                            if cnt[u, c] == 0:
                                mask[u] &= ~(np.int64(1) << c)
                    if t == r:
                        return 0, precolorings, nodes
                    d -= 1
                    fresh = False
                    continue
                if d > 0 and d < t and twin2[d]:
                    trycol[d] = color[d - 1] + 1
                else:
                    trycol[d] = 0
            else:
                c = color[d]
                color[d] = -1
                for i in range(indptr[d], indptr[d + 1]):
                    u = indices[i]
                    cnt[u, c] -= 1
                    if cnt[u, c] == 0:
                        mask[u] &= ~(np.int64(1) << c)
                trycol[d] = c + 1

            hi = k if d >= t else min(used[d] + 1, k)
            c = trycol[d]
            while c < hi and (mask[d] >> c) & 1:
                c += 1
            if c < hi:
                color[d] = c
                used[d + 1] = used[d] + (1 if c == used[d] else 0)
                for i in range(indptr[d], indptr[d + 1]):
                    u = indices[i]
                    cnt[u, c] += 1
                    if cnt[u, c] == 1:
                        mask[u] |= np.int64(1) << c
                if d >= t:
                    nodes += 1
                d += 1
                fresh = True
            else:
                if d == t:
                    for i in range(t):
                        cex[i] = color[i]
                    return 1, precolorings, nodes
                if d == r:
                    return 0, precolorings, nodes
                d -= 1
                fresh = False

    _FAST = core
    return core
