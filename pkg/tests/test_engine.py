"""Precoloring-extension engine against independent oracles."""

import random

import pytest

from subcubic7.engine import (
    ColorProblem,
    EngineError,
    brute_force_oracle,
    chromatic_number_upto,
    detect_twins,
    enumerate_precolorings,
    extend,
    partition_by_root,
    verify_all,
)
from subcubic7.graphs import Graph

from util import random_subcubic, set_partition_count


def random_instance(rng, nmax=9):
    n = rng.randint(1, nmax)
    g = random_subcubic(rng, n, p=rng.choice([0.3, 0.6, 0.9]))
    t = rng.randint(0, n)
    k = rng.randint(1, 4)
    return ColorProblem(g, k, t)


def test_problem_validation():
    g = Graph(3, [(0, 1)])
    with pytest.raises(EngineError):
        ColorProblem(g, 7, 4)
    with pytest.raises(EngineError):
        ColorProblem(g, 0, 1)
    with pytest.raises(EngineError):
        ColorProblem(g, 7, 3, twins=[(0, 2)])


def test_canonical_precoloring_count_is_partition_count():
    # with no edges among the first t vertices, canonical proper
    # precolorings with <=k colors are exactly the set partitions of a
    # t-set into at most k blocks
    for t in range(0, 7):
        for k in (1, 2, 3, 7):
            g = Graph(t)
            p = ColorProblem(g, k, t)
            cnt = sum(1 for _ in enumerate_precolorings(p))
            assert cnt == set_partition_count(t, k), (t, k)


def test_verdict_matches_bruteforce():
    rng = random.Random(20260826)
    for trial in range(120):
        p = random_instance(rng)
        want = brute_force_oracle(p)
        got = verify_all(p)
        assert got.verdict == want.verdict, (trial, p)
        if not want.ok:
            # counterexample must be a proper non-extendable precoloring
            assert got.counterexample is not None


def test_counterexamples_are_genuine():
    rng = random.Random(5)
    bad = 0
    while bad < 15:
        p = random_instance(rng)
        r = verify_all(p)
        if r.ok:
            continue
        bad += 1
        cex = list(r.counterexample)
        assert len(cex) == p.t
        assert all(cex[u] != cex[v]
                   for u in range(p.t) for v in p.graph.adj[u] if v < u)
        assert not extend(p, cex)


def test_slow_and_fast_cores_agree():
    rng = random.Random(99)
    for _ in range(60):
        p = random_instance(rng)
        a = verify_all(p, use_fast=False)
        b = verify_all(p, use_fast=True)
        assert (a.verdict, a.precolorings, a.nodes) == \
               (b.verdict, b.precolorings, b.nodes)


def test_root_partition_and_jobs_invariance():
    # counters must not depend on how the work is split
    rng = random.Random(42)
    for _ in range(40):
        p = random_instance(rng)
        base = verify_all(p)
        for depth in range(1, min(3, p.t) + 1):
            split = verify_all(p, root_depth=depth, jobs=2)
            assert split.verdict == base.verdict
            assert split.precolorings == base.precolorings
            assert split.nodes == base.nodes


def test_partition_by_root_covers_all_precolorings():
    g = random_subcubic(random.Random(1), 8, p=0.5)
    p = ColorProblem(g, 3, 5)
    total = sum(1 for _ in enumerate_precolorings(p))
    parts = partition_by_root(p, 2)
    covered = 0
    for root in parts:
        covered += sum(1 for pre in enumerate_precolorings(p)
                       if list(pre[:len(root.colors)]) == list(root.colors))
    assert covered == total


def test_twin_detection():
    # consecutive, adjacent, same neighborhood apart from each other
    tri = Graph(3, [(0, 1), (0, 2), (1, 2)])
    assert (1, 2) in detect_twins(tri, 3)
    # equal neighborhoods but not adjacent: color swap is not a symmetry
    cherry = Graph(3, [(0, 1), (0, 2)])
    assert (1, 2) not in detect_twins(cherry, 3)


def test_twins_preserve_verdict_and_reduce_count():
    g = Graph(4, [(2, 3)])
    p_twin = ColorProblem(g, 3, 4)
    p_flat = ColorProblem(g, 3, 4, twins=[])
    a, b = verify_all(p_twin), verify_all(p_flat)
    assert a.verdict == b.verdict
    assert a.precolorings < b.precolorings


def test_chromatic_number_upto():
    c5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert chromatic_number_upto(c5, 7) == 3
    k4 = Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert chromatic_number_upto(k4, 7) == 4
    assert chromatic_number_upto(k4, 3) is None
    bip = Graph(6, [(u, v) for u in range(3) for v in range(3, 6)])
    assert chromatic_number_upto(bip, 7) == 2
    assert chromatic_number_upto(Graph(3), 7) == 1


def test_report_format():
    g = Graph(3, [(0, 1), (1, 2)])
    r = verify_all(ColorProblem(g, 2, 2))
    lines = r.report().splitlines()
    assert lines[0].startswith("VERDICT ")
    assert lines[-1].startswith("STATS precolorings=")
