"""Discharging: charge bookkeeping, scenario census, and graph-level checks."""

from fractions import Fraction

import pytest

from subcubic7.discharge import (
    CLASSES,
    RULE_AMOUNT,
    ChargeScenario,
    DischargeError,
    check_large_faces,
    check_unavoidability,
    discharge_graph,
    enumerate_scenarios,
    exclusion_rules,
    face_class,
    final_charge,
    initial_charge,
    survivors,
    total_charge_check,
)
from subcubic7.graphs import EmbeddedGraph

from util import CUBE_EDGES, DODECAHEDRON_EDGES, embed, random_cubic_planar


def test_initial_charge_and_classes():
    # [TRIVIAL] faces carry length - 6; lengths >= 7 share one class
    assert [initial_charge(l) for l in (3, 4, 5, 6, 7, 12)] == \
        [-3, -2, -1, 0, 1, 6]
    assert face_class(6) == 6
    assert face_class(7) == face_class(100) == CLASSES[-1]
    assert RULE_AMOUNT == {3: Fraction(1), 4: Fraction(2, 3), 5: Fraction(1, 3)}


def test_scenario_census_size():
    # [DERIVED] scenarios are rings over 5 classes, counted up to rotation
    # and reflection; independent oracle via Burnside on the dihedral group
    def necklaces(n, c):
        from math import gcd
        rot = sum(c ** gcd(i, n) for i in range(n)) // n
        if n % 2:
            refl = c ** ((n + 1) // 2)
        else:
            refl = (c ** (n // 2) + c ** (n // 2 + 1)) // 2
        return (rot + refl) // 2

    for length in range(3, 9):
        scenarios = enumerate_scenarios(length)
        assert len(scenarios) == necklaces(length, len(CLASSES)), length
        assert len({s.canonical() for s in scenarios}) == len(scenarios)


def test_scenario_validation():
    with pytest.raises(DischargeError):
        ChargeScenario(4, (3, 3, 3))


def test_final_charge_examples():
    # [DERIVED] hand-computed: only 7+-faces pay, 1 per 3-neighbor and 2/3
    # per 4-neighbor; 6-faces neither pay nor receive
    sc = ChargeScenario(7, (3, 4, 7, 7, 7, 7, 7))
    assert final_charge(sc) == 1 - 1 - Fraction(2, 3)
    assert final_charge(ChargeScenario(6, (3, 4, 7, 7, 7, 7))) == 0
    # a 3-face receives 1 from each neighbor
    sc3 = ChargeScenario(3, (7, 7, 7))
    assert final_charge(sc3) == -3 + 3
    # a 4-face receives 2/3 from each 7+-neighbor only
    sc4 = ChargeScenario(4, (6, 6, 7, 7))
    assert final_charge(sc4) == -2 + 2 * Fraction(2, 3)


def test_exclusion_rules_mirror_catalog():
    rules = exclusion_rules()
    assert len(rules) == 31
    # the rule generated from the 3c3 entry kills two adjacent triangles
    r = {rule.name: rule for rule in rules}
    assert r["3c3"].excludes(ChargeScenario(3, (3, 7, 7)))
    assert not r["3c3"].excludes(ChargeScenario(3, (4, 7, 7)))
    # distance rules exclude scenarios regardless of ring position
    assert r["3d1-3"].excludes(ChargeScenario(4, (3, 7, 3, 7)).canonical())


def test_unavoidability_passes_and_is_sharp():
    reports = check_unavoidability()
    assert [r.length for r in reports] == [3, 4, 5, 6, 7, 8]
    for r in reports:
        assert r.passed
        assert r.min_charge >= 0
        assert r.survivors <= r.scenarios
    # dropping rules must only ever hurt: with everything dropped the
    # negative-charge scenarios reappear
    dropped = check_unavoidability(drop=tuple(x.name for x in exclusion_rules()))
    assert any(not r.passed for r in dropped)
    # [DERIVED] 5c5*5 is load-bearing: without it some face goes negative
    weaker = check_unavoidability(drop=("5c5*5",))
    assert any(not r.passed for r in weaker)


def test_large_faces_pass():
    rep = check_large_faces(r_max=20)
    assert rep.passed
    assert "PASS" in rep.text()


def test_total_charge_is_minus_twelve():
    for n, edges in ((8, CUBE_EDGES), (20, DODECAHEDRON_EDGES)):
        assert total_charge_check(embed(n, edges)) == -12
    for seed in range(6):
        assert total_charge_check(random_cubic_planar(seed)) == -12


def test_discharge_graph_conserves_charge():
    # moving charge around never changes the total
    for seed in range(6):
        g = random_cubic_planar(seed)
        out = discharge_graph(g)
        assert sum(c for _, c in out) == -12


def test_discharge_graph_rejects_noncubic():
    tetra_minus = embed(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    with pytest.raises(DischargeError):
        discharge_graph(tetra_minus)
