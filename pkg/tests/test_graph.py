import json
import math

import numpy as np
import pytest

from conftest import cycle_graph, k2_graph, random_graph
from magneto import (
    GroupElement,
    MagnetoError,
    SwitchingAssignment,
    build_graph,
    cartesian_product,
    cartesian_product_many,
    graph_from_json,
)

ONE2 = GroupElement.identity("cyclic", 2)
MINUS = GroupElement.cyclic(1, 2)


def test_build_validation_errors():
    cases = [
        (2, [(0, 0, 1.0, ONE2)], None, "SELF_LOOP"),
        (2, [(0, 1, 0.0, ONE2)], None, "NONPOSITIVE_WEIGHT"),
        (2, [(0, 1, 1.0, ONE2), (1, 0, 1.0, ONE2)], None, "DUPLICATE_EDGE"),
        (2, [(0, 2, 1.0, ONE2)], None, "BAD_ENDPOINT"),
        (2, [(0, 1, 1.0, ONE2)], [1.0], "BAD_MEASURE"),
        (2, [(0, 1, 1.0, ONE2)], [1.0, 0.0], "NONPOSITIVE_MEASURE"),
        (2, [(0, 1, 1.0, ONE2), (0, 1, 1.0, GroupElement.cyclic(0, 3))], None, "MIXED_GROUPS"),
    ]
    for n, edges, mu, code in cases:
        with pytest.raises(MagnetoError) as err:
            build_graph(n, edges, mu)
        assert err.value.code == code


def test_mixed_groups_rejected():
    with pytest.raises(MagnetoError) as err:
        build_graph(3, [(0, 1, 1.0, ONE2), (1, 2, 1.0, GroupElement.circle(0.0))])
    assert err.value.code == "MIXED_GROUPS"


def test_reversed_orientation_gives_inverse_signature():
    g = build_graph(3, [(2, 0, 1.0, GroupElement.cyclic(1, 4)), (0, 1, 1.0, GroupElement.cyclic(0, 4))])
    s = g.signature(2, 0)
    assert s.isclose(GroupElement.cyclic(1, 4))
    assert g.signature(0, 2).isclose(GroupElement.cyclic(3, 4))


def test_boundary_is_symmetric_under_complement():
    rng = np.random.default_rng(3)
    g = random_graph(rng, 6, 3)
    full = g.full_mask()
    for mask in range(1, full):
        assert g.boundary_measure(mask) == pytest.approx(
            g.boundary_measure(full ^ mask), abs=1e-12
        )


def test_volume_and_degrees():
    g = cycle_graph(4, 2, 1, weight=2.0, mu=[1.0, 2.0, 3.0, 4.0])
    assert g.volume([0, 2]) == 4.0
    assert g.volume(g.full_mask()) == 10.0
    assert np.allclose(g.degrees(), 4.0)
    assert g.max_mu_degree() == 4.0  # vertex 0: degree 4, mu 1


def test_switch_composes_like_the_group_action():
    rng = np.random.default_rng(7)
    g = random_graph(rng, 6, 4)
    t1 = SwitchingAssignment.from_exponents(range(6), rng.integers(0, 4, 6), 4)
    t2 = SwitchingAssignment.from_exponents(range(6), rng.integers(0, 4, 6), 4)
    combined = SwitchingAssignment({u: t2[u] * t1[u] for u in range(6)})
    a = g.switch(t1).switch(t2)
    b = g.switch(combined)
    assert np.array_equal(a.sig, b.sig)


def test_switch_requires_full_domain_and_matching_group():
    g = cycle_graph(3, 2, 1)
    partial = SwitchingAssignment.from_exponents([0, 1], [0, 1], 2)
    with pytest.raises(MagnetoError) as err:
        g.switch(partial)
    assert err.value.code == "INCOMPLETE_ASSIGNMENT"
    wrong = SwitchingAssignment.from_exponents([0, 1, 2], [0, 0, 0], 3)
    with pytest.raises(MagnetoError) as err:
        g.switch(wrong)
    assert err.value.code == "WRONG_GROUP"


def test_cycle_signature_invariant_under_switching():
    rng = np.random.default_rng(11)
    g = cycle_graph(5, 6, 4)
    cyc = list(range(5))
    before = g.cycle_signature(cyc)
    tau = SwitchingAssignment.from_exponents(range(5), rng.integers(0, 6, 5), 6)
    after = g.switch(tau).cycle_signature(cyc)
    assert before.isclose(after)
    assert before.exponent == 4


def test_cycle_signature_rejects_non_cycles():
    g = cycle_graph(4, 2, 1)
    with pytest.raises(MagnetoError):
        g.cycle_signature([0, 1])
    with pytest.raises(MagnetoError):
        g.cycle_signature([0, 1, 3])  # (1,3) is not an edge


def test_trees_are_balanced():
    g = build_graph(4, [(0, 1, 1.0, MINUS), (1, 2, 1.0, MINUS), (1, 3, 1.0, MINUS)])
    balanced, tau = g.is_balanced()
    assert balanced
    switched = g.switch(tau)
    assert np.all(switched.sig == 0)
    assert k2_graph(2, 1).is_balanced()[0]


def test_unbalanced_cycle_reports_a_bad_cycle():
    g = cycle_graph(5, 4, 3)
    balanced, cycle = g.is_balanced()
    assert not balanced
    assert not g.cycle_signature(cycle).is_identity()


def test_balance_matches_frustration_of_whole_graph():
    from magneto import frustration_exact

    rng = np.random.default_rng(19)
    for _ in range(20):
        g = random_graph(rng, 6, 3)
        balanced, _ = g.is_balanced()
        iota = frustration_exact(g, g.full_mask()).value
        assert balanced == (iota < 1e-12)


def test_product_counts_weights_and_measure():
    g1 = cycle_graph(3, 2, 1, mu=[1.0, 2.0, 3.0])
    g2 = k2_graph(2, 0)
    p = cartesian_product(g1, g2)
    assert p.n == 6
    assert p.m == g1.n * g2.m + g2.n * g1.m
    assert np.allclose(np.sort(p.mu), np.sort(np.outer(g1.mu, g2.mu).ravel()))
    # the copy of g2 at g1-vertex u is weighted by mu_1(u)
    w_edge_01 = p.ew[(p.eu == 0) & (p.ev == 1)]
    assert w_edge_01 == pytest.approx(1.0)
    w_edge_45 = p.ew[(p.eu == 4) & (p.ev == 5)]
    assert w_edge_45 == pytest.approx(3.0)


def test_product_many_is_associative_in_size():
    g = cycle_graph(3, 2, 1)
    p = cartesian_product_many([g, g, k2_graph(2, 1)])
    assert p.n == 18
    with pytest.raises(MagnetoError):
        cartesian_product_many([])


def test_json_round_trip_cyclic_and_circle():
    rng = np.random.default_rng(23)
    g = random_graph(rng, 6, 4)
    h = graph_from_json(g.to_json())
    assert h.n == g.n and h.group_order == g.group_order
    assert np.array_equal(h.sig, g.sig)
    assert np.allclose(h.ew, g.ew) and np.allclose(h.mu, g.mu)

    angles = [0.3, 1.2, 2 * math.pi - 0.1]
    from conftest import circle_cycle

    c = circle_cycle(3, angles)
    c2 = graph_from_json(c.to_json())
    assert c2.group_kind == "circle"
    assert np.allclose(c2.sig, c.sig, atol=1e-12)


def test_json_rejects_unknown_group():
    with pytest.raises(MagnetoError) as err:
        graph_from_json(json.dumps({"n": 2, "group": {"kind": "torus"}, "edges": []}))
    assert err.value.code == "BAD_GROUP"
