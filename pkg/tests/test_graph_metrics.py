"""Graph metrics against hand values and the exact-arithmetic oracles."""

import math
import random
from fractions import Fraction

import pytest

import _oracles as oracles
from gridres.errors import InvariantViolation, UnknownElementError
from gridres.graph import GraphView
from gridres.metrics import (
    algebraic_connectivity,
    average_betweenness,
    average_shortest_path,
    betweenness,
    diameter,
    fiedler_pair,
    metric_vector,
)


def G(vertices, edges):
    return GraphView.build(vertices, edges)


# ---------------------------------------------------------------------------
# construction invariants


def test_build_normalizes_and_validates():
    g = G([3, 1, 2], [(2, 1), (3, 2)])
    assert g.vertices == (1, 2, 3)
    assert g.edges == frozenset({(1, 2), (2, 3)})
    with pytest.raises(InvariantViolation):
        G([1, 2], [(1, 1)])
    with pytest.raises(UnknownElementError):
        G([1, 2], [(1, 9)])
    with pytest.raises(UnknownElementError):
        G([1, 2], [(1, 2)]).index(7)


def test_duplicate_edges_collapse():
    g = G([1, 2], [(1, 2), (2, 1)])
    assert g.edges == frozenset({(1, 2)})


def test_components_and_subgraph():
    g = G([1, 2, 3, 4, 5], [(1, 2), (4, 5)])
    assert g.components() == [frozenset({1, 2}), frozenset({3}), frozenset({4, 5})]
    assert not g.is_connected()
    sub = g.subgraph({4, 5})
    assert sub.vertices == (4, 5) and sub.edges == frozenset({(4, 5)})
    assert sub.is_connected()


# ---------------------------------------------------------------------------
# hand-checkable values


def test_triangle_metrics():
    g = G([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    m = metric_vector(g)
    assert m.lambda2 == pytest.approx(3.0, abs=1e-9)
    assert m.avg_path_inv == 1.0
    assert m.betweenness_inv == 1.0  # nobody is interior: capped
    assert m.diameter_inv == 1.0
    assert metric_vector(g, betweenness_inv_cap=7.0).betweenness_inv == 7.0


def test_path3():
    g = G([1, 2, 3], [(1, 2), (2, 3)])
    assert average_shortest_path(g) == pytest.approx(4.0 / 3.0)
    assert diameter(g) == 2.0
    assert betweenness(g, 2) == 1.0
    assert betweenness(g, 1) == 0.0
    assert average_betweenness(g) == pytest.approx(1.0 / 3.0)
    m = metric_vector(g)
    assert m.avg_path_inv == pytest.approx(1.0 / average_shortest_path(g))
    assert m.betweenness_inv == pytest.approx(3.0)


def test_star4():
    g = G([9, 1, 2, 3], [(9, 1), (9, 2), (9, 3)])
    assert betweenness(g, 9) == 3.0
    assert average_betweenness(g) == pytest.approx(0.75)
    # star lambda2 is 1 (leaf eigenvector differences)
    assert algebraic_connectivity(g) == pytest.approx(1.0, abs=1e-9)


def test_p2_lambda2():
    assert algebraic_connectivity(G([1, 2], [(1, 2)])) == pytest.approx(2.0, abs=1e-12)


def test_disconnected_sentinels():
    g = G([1, 2, 3], [(1, 2)])
    assert algebraic_connectivity(g) == 0.0
    assert average_shortest_path(g) == math.inf
    assert diameter(g) == math.inf
    m = metric_vector(g)
    assert m.lambda2 == 0.0 and m.avg_path_inv == 0.0 and m.diameter_inv == 0.0


def test_single_vertex_rejected():
    with pytest.raises(InvariantViolation):
        metric_vector(G([1], []))
    with pytest.raises(InvariantViolation):
        average_shortest_path(G([1], []))


def test_fiedler_vector_is_eigenvector():
    g = G(list(range(1, 9)), [(i, i + 1) for i in range(1, 8)] + [(1, 8)])
    lam, vec = fiedler_pair(g)
    lap = g.laplacian()
    n = g.n
    resid = 0.0
    norm = 0.0
    for i in range(n):
        row = sum(lap[i][j] * vec[j] for j in range(n)) - lam * vec[i]
        resid += row * row
        norm += vec[i] * vec[i]
    assert math.sqrt(resid) <= 1e-6 * math.sqrt(norm)


# ---------------------------------------------------------------------------
# oracle equivalence


def _assert_matches_oracles(vertices, edges):
    g = G(vertices, edges)
    apl, diam_o = oracles.oracle_path_stats(vertices, edges)
    got_apl = average_shortest_path(g)
    got_diam = diameter(g)
    if apl is math.inf:
        assert got_apl == math.inf and got_diam == math.inf
        assert algebraic_connectivity(g) == 0.0
    else:
        # totals are small integers: the kernel's division must land exactly
        assert got_apl == float(Fraction(apl))
        assert got_diam == float(diam_o)
        assert algebraic_connectivity(g) > 0.0
    for vtx, expect in oracles.oracle_betweenness(vertices, edges).items():
        assert abs(betweenness(g, vtx) - float(expect)) <= 1e-12
    lam_o = oracles.oracle_lambda2(vertices, edges)
    assert abs(algebraic_connectivity(g) - lam_o) <= 1e-6


def test_oracle_equivalence_random_sweep():
    rng = random.Random(0)
    for _ in range(60):
        vertices, edges = oracles.random_graph(rng)
        _assert_matches_oracles(vertices, edges)


def test_oracle_equivalence_structured():
    cases = [
        ([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4)]),          # cycle
        ([1, 2, 3, 4, 5], [(1, 2), (2, 3), (3, 4), (4, 5)]),       # path
        ([1, 2, 3, 4, 5, 6], [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]),  # star
        (list(range(1, 7)), [(i, j) for i in range(1, 7) for j in range(i + 1, 7)]),  # K6
        ([1, 2, 3, 4, 5, 6], [(1, 2), (2, 3), (4, 5), (5, 6)]),    # two paths
    ]
    for vertices, edges in cases:
        _assert_matches_oracles(vertices, edges)


# ---------------------------------------------------------------------------
# monotonicity under edge addition


def test_edge_addition_monotonicity():
    rng = random.Random(7)
    checked = 0
    while checked < 40:
        vertices, edges = oracles.random_graph(rng)
        present = set(edges)
        missing = [
            (a, b)
            for i, a in enumerate(sorted(vertices))
            for b in sorted(vertices)[i + 1:]
            if (a, b) not in present
        ]
        if not missing:
            continue
        extra = missing[rng.randrange(len(missing))]
        before = metric_vector(G(vertices, edges))
        after = metric_vector(G(vertices, edges + [extra]))
        assert after.lambda2 >= before.lambda2 - 1e-9
        # inverted distance metrics grow when paths shorten
        assert after.avg_path_inv >= before.avg_path_inv - 1e-12
        assert after.diameter_inv >= before.diameter_inv - 1e-12
        checked += 1


def test_lambda2_zero_iff_disconnected():
    rng = random.Random(3)
    for _ in range(80):
        vertices, edges = oracles.random_graph(rng)
        g = G(vertices, edges)
        lam = algebraic_connectivity(g)
        if g.is_connected():
            assert lam > 0.0
        else:
            assert lam == 0.0


def test_lambda2_bounded_by_n():
    rng = random.Random(11)
    for _ in range(40):
        vertices, edges = oracles.random_graph(rng)
        assert algebraic_connectivity(G(vertices, edges)) <= len(vertices) + 1e-9
