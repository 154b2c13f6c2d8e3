import itertools

import pytest

from dehncolor import moves
from dehncolor.coloring import brute_force_count, count_colorings
from dehncolor.diagram import DiagramError
from dehncolor.doubling import count_r, double, doublable_sets, is_doublable, phi_r
from dehncolor.tuples import TAU
from dehncolor.weights import phi, phi_equal

from conftest import load


def all_subsets(d):
    ids = [e.id for e in d.graph_edges]
    for r in range(len(ids) + 1):
        yield from itertools.combinations(ids, r)


def plain(value):
    return [(sorted((w.valency, w.value) for w in ws), m) for ws, m in value.entries]


A = [([(4, 1), (6, 1)], 216), ([(4, 3), (6, 1)], 18), ([(4, 3), (6, 3)], 9)]
B = [([(4, 1), (6, 1)], 144), ([(4, 1), (6, 3)], 18), ([(4, 3), (6, 1)], 72), ([(4, 3), (6, 3)], 9)]


def test_theta_parity(theta):
    assert not is_doublable(theta, [])
    for e in theta.graph_edges:
        assert is_doublable(theta, [e.id])
    assert not is_doublable(theta, ["e1", "e2"])
    assert is_doublable(theta, ["e1", "e2", "e3"])
    assert doublable_sets(theta, 1) == [("e1",), ("e2",), ("e3",)]
    assert doublable_sets(theta, 2) == []


@pytest.mark.parametrize("name", ["theta", "k4"])
def test_doublable_iff_euler(name):
    d = load(name)
    for s in all_subsets(d):
        assert is_doublable(d, s) == double(d, s).is_euler(), s


def test_unknown_or_repeated_edge(theta):
    with pytest.raises(DiagramError):
        double(theta, ["e9"])
    with pytest.raises(DiagramError):
        is_doublable(theta, ["e1", "e1"])
    with pytest.raises(ValueError):
        doublable_sets(theta, 0)


def test_circle_double(circle):
    d = double(circle, [circle.graph_edges[0].id])
    assert d.num_regions == 3
    assert d.vertices[0].valency == 4
    for p in (2, 3, 5):
        assert count_colorings(d, p) == p ** 3


def test_crossing_count():
    for name in ("figure9_G1", "figure6_G", "trefoil"):
        d = load(name)
        for s in all_subsets(d):
            darts = {x for e in d.graph_edges if e.id in s for x in e.darts}
            expected = 0
            for x in d.crossings:
                h = sum(1 for y in x.rotation[:2] if y in darts)
                expected += (1, 2, 4)[h]
            assert len(double(d, s).crossings) == expected


def test_trefoil_double_against_oracle(trefoil):
    d = double(trefoil, [trefoil.graph_edges[0].id])
    assert d.num_regions == 2 + len(d.arcs) - len(d.nodes)
    for p in (2, 3):
        assert count_r(trefoil, p, 1) == [brute_force_count(d, p, guard=10**7)]


@pytest.mark.parametrize("name", ["figure9_G1", "figure9_G2"])
def test_doublable_singletons(name):
    d = load(name)
    assert len(d.graph_edges) == 4
    assert len(doublable_sets(d, 1)) == 3


@pytest.mark.parametrize("name", ["figure9_G1", "figure9_G2"])
def test_count_r(name):
    d = load(name)
    for p in (2, 3):
        assert count_r(d, p, 1) == [p ** 5] * 3


def test_phi_r_fingerprints():
    g1 = phi_r(load("figure9_G1"), 3, TAU, 1)
    g2 = phi_r(load("figure9_G2"), 3, TAU, 1)
    assert [plain(v) for v in g1] == [A, A, A]
    assert sorted(plain(v) for v in g2) == sorted([A, A, B])
    assert sum(phi_equal(v, phi(load("figure6_Gprime"), 3, TAU)) for v in g2) == 1
    assert all(phi_equal(v, phi(load("figure6_G"), 3, TAU)) for v in g1)


def test_doubled_edge_twist_invariance(theta):
    d = double(theta, ["e1"])
    base = phi(d, 3, TAU)
    for site in moves.find_sites(d, "R5"):
        assert phi_equal(phi(moves.apply(d, site), 3, TAU), base)


def test_phi_r_invariant_under_walk():
    g = load("figure9_G2")
    base = phi_r(g, 3, TAU, 1)
    for seed in (1, 2):
        walked = moves.random_walk(g, 12, seed=seed, max_crossings=6)
        got = phi_r(walked, 3, TAU, 1)
        assert all(phi_equal(x, y) for x, y in zip(got, base))
