import math

import pytest

from edgecolor.coloring import verify_proper
from edgecolor.errors import EvenOrderInput, PreconditionViolated
from edgecolor.generators import (
    gen_case_fixture,
    gen_complete,
    gen_complete_minus_matching,
)
from edgecolor.multigraph import build_multigraph
from edgecolor.oracle import brute_chromatic_index
from edgecolor.reduction import color_odd_dense, compute_W, derive_eta

from conftest import complete, petersen_minus_vertex, random_simple


def test_compute_w_regular_empty():
    assert compute_W(complete(9), 0.1) == set()


def test_compute_w_deficient_singleton():
    g = complete(9)
    for w in (1, 2, 3):
        g.delete_edge(g.edges_between(0, w)[0])
    # n = 5; vertex 0 has deficiency 3 >= eta*n for eta = 0.5
    assert compute_W(g, 0.5) == {0}


def test_compute_w_matches_filter():
    g = random_simple(21, 0.7, 4)
    eta = 0.3
    n = 11
    delta = g.max_degree()
    expect = {v for v in g.verts if delta - g.degree(v) >= eta * n}
    assert compute_W(g, eta) == expect


def test_k7_class_two(k7):
    res = color_odd_dense(k7, 0.2)
    assert res.verdict == "ClassTwo"
    assert res.colors_used == 7
    assert verify_proper(k7, res.coloring).ok


def test_k7_minus_matching_proper_and_bounded(k7):
    g = gen_complete_minus_matching(7, 3)
    res = color_odd_dense(g, 0.2)
    assert verify_proper(g, res.coloring).ok and res.coloring.is_total()
    assert res.colors_used <= 7
    if res.verdict == "ClassOne":
        assert res.colors_used == 6
    assert brute_chromatic_index(g).chi_prime == 6


def test_petersen_minus_vertex_out_of_regime():
    pstar = petersen_minus_vertex()
    res = color_odd_dense(pstar, 0.2)
    assert verify_proper(pstar, res.coloring).ok
    assert res.colors_used <= 4
    assert any("OutOfRegime" in e.note for e in res.trace.entries)


def test_even_order_rejected():
    with pytest.raises(EvenOrderInput):
        color_odd_dense(complete(6), 0.2)


def test_multigraph_rejected():
    g = build_multigraph(3, [(0, 1, 2), (1, 2, 1)])
    with pytest.raises(PreconditionViolated):
        color_odd_dense(g, 0.2)


def test_eta_derivation_recorded():
    res = color_odd_dense(complete(7), 0.4)
    assert derive_eta(0.4) == pytest.approx(0.0016)
    assert any("eta=0.0016" in e.note for e in res.trace.entries)


@pytest.mark.parametrize("case", [1, 2, 3, 4])
def test_case_dispatch(case):
    sizes = {1: 40, 2: 40, 3: 60, 4: 40}
    fix = gen_case_fixture(case, sizes[case])
    res = color_odd_dense(fix.graph, fix.epsilon, eta=fix.eta, seed=1)
    assert res.case == case
    assert verify_proper(fix.graph, res.coloring).ok and res.coloring.is_total()
    assert res.colors_used <= fix.graph.max_degree() + 1


def test_case2_full_pipeline_class_one():
    fix = gen_case_fixture(2, 76)
    g = fix.graph
    res = color_odd_dense(g, fix.epsilon, eta=fix.eta, seed=1)
    assert res.verdict == "ClassOne"
    assert res.colors_used == g.max_degree()
    assert verify_proper(g, res.coloring).ok and res.coloring.is_total()


def test_case4_full_pipeline_class_one():
    fix = gen_case_fixture(4, 90)
    g = fix.graph
    res = color_odd_dense(g, fix.epsilon, eta=fix.eta, seed=1)
    assert verify_proper(g, res.coloring).ok and res.coloring.is_total()
    if res.verdict == "ClassOne":
        assert res.colors_used == g.max_degree()


def test_fallback_never_exceeds_delta_plus_one():
    for seed in range(6):
        g = random_simple(2 * (seed + 6) + 1, 0.6, seed)
        res = color_odd_dense(g, 0.3, seed=seed)
        assert verify_proper(g, res.coloring).ok
        assert res.colors_used <= g.max_degree() + 1
