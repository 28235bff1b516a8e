import random

import pytest

from edgecolor.coloring import verify_proper
from edgecolor.errors import TooLarge
from edgecolor.multigraph import build_multigraph, is_overfull
from edgecolor.oracle import brute_chromatic_index, brute_overfull_scan

from conftest import complete, cycle, petersen_minus_vertex, random_simple


def test_oracle_k4(k4):
    res = brute_chromatic_index(k4)
    assert res.chi_prime == 3
    assert verify_proper(k4, res.witness).ok


def test_oracle_c5():
    assert brute_chromatic_index(cycle(5)).chi_prime == 3


def test_oracle_petersen_minus_vertex():
    pstar = petersen_minus_vertex()
    res = brute_chromatic_index(pstar)
    assert res.chi_prime == 4  # class 2 at Delta = 3
    assert brute_overfull_scan(pstar) is None


def test_oracle_k7(k7):
    res = brute_chromatic_index(k7)
    assert res.chi_prime == 7
    assert brute_overfull_scan(k7) == list(range(7))


def test_oracle_k6_scan_none():
    assert brute_overfull_scan(complete(6)) is None


def test_oracle_multigraph_bundle():
    g = build_multigraph(3, [(0, 1, 3), (1, 2, 1)])
    assert brute_chromatic_index(g).chi_prime == 4


def test_oracle_respects_caps():
    with pytest.raises(TooLarge):
        brute_chromatic_index(complete(12), max_edges=40)
    with pytest.raises(TooLarge):
        brute_overfull_scan(complete(22))


@pytest.mark.parametrize("seed", range(30))
def test_vizing_sanity_small(seed):
    rng = random.Random(seed)
    g = random_simple(rng.randint(2, 7), rng.random(), seed)
    if g.edge_count == 0:
        return
    res = brute_chromatic_index(g)
    delta = g.max_degree()
    assert delta <= res.chi_prime <= delta + 1
    witness = brute_overfull_scan(g)
    if witness is not None:
        assert res.chi_prime == delta + 1


def test_scan_agrees_with_whole_graph_overfull():
    for seed in range(20):
        g = random_simple(7, 0.8, seed)
        if g.max_degree() == 0:
            continue
        if is_overfull(g):
            assert brute_overfull_scan(g) is not None
