import itertools
import random

import pytest

from edgecolor.classic import (
    check_hamiltonian_cycle,
    check_matching,
    check_path_cover,
    dirac_hamiltonian,
    hakimi_realize,
    hopcroft_karp,
    konig_color,
    path_cover_matching,
    path_cover_star,
    perfect_matching_bipartite_star,
    perfect_matching_dense,
)
from edgecolor.coloring import verify_proper
from edgecolor.errors import (
    CoverFailed,
    DegreeSequenceInfeasible,
    NotBipartite,
    PreconditionViolated,
    TooFewCenterNeighbors,
)
from edgecolor.multigraph import Multigraph, build_multigraph

from conftest import complete, cycle, random_simple


# -- Hakimi ------------------------------------------------------------


def test_hakimi_star():
    g = hakimi_realize([3, 1, 1, 1])
    assert g.degrees() == {0: 3, 1: 1, 2: 1, 3: 1}


def test_hakimi_infeasible():
    with pytest.raises(DegreeSequenceInfeasible) as err:
        hakimi_realize([4, 1, 1])
    assert err.value.reason == "DominantDegree"
    with pytest.raises(DegreeSequenceInfeasible) as err:
        hakimi_realize([3, 2])
    assert err.value.reason == "OddSum"


def test_hakimi_multigraph_sequence():
    g = hakimi_realize([3, 3, 2])
    assert g.degrees() == {0: 3, 1: 3, 2: 2}


def test_hakimi_exhaustive_small():
    """Verdict matches the closed form on all short non-increasing sequences."""
    for length in range(1, 6):
        for seq in itertools.combinations_with_replacement(range(5, -1, -1), length):
            seq = tuple(sorted(seq, reverse=True))
            feasible = sum(seq) % 2 == 0 and (not seq or 2 * seq[0] <= sum(seq))
            try:
                g = hakimi_realize(list(seq))
                assert feasible
                assert [g.degree(v) for v in range(len(seq))] == list(seq)
            except DegreeSequenceInfeasible:
                assert not feasible


# -- Dirac -------------------------------------------------------------


def test_dirac_k4(k4):
    assert check_hamiltonian_cycle(k4, dirac_hamiltonian(k4))


def test_dirac_c4():
    assert check_hamiltonian_cycle(cycle(4), dirac_hamiltonian(cycle(4)))


def test_dirac_rejects_sparse():
    g = build_multigraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    with pytest.raises(PreconditionViolated):
        dirac_hamiltonian(g)


@pytest.mark.parametrize("seed", range(8))
def test_dirac_random(seed):
    rng = random.Random(seed)
    n = rng.randint(10, 60)
    g = random_simple(n, 0.6, seed)
    # repair to the Dirac floor
    for v in range(n):
        w = 0
        while g.degree(v) * 2 < n:
            if w != v and g.multiplicity(v, w) == 0:
                g.add_edge(v, w)
            w += 1
    cyc = dirac_hamiltonian(g)
    assert check_hamiltonian_cycle(g, cyc)


# -- matchings ---------------------------------------------------------


def test_perfect_matching_k6():
    g = complete(6)
    m = perfect_matching_dense(g)
    assert check_matching(g, m)


def test_perfect_matching_forced_pendant():
    g = complete(6)
    for w in (2, 3, 4):
        g.delete_edge(g.edges_between(1, w)[0])
    # vertex 1 keeps only 0 and 5; a perfect matching still exists
    m = perfect_matching_dense(g)
    assert check_matching(g, m)


@pytest.mark.parametrize("seed", range(6))
def test_perfect_matching_dense_random(seed):
    n = 50
    g = random_simple(2 * n, 0.75, seed)
    for v in range(2 * n):
        w = 0
        while g.degree(v) < n + 1:
            if w != v and g.multiplicity(v, w) == 0:
                g.add_edge(v, w)
            w += 1
    m = perfect_matching_dense(g)
    assert check_matching(g, m)


def test_hopcroft_karp_saturates():
    adj = {0: [10, 11], 1: [10], 2: [11, 12]}
    m = hopcroft_karp(adj, [0, 1, 2])
    assert len(m) == 3


def test_bipartite_star_matching():
    n = 4
    g = Multigraph(2 * n)
    for u in range(n):
        for w in range(n, 2 * n):
            g.add_edge(u, w)
    m = perfect_matching_bipartite_star(g, list(range(n)), list(range(n, 2 * n)))
    assert check_matching(g, m)


def test_bipartite_star_center_bundle():
    g = Multigraph(4)
    g.add_edge(0, 2)
    g.add_edge(0, 2)
    g.add_edge(0, 2)
    g.add_edge(1, 3)
    m = perfect_matching_bipartite_star(g, [0, 1], [2, 3], center=0)
    assert check_matching(g, m)
    ends = {frozenset(g.endpoints(e)) for e in m}
    assert frozenset((0, 2)) in ends


@pytest.mark.parametrize("seed", range(5))
def test_bipartite_star_random(seed):
    rng = random.Random(seed)
    n = 30
    g = Multigraph(2 * n)
    left, right = list(range(n)), list(range(n, 2 * n))
    for u in left:
        for w in right:
            if rng.random() < 0.7:
                g.add_edge(u, w)
    for u in left:
        if g.degree(u) == 0:
            g.add_edge(u, n + u)
    for w in right:
        if g.degree(w) == 0:
            g.add_edge(w - n, w)
    m = perfect_matching_bipartite_star(g, left, right, center=0)
    assert check_matching(g, m)


# -- Koenig ------------------------------------------------------------


def test_konig_k33():
    g = build_multigraph(6, [(u, v + 3, 1) for u in range(3) for v in range(3)])
    c = konig_color(g)
    assert c.k == 3 and c.is_total() and verify_proper(g, c).ok


def test_konig_bundle():
    g = build_multigraph(2, [(0, 1, 4)])
    c = konig_color(g)
    assert c.k == 4 and verify_proper(g, c).ok


def test_konig_rejects_odd_cycle():
    with pytest.raises(NotBipartite):
        konig_color(cycle(5))


@pytest.mark.parametrize("seed", range(8))
def test_konig_exactly_delta_random(seed):
    rng = random.Random(seed)
    nl = rng.randint(3, 20)
    nr = rng.randint(3, 20)
    g = Multigraph(nl + nr)
    for u in range(nl):
        for w in range(nl, nl + nr):
            if rng.random() < 0.4:
                for _ in range(rng.randint(1, 4)):
                    g.add_edge(u, w)
    if g.edge_count == 0:
        g.add_edge(0, nl)
    c = konig_color(g)
    assert c.k == g.max_degree()
    assert c.is_total() and verify_proper(g, c).ok


# -- path covers -------------------------------------------------------


def test_path_cover_single_pair():
    g = complete(6)
    cover = path_cover_matching(g, [(0, 1)])
    assert check_path_cover(g, cover, [(0, 1)])
    assert len(cover.paths) == 1 and len(cover.paths[0]) == 6


def test_path_cover_two_pairs():
    g = complete(6)
    cover = path_cover_matching(g, [(0, 1), (2, 3)])
    assert check_path_cover(g, cover, [(0, 1), (2, 3)])


def test_path_cover_rejects_shared_endpoints():
    with pytest.raises(PreconditionViolated):
        path_cover_matching(complete(6), [(0, 1), (1, 2)])


def test_path_cover_star_interior_center():
    g = complete(7)
    cover = path_cover_star(g, [(1, 2)], x=0)
    assert check_path_cover(g, cover, [(1, 2)])
    spine = cover.paths[-1]
    assert 0 in spine and spine[0] != 0 and spine[-1] != 0


def test_path_cover_star_center_endpoint():
    g = complete(7)
    cover = path_cover_star(g, [(3, 4), (0, 5)], x=0)
    # the center pair is rerouted to run last, starting at the center
    assert cover.endpoints[-1][0] == 0
    flat = [v for p in cover.paths for v in p]
    assert sorted(flat) == list(range(7))


def test_path_cover_star_needs_spare_neighbors():
    g = Multigraph(5)
    g.add_edge(0, 1)
    g.add_edge(0, 2)
    for u in range(1, 5):
        for v in range(u + 1, 5):
            g.add_edge(u, v)
    with pytest.raises(TooFewCenterNeighbors):
        path_cover_star(g, [(1, 2)], x=0)


@pytest.mark.parametrize("seed", range(6))
def test_path_cover_dense_random(seed):
    rng = random.Random(seed)
    n = rng.randint(16, 40)
    g = random_simple(n, 0.8, seed * 7 + 1)
    for v in range(n):
        w = 0
        while g.degree(v) * 5 < 4 * n:
            if w != v and g.multiplicity(v, w) == 0:
                g.add_edge(v, w)
            w += 1
    pairs = [(0, 1), (2, 3)]
    cover = path_cover_matching(g, pairs)
    assert check_path_cover(g, cover, pairs)
