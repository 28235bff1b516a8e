import random

import pytest

from edgecolor.coloring import EdgeColoring
from edgecolor.multigraph import Multigraph, build_multigraph


def random_simple(n: int, p: float, seed: int) -> Multigraph:
    rng = random.Random(seed)
    g = Multigraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def complete(n: int) -> Multigraph:
    return build_multigraph(n, [(u, v, 1) for u in range(n) for v in range(u + 1, n)])


def cycle(n: int) -> Multigraph:
    return build_multigraph(n, [(i, (i + 1) % n, 1) for i in range(n)])


def petersen() -> Multigraph:
    edges = [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
        (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
        (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
    ]
    return build_multigraph(10, [(u, v, 1) for u, v in edges])


def petersen_minus_vertex() -> Multigraph:
    return petersen().without_vertices([9])


def greedy_coloring(g: Multigraph, k: int) -> EdgeColoring:
    c = EdgeColoring(g, k)
    for eid, u, v in g.edges():
        for col in range(1, k + 1):
            if c.misses(u, col) and c.misses(v, col):
                c.assign(eid, col)
                break
        else:
            raise RuntimeError("greedy needs a bigger palette")
    return c


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def k7():
    return complete(7)
