"""Randomized balanced vertex partition and the derived split graphs.

The partition halves the vertex set, separates each prescribed pair, and
keeps every vertex's simple degree nearly balanced across the two sides
(within ``n^(2/3) - 1``).  The construction samples uniformly and retries
with chained seeds; concentration makes failure vanishingly rare except
at toy sizes, where the caller falls back.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import PartitionFailed, PreconditionViolated
from .multigraph import Multigraph


@dataclass
class Partition:
    A: set[int]
    B: set[int]
    pairs: list[tuple[int, int]]
    seed: int
    retries: int


@dataclass
class SplitGraphs:
    G_A: Multigraph
    G_B: Multigraph
    H: Multigraph
    G_AB: Multigraph
    moved_center_edges: list[int] = field(default_factory=list)


def _side_degrees(adj: dict[int, set[int]], v: int, side: set[int]) -> int:
    return sum(1 for w in adj[v] if w in side)


def balanced_partition(
    g: Multigraph,
    pairs: list[tuple[int, int]],
    seed: int,
    max_retries: int = 50,
) -> Partition:
    """Halve V(g) separating each pair, with per-vertex degree balance.

    Clause audit per attempt: |A| = |B|, |A ∩ {x_i, y_i}| = 1, and
    |d_A(v) - d_B(v)| <= n^(2/3) - 1 on the underlying simple graph.
    """
    verts = g.vertex_list()
    nv = len(verts)
    if nv % 2 != 0:
        raise PreconditionViolated("even-order", f"|V|={nv}")
    n = nv // 2
    if not (1 <= len(pairs) <= n):
        raise PreconditionViolated("pair-count", f"t={len(pairs)} not in [1,{n}]")
    flat = [v for p in pairs for v in p]
    if len(set(flat)) != len(flat) or any(v not in g.verts for v in flat):
        raise PreconditionViolated("pairs", "pair vertices must be distinct graph vertices")

    adj = {v: set(g.neighbors(v)) for v in verts}
    bound = n ** (2.0 / 3.0) - 1.0
    rest = [v for v in verts if v not in set(flat)]

    for attempt in range(max_retries):
        rng = random.Random((seed * 1_000_003 + attempt) & 0xFFFFFFFFFFFFFFFF)
        side_a: set[int] = set()
        side_b: set[int] = set()
        for xi, yi in pairs:
            if rng.random() < 0.5:
                side_a.add(xi)
                side_b.add(yi)
            else:
                side_a.add(yi)
                side_b.add(xi)
        pool = rest[:]
        rng.shuffle(pool)
        need_a = n - len(side_a)
        side_a.update(pool[:need_a])
        side_b.update(pool[need_a:])
        if len(side_a) != n or len(side_b) != n:
            continue
        ok = all(
            abs(_side_degrees(adj, v, side_a) - _side_degrees(adj, v, side_b)) <= bound
            for v in verts
        )
        if ok:
            return Partition(A=side_a, B=side_b, pairs=list(pairs), seed=seed, retries=attempt)
    raise PartitionFailed(max_retries)


def audit_partition(g: Multigraph, part: Partition) -> list[str]:
    """Re-check the three clauses from scratch; returns failure strings."""
    fails = []
    n = g.vertex_count // 2
    if len(part.A) != len(part.B):
        fails.append("|A| != |B|")
    if part.A | part.B != g.verts or part.A & part.B:
        fails.append("A,B do not partition V")
    for xi, yi in part.pairs:
        if len(part.A & {xi, yi}) != 1:
            fails.append(f"pair ({xi},{yi}) not split")
    adj = {v: set(g.neighbors(v)) for v in g.verts}
    bound = n ** (2.0 / 3.0) - 1.0
    for v in g.verts:
        gap = abs(_side_degrees(adj, v, part.A) - _side_degrees(adj, v, part.B))
        if gap > bound:
            fails.append(f"degree balance at {v}: {gap} > {bound:.2f}")
    return fails


def _multi_side_degree(g: Multigraph, v: int, side: set[int]) -> int:
    return sum(g.multiplicity(v, w) for w in g.neighbors(v) if w in side)


def adjust_for_center(
    part: Partition,
    g: Multigraph,
    x: int,
    nb_x: set[int],
    pairs: list[tuple[int, int]],
) -> Partition:
    """Normalize the partition around the multi-center.

    Ensures x in A with d_B(x) >= d_A(x) (multigraph degrees), then moves
    the members of ``nb_x`` to B with their partners moved opposite, which
    preserves the pair-splitting and the side sizes.
    """
    x1, y1 = pairs[0]
    if x1 != x:
        raise PreconditionViolated("pairs[0]", "center must be paired first")
    partner = {}
    for a, b in pairs:
        partner[a] = b
        partner[b] = a

    chosen = None
    for swap_pair in (False, True):
        for rename in (False, True):
            a_side = set(part.A)
            b_side = set(part.B)
            if swap_pair:
                if x in a_side:
                    a_side.discard(x)
                    b_side.add(x)
                    b_side.discard(y1)
                    a_side.add(y1)
                else:
                    b_side.discard(x)
                    a_side.add(x)
                    a_side.discard(y1)
                    b_side.add(y1)
            if rename:
                a_side, b_side = b_side, a_side
            if x in a_side and _multi_side_degree(g, x, b_side) >= _multi_side_degree(
                g, x, a_side
            ):
                chosen = (a_side, b_side)
                break
        if chosen:
            break
    if chosen is None:
        raise AssertionError("no orientation places x in A with d_B(x) >= d_A(x)")
    a_side, b_side = chosen

    for v in sorted(nb_x):
        if v in a_side:
            a_side.discard(v)
            b_side.add(v)
            mate = partner[v]
            b_side.discard(mate)
            a_side.add(mate)
    return Partition(A=a_side, B=b_side, pairs=list(pairs), seed=part.seed, retries=part.retries)


def build_split(
    g: Multigraph,
    part: Partition,
    x: int,
    condition: str,
) -> SplitGraphs:
    """Split into G[A], G[B], H = G[A,B], and the working union G_AB.

    G_AB receives floor((d_B(x) - d_A(x)) / 2) crossing edges at x, chosen
    round-robin over x's B-neighbors in index order.  Under condition (b)
    each neighbor contributes at most ceil(e(x,u)/2) edges; under (c) each
    contributes between floor and ceil of half its bundle.
    """
    g_a = g.induced(part.A)
    g_b = g.induced(part.B)
    h = g.bipartite_between(part.A, part.B)

    d_a = _multi_side_degree(g, x, part.A)
    d_b = _multi_side_degree(g, x, part.B)
    if d_b < d_a:
        raise PreconditionViolated("d_B(x)>=d_A(x)", f"{d_b} < {d_a}")
    quota = (d_b - d_a) // 2

    nbrs = [w for w in g.neighbors(x) if w in part.B]
    bundle = {w: g.multiplicity(x, w) for w in nbrs}
    if condition == "c":
        floors = {w: bundle[w] // 2 for w in nbrs}
    else:
        floors = {w: 0 for w in nbrs}
    if condition in ("b", "c"):
        caps = {w: (bundle[w] + 1) // 2 for w in nbrs}
    else:
        caps = {w: bundle[w] for w in nbrs}

    take = dict(floors)
    assigned = sum(take.values())
    if assigned > quota:
        raise PreconditionViolated(
            "split-quota", f"floor allocation {assigned} exceeds quota {quota}"
        )
    while assigned < quota:
        progressed = False
        for w in nbrs:
            if assigned == quota:
                break
            if take[w] < caps[w]:
                take[w] += 1
                assigned += 1
                progressed = True
        if not progressed:
            raise PreconditionViolated(
                "split-quota", f"caps too small: quota {quota}, caps {sum(caps.values())}"
            )

    moved: list[int] = []
    for w in nbrs:
        moved.extend(g.edges_between(x, w)[: take[w]])

    g_ab = g_a.union_edges(g_b)
    for eid in moved:
        u, v = g.endpoints(eid)
        g_ab.add_edge(u, v, eid)
    g_ab.verts = set(g.verts)
    g_a.verts = set(part.A)
    g_b.verts = set(part.B)

    if g_ab.degree(x) != g.degree(x) // 2:
        raise AssertionError("d_GAB(x) != floor(d_G(x)/2)")
    if g_a.edge_count + g_b.edge_count + h.edge_count != g.edge_count:
        raise AssertionError("split does not partition E(G)")
    return SplitGraphs(G_A=g_a, G_B=g_b, H=h, G_AB=g_ab, moved_center_edges=moved)
