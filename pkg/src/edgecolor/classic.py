"""Constructive classical results the coloring pipeline leans on.

Degree-sequence realization, Dirac-style Hamiltonian cycles via closure
reversal, perfect matchings in dense and bipartite graphs, exact
bipartite edge coloring, and spanning path covers with prescribed
endpoint pairs.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .coloring import EdgeColoring
from .errors import (
    CoverFailed,
    DegreeSequenceInfeasible,
    NoPerfectMatching,
    NotBipartite,
    PreconditionViolated,
    TooFewCenterNeighbors,
)
from .multigraph import Multigraph

# ---------------------------------------------------------------------------
# Degree sequences


def hakimi_realize(degrees: list[int]) -> Multigraph:
    """Realize a non-increasing degree sequence as a labeled multigraph.

    Feasible iff the sum is even and the largest degree is at most the sum
    of the others; the construction repeatedly joins the two largest
    remaining degrees, which preserves feasibility.
    """
    if any(d < 0 for d in degrees):
        raise PreconditionViolated("degrees", "entries must be nonnegative")
    if any(a < b for a, b in zip(degrees, degrees[1:])):
        raise PreconditionViolated("degrees", "sequence must be non-increasing")
    total = sum(degrees)
    if total % 2 != 0:
        raise DegreeSequenceInfeasible("OddSum")
    if degrees and 2 * degrees[0] > total:
        raise DegreeSequenceInfeasible("DominantDegree")
    g = Multigraph(len(degrees))
    heap = [(-d, v) for v, d in enumerate(degrees) if d > 0]
    heapq.heapify(heap)
    while heap:
        d1, u = heapq.heappop(heap)
        if not heap:
            raise AssertionError("greedy pairing stranded a positive degree")
        d2, v = heapq.heappop(heap)
        g.add_edge(u, v)
        if d1 + 1 < 0:
            heapq.heappush(heap, (d1 + 1, u))
        if d2 + 1 < 0:
            heapq.heappush(heap, (d2 + 1, v))
    return g


# ---------------------------------------------------------------------------
# Hamiltonian cycles (Dirac regime)


def _simple_adj(g: Multigraph) -> dict[int, set[int]]:
    return {v: set(g.neighbors(v)) for v in g.verts}


def check_hamiltonian_cycle(g: Multigraph, cycle: list[int]) -> bool:
    verts = g.verts
    if len(cycle) != len(verts) or set(cycle) != verts:
        return False
    if len(cycle) < 3:
        return False
    return all(
        g.multiplicity(cycle[i], cycle[(i + 1) % len(cycle)]) > 0
        for i in range(len(cycle))
    )


def dirac_hamiltonian(g: Multigraph) -> list[int]:
    """Hamiltonian cycle of a graph with min degree >= |V|/2.

    Builds the Bondy-Chvatal closure (complete under the Dirac condition),
    takes the trivial Hamiltonian cycle of the closure, then removes the
    closure edges last-in-first-out, repairing the cycle with a crossing
    chord each time.  The result is verified before it is returned.
    """
    verts = g.vertex_list()
    nv = len(verts)
    if nv < 3:
        raise PreconditionViolated("n>=3", f"|V|={nv}")
    adj = _simple_adj(g)
    if min(len(adj[v]) for v in verts) * 2 < nv:
        raise PreconditionViolated(
            "dirac", f"min degree {min(len(adj[v]) for v in verts)} < |V|/2={nv / 2}"
        )

    added: list[tuple[int, int]] = []
    # Closure: saturate pairs with degree sum >= nv.  Under Dirac every
    # non-adjacent pair qualifies immediately, so one pass suffices.
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            if v not in adj[u] and len(adj[u]) + len(adj[v]) >= nv:
                adj[u].add(v)
                adj[v].add(u)
                added.append((u, v))
    for u in verts:
        if len(adj[u]) != nv - 1:
            raise PreconditionViolated("closure", "closure is not complete")

    cycle = list(verts)
    pos = {v: i for i, v in enumerate(cycle)}
    for (u, v) in reversed(added):
        adj[u].discard(v)
        adj[v].discard(u)
        i, j = pos[u], pos[v]
        if (i - j) % nv != 1 and (j - i) % nv != 1:
            continue  # cycle does not use the removed edge
        # Orient so v sits right after u, then unroll backwards from u;
        # that walks the whole cycle and ends at v.
        if (j - i) % nv != 1:
            u, v = v, u
            i, j = j, i
        path = [cycle[(i - t) % nv] for t in range(nv)]
        assert path[0] == u and path[-1] == v
        pick = None
        for t in range(1, nv - 1):
            if path[t] in adj[v] and path[t + 1] in adj[u]:
                pick = t
                break
        if pick is None:
            raise AssertionError("crossing chord must exist when degree sum >= |V|")
        cycle = path[: pick + 1] + path[pick + 1 :][::-1]
        pos = {w: t for t, w in enumerate(cycle)}

    if not check_hamiltonian_cycle(g, cycle):
        raise AssertionError("constructed cycle failed verification")
    return cycle


# ---------------------------------------------------------------------------
# Perfect matchings


def check_matching(g: Multigraph, edge_ids: list[int], perfect: bool = True) -> bool:
    used: set[int] = set()
    for eid in edge_ids:
        if not g.has_edge_id(eid):
            return False
        u, v = g.endpoints(eid)
        if u in used or v in used:
            return False
        used.update((u, v))
    return (used == g.verts) if perfect else True


def _brute_perfect_matching(g: Multigraph, verts: list[int]) -> list[int] | None:
    if not verts:
        return []
    u = verts[0]
    for v in g.neighbors(u):
        if v not in verts:
            continue
        rest = [w for w in verts if w not in (u, v)]
        sub = _brute_perfect_matching(g, rest)
        if sub is not None:
            return [g.edges_between(u, v)[0]] + sub
    return None


def perfect_matching_dense(g: Multigraph) -> list[int]:
    """Perfect matching when all but at most one vertex have degree > |V|/2.

    Pairs the minimum-degree vertex with a neighbor, finds a Hamiltonian
    cycle of the rest (Dirac applies), and takes alternate cycle edges.
    """
    verts = g.vertex_list()
    nv = len(verts)
    if nv % 2 != 0:
        raise PreconditionViolated("even-order", f"|V|={nv}")
    if nv == 0:
        return []
    degs = {v: g.degree(v) for v in verts}
    if min(degs.values()) < 1:
        raise PreconditionViolated("min-degree", "isolated vertex")
    low = [v for v in verts if degs[v] < nv // 2 + 1]
    if len(low) > 1:
        raise PreconditionViolated(
            "degree-floor", f"{len(low)} vertices below |V|/2+1"
        )
    if nv <= 8:
        m = _brute_perfect_matching(g, verts)
        if m is None:
            raise NoPerfectMatching("no perfect matching in small host")
        return m
    u = min(verts, key=lambda v: (degs[v], v))
    v = g.neighbors(u)[0]
    rest = g.without_vertices([u, v])
    cycle = dirac_hamiltonian(rest)
    matching = [g.edges_between(u, v)[0]]
    for i in range(0, len(cycle), 2):
        a, b = cycle[i], cycle[i + 1]
        matching.append(g.edges_between(a, b)[0])
    if not check_matching(g, matching):
        raise AssertionError("dense matching failed verification")
    return matching


def hopcroft_karp(adj: dict[int, list[int]], left: list[int]) -> dict[int, int]:
    """Maximum matching of a bipartite graph given left-side adjacency.

    Returns ``left vertex -> right vertex``.  Neighbor lists are scanned
    in the given order, so the result is deterministic.
    """
    INF = float("inf")
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        queue: deque[int] = deque()
        for u in left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        while queue:
            u = queue.popleft()
            for w in adj.get(u, ()):
                nxt = match_r.get(w)
                if nxt is None:
                    found = True
                elif dist[nxt] == INF:
                    dist[nxt] = dist[u] + 1
                    queue.append(nxt)
        return found

    def dfs(u: int) -> bool:
        for w in adj.get(u, ()):
            nxt = match_r.get(w)
            if nxt is None or (dist[nxt] == dist[u] + 1 and dfs(nxt)):
                match_l[u] = w
                match_r[w] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if u not in match_l:
                dfs(u)
    return match_l


def perfect_matching_bipartite_star(
    g: Multigraph,
    left: list[int],
    right: list[int],
    center: int | None = None,
    t: int | None = None,
) -> list[int]:
    """Perfect matching of a bipartite multigraph, center matched first.

    With a center x: x is matched to a neighbor y, then a maximum matching
    of the remainder must saturate it (candidate y's are tried in index
    order).  ``t`` enables the documented degree preconditions.
    """
    ls, rs = set(left), set(right)
    if ls & rs or (ls | rs) != g.verts:
        raise PreconditionViolated("sides", "left/right must split the vertex set")
    if len(ls) != len(rs):
        raise NoPerfectMatching(f"side sizes differ: {len(ls)} vs {len(rs)}")
    for _, u, v in g.edges():
        if (u in ls) == (v in ls):
            raise PreconditionViolated("bipartite", f"edge inside one side: ({u},{v})")
    if t is not None:
        if g.min_degree() < 1:
            raise PreconditionViolated("min-degree", "isolated vertex")
        if center is not None:
            gx = g.without_vertices([center])
            if gx.vertex_count and gx.min_degree() < t:
                raise PreconditionViolated("delta(G-x)>=t", f"{gx.min_degree()} < {t}")
        half = len(ls) / 2 + 1
        weak = [v for v in g.vertex_list() if g.simple_degree(v) < half]
        if len(weak) > t:
            raise PreconditionViolated(
                "simple-degree-floor", f"{len(weak)} vertices below n/2+1"
            )

    def solve(l_side: list[int], r_side: list[int]) -> dict[int, int] | None:
        adj = {u: [w for w in g.neighbors(u) if w in set(r_side)] for u in l_side}
        m = hopcroft_karp(adj, sorted(l_side))
        return m if len(m) == len(l_side) else None

    if center is None or center not in g.verts:
        m = solve(sorted(ls), sorted(rs))
        if m is None:
            raise NoPerfectMatching("bipartite host has no perfect matching")
        return [g.edges_between(u, w)[0] for u, w in sorted(m.items())]

    if center in rs:
        ls, rs = rs, ls
    for y in g.neighbors(center):
        m = solve(sorted(ls - {center}), sorted(rs - {y}))
        if m is not None:
            m[center] = y
            return [g.edges_between(u, w)[0] for u, w in sorted(m.items())]
    raise NoPerfectMatching("no center choice extends to a perfect matching")


# ---------------------------------------------------------------------------
# Bipartite edge coloring (exact)


def bipartition(g: Multigraph) -> tuple[set[int], set[int]]:
    color: dict[int, int] = {}
    left: set[int] = set()
    right: set[int] = set()
    for start in g.vertex_list():
        if start in color:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            (left if color[u] == 0 else right).add(u)
            for w in g.neighbors(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NotBipartite(f"odd walk through ({u},{w})")
    return left, right


def _euler_split(g: Multigraph) -> tuple[Multigraph, Multigraph]:
    """Split an all-even-degrees bipartite multigraph into two halves.

    Runs a Hierholzer tour over each component and alternates tour edges
    between the halves.  Bipartite components with all degrees even have
    an even edge count, so every degree splits exactly in half.
    """
    g1 = Multigraph(g.n, g.verts)
    g2 = Multigraph(g.n, g.verts)
    remaining: dict[int, dict[int, list[int]]] = {
        v: {w: sorted(ids, reverse=True) for w, ids in g._adj[v].items()}
        for v in g.verts
    }

    def take_edge(u: int):
        nbrs = remaining[u]
        for w in sorted(nbrs):
            ids = nbrs[w]
            if ids:
                eid = ids.pop()
                remaining[w][u].remove(eid)
                return eid, w
            del nbrs[w]
        return None

    for start in g.vertex_list():
        if not any(remaining[start].values()):
            continue
        # Hierholzer with an explicit vertex stack; edges come out in
        # reverse tour order, which is fine for alternation.
        tour: list[int] = []
        stack: list[tuple[int, int | None]] = [(start, None)]
        while stack:
            cur, via = stack[-1]
            step = take_edge(cur)
            if step is None:
                stack.pop()
                if via is not None:
                    tour.append(via)
            else:
                eid, nxt = step
                stack.append((nxt, eid))
        for idx, eid in enumerate(tour):
            u, v = g.endpoints(eid)
            (g1 if idx % 2 == 0 else g2).add_edge(u, v, eid)
    if g1.edge_count != g2.edge_count:
        raise AssertionError("euler split produced uneven halves")
    return g1, g2


def konig_color(g: Multigraph) -> EdgeColoring:
    """Proper edge coloring of a bipartite multigraph with exactly Delta colors.

    Pads the graph to a Delta-regular bipartite multigraph, then recursively
    Euler-splits it, peeling one perfect matching whenever the current
    degree is odd.
    """
    left, right = bipartition(g)
    delta = g.max_degree()
    coloring = EdgeColoring(g, delta)
    if delta == 0:
        return coloring

    size = max(len(left), len(right), 1)
    pad = g.grown(2 * size - len(left) - len(right))
    fresh = list(range(g.n, pad.n))
    lpad = sorted(left) + fresh[: size - len(left)]
    rpad = sorted(right) + fresh[size - len(left) :]
    l_open = [u for u in lpad for _ in range(delta - pad.degree(u))]
    r_open = [w for w in rpad for _ in range(delta - pad.degree(w))]
    if len(l_open) != len(r_open):
        raise AssertionError("padding imbalance")
    for u, w in zip(l_open, r_open):
        pad.add_edge(u, w)

    def color_regular(h: Multigraph, colors: list[int]) -> None:
        d = h.max_degree()
        if d == 0:
            return
        if d != len(colors):
            raise AssertionError("palette size mismatch")
        if d % 2 == 1:
            adj = {u: list(h.neighbors(u)) for u in lpad}
            m = hopcroft_karp(adj, lpad)
            if len(m) != len(lpad):
                raise AssertionError("regular bipartite graph must have a 1-factor")
            picked = [h.edges_between(u, w)[0] for u, w in sorted(m.items())]
            for eid in picked:
                if g.has_edge_id(eid):
                    coloring.assign(eid, colors[0])
            color_regular(h.without_edges(picked), colors[1:])
        else:
            h1, h2 = _euler_split(h)
            color_regular(h1, colors[: d // 2])
            color_regular(h2, colors[d // 2 :])

    color_regular(pad, list(range(1, delta + 1)))
    if not coloring.is_total():
        raise AssertionError("konig coloring left edges uncolored")
    return coloring


# ---------------------------------------------------------------------------
# Spanning path covers with prescribed endpoints


@dataclass
class PathCover:
    paths: list[list[int]]
    endpoints: list[tuple[int, int]]


def check_path_cover(g: Multigraph, cover: PathCover, pairs: list[tuple[int, int]]) -> bool:
    seen: set[int] = set()
    if len(cover.paths) != len(pairs):
        return False
    for path, (a, b) in zip(cover.paths, pairs):
        if not path or path[0] != a or path[-1] != b:
            return False
        for u, v in zip(path, path[1:]):
            if g.multiplicity(u, v) == 0:
                return False
        if seen & set(path) or len(set(path)) != len(path):
            return False
        seen.update(path)
    return seen == g.verts


def _anchored_ham_path(
    adj: dict[int, set[int]], inner: set[int], anchor: int, target: int
) -> list[int] | None:
    """Spanning path of ``inner`` from ``anchor`` whose far end sees ``target``.

    Greedy extension plus Posa-style rotations with the anchor held fixed.
    Deterministic; returns None when the rotation search is exhausted.
    """
    path = [anchor]
    on_path = {anchor}
    while True:
        u = path[-1]
        ext = next((w for w in sorted(adj[u]) if w in inner and w not in on_path), None)
        if ext is not None:
            path.append(ext)
            on_path.add(ext)
            continue
        if len(path) == len(inner) and target in adj[path[-1]]:
            return path
        # Rotation BFS over reachable far ends of this fixed vertex set.
        best: dict[int, list[int]] = {path[-1]: path}
        queue = deque([path[-1]])
        improved = None
        while queue and improved is None:
            far = queue.popleft()
            p = best[far]
            idx = {w: i for i, w in enumerate(p)}
            for w in sorted(adj[far]):
                i = idx.get(w)
                if i is None or i >= len(p) - 2:
                    continue
                newp = p[: i + 1] + p[i + 1 :][::-1]
                newfar = newp[-1]
                if newfar in best:
                    continue
                best[newfar] = newp
                queue.append(newfar)
                if len(newp) == len(inner) and target in adj[newfar]:
                    return newp
                if any(z in inner and z not in on_path for z in adj[newfar]):
                    improved = newp
                    break
        if improved is None:
            return None
        path = improved
        # loop continues: greedy extension from the new far end


def path_cover_matching(
    g: Multigraph,
    pairs: list[tuple[int, int]],
    epsilon: float | None = None,
) -> PathCover:
    """Vertex-disjoint paths joining each (a_i, b_i), jointly spanning V(g).

    All but the last pair get short routes through so-far-unused vertices;
    the last pair absorbs everything that remains via an anchored
    rotation-extension Hamiltonian path search.  Raises CoverFailed when
    the search gives up (callers treat that as a fallback trigger).
    """
    if not pairs:
        if g.vertex_count == 0:
            return PathCover(paths=[], endpoints=[])
        raise PreconditionViolated("pairs", "no pairs but vertices remain")
    flat = [v for p in pairs for v in p]
    if len(set(flat)) != len(flat):
        raise PreconditionViolated("pairs", "endpoint vertices must be disjoint")
    for v in flat:
        if v not in g.verts:
            raise PreconditionViolated("pairs", f"vertex {v} not in graph")
    if epsilon is not None:
        nv = g.vertex_count
        if g.min_degree() < (1 + epsilon) * nv / 2:
            raise PreconditionViolated(
                "delta>=(1+eps)n/2", f"{g.min_degree()} < {(1 + epsilon) * nv / 2:.1f}"
            )
        if len(pairs) > epsilon * nv / 8:
            raise PreconditionViolated("|M|<=eps*n/8", f"{len(pairs)} pairs")

    adj = _simple_adj(g)
    free = set(g.verts) - set(flat)
    paths: list[list[int]] = []
    for a, b in pairs[:-1]:
        if b in adj[a]:
            paths.append([a, b])
            continue
        w = next((u for u in sorted(adj[a] & adj[b]) if u in free), None)
        if w is not None:
            free.discard(w)
            paths.append([a, w, b])
            continue
        hop = None
        for w1 in sorted(adj[a]):
            if w1 not in free:
                continue
            w2 = next(
                (u for u in sorted(adj[w1] & adj[b]) if u in free and u != w1), None
            )
            if w2 is not None:
                hop = [a, w1, w2, b]
                break
        if hop is None:
            raise CoverFailed(f"no short route for pair ({a},{b})")
        free.difference_update(hop[1:-1])
        paths.append(hop)

    a, b = pairs[-1]
    inner = free | {a}
    if len(inner) == 1:
        if b not in adj[a]:
            raise CoverFailed(f"final pair ({a},{b}) not adjacent")
        paths.append([a, b])
    else:
        spine = _anchored_ham_path(adj, inner, a, b)
        if spine is None:
            raise CoverFailed(f"no spanning path for final pair ({a},{b})")
        paths.append(spine + [b])

    cover = PathCover(paths=paths, endpoints=list(pairs))
    if not check_path_cover(g, cover, list(pairs)):
        raise AssertionError("path cover failed self-audit")
    return cover


def path_cover_star(
    g: Multigraph,
    pairs: list[tuple[int, int]],
    x: int,
    epsilon: float | None = None,
    eta: float | None = None,
) -> PathCover:
    """Path cover of a star-multigraph: remove the center, cover, splice back.

    If x is itself a pair endpoint its pair is rerouted through one fresh
    center neighbor; otherwise the last pair is split around x using two
    fresh center neighbors.
    """
    if eta is not None and g.mu_of(x) >= eta * g.vertex_count:
        raise PreconditionViolated("mu(x)<eta*n", f"mu(x)={g.mu_of(x)}")
    if epsilon is not None:
        nv = g.vertex_count
        if g.min_degree() < (1 + epsilon) * nv / 2:
            raise PreconditionViolated("delta>=(1+eps)n/2", f"{g.min_degree()}")
        if len(pairs) > epsilon * nv / 13:
            raise PreconditionViolated("|M|<=eps*n/13", f"{len(pairs)} pairs")
    ends = {v for p in pairs for v in p}
    spare = [w for w in g.neighbors(x) if w not in ends]
    if len(spare) < 2:
        raise TooFewCenterNeighbors(f"|N(x) - endpoints| = {len(spare)}")

    order = list(pairs)
    if x in ends:
        t = next(i for i, p in enumerate(order) if x in p)
        order.append(order.pop(t))
        a, b = order[-1]
        if a != x:
            a, b = b, a
        stand_in = spare[0]
        sub_pairs = order[:-1] + [(stand_in, b)]
        sub = path_cover_matching(g.without_vertices([x]), sub_pairs, epsilon=None)
        paths = sub.paths[:-1] + [[x] + sub.paths[-1]]
        cover = PathCover(paths=paths, endpoints=order[:-1] + [(x, b)])
        if not check_path_cover(g, cover, order[:-1] + [(x, b)]):
            raise AssertionError("star cover failed self-audit")
        return cover

    a, b = order[-1]
    x1, x2 = spare[0], spare[1]
    sub_pairs = order[:-1] + [(a, x1), (x2, b)]
    sub = path_cover_matching(g.without_vertices([x]), sub_pairs, epsilon=None)
    merged = sub.paths[-2] + [x] + sub.paths[-1]
    paths = sub.paths[:-2] + [merged]
    cover = PathCover(paths=paths, endpoints=order)
    if not check_path_cover(g, cover, order):
        raise AssertionError("star cover failed self-audit")
    return cover
