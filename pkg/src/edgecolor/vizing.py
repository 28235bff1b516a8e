"""Edge colorings with Delta+1 colors for simple graphs and star-multigraphs.

Simple graphs get the Misra-Gries fan algorithm.  A star-multigraph is
colored by first coloring the simple part away from the multi-center and
then inserting the center's edges one by one with a center-anchored fan;
fan vertices may repeat (parallel center edges), which the shift step
tolerates because its colors are pairwise distinct and individually free.

A near star-multigraph reduces to the star case by setting aside all but
one edge of its single non-center multi-pair.
"""

from __future__ import annotations

from .coloring import EdgeColoring, kempe_chain, kempe_swap
from .errors import NotNearStar, NotStarMultigraph, StarColoringFailed
from .multigraph import (
    KIND_NEAR_STAR,
    KIND_SIMPLE,
    KIND_STAR,
    Multigraph,
    detect_star_structure,
)


def greedy_color(g: Multigraph, k: int) -> EdgeColoring:
    """First-free greedy coloring; succeeds whenever ``k >= 2*Delta - 1``."""
    c = EdgeColoring(g, k)
    for eid, u, v in g.edges():
        for col in range(1, k + 1):
            if c.misses(u, col) and c.misses(v, col):
                c.assign(eid, col)
                break
        else:
            raise StarColoringFailed(f"greedy ran out of {k} colors at edge {eid}")
    return c


# ---------------------------------------------------------------------------
# Misra-Gries on simple graphs


def _min_free(c: EdgeColoring, v: int) -> int:
    present = c._present[v]
    for col in range(1, c.k + 1):
        if col not in present:
            return col
    raise AssertionError("no free color despite k >= Delta + 1")


def _complete_round_robin(g: Multigraph, k: int) -> EdgeColoring:
    """Classic circle coloring of a complete graph: Delta+1 colors on odd
    orders, Delta colors on even orders."""
    verts = g.vertex_list()
    m = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    c = EdgeColoring(g, k)
    if m % 2 == 1:
        for eid, u, v in g.edges():
            c.assign(eid, (idx[u] + idx[v]) % m + 1)
        return c
    hub = verts[-1]
    mm = m - 1
    for eid, u, v in g.edges():
        if v == hub:
            u, v = v, u
        if u == hub:
            c.assign(eid, (2 * idx[v]) % mm + 1)
        else:
            c.assign(eid, (idx[u] + idx[v]) % mm + 1)
    return c


def misra_gries(g: Multigraph, palette: int | None = None) -> EdgeColoring:
    """Proper edge coloring of a simple graph with at most Delta+1 colors."""
    if not g.is_simple():
        raise NotStarMultigraph("misra_gries needs a simple graph")
    k = palette if palette is not None else g.max_degree() + 1
    if k < g.max_degree() + 1:
        raise ValueError("palette below Delta + 1")
    m = g.vertex_count
    if g.edge_count == m * (m - 1) // 2 and m >= 2:
        return _complete_round_robin(g, k)
    c = EdgeColoring(g, k)
    present = c._present
    eid_of: dict[tuple[int, int], int] = {}
    for eid, u, v in g.edges():
        eid_of[(u, v)] = eid
        eid_of[(v, u)] = eid

    for eid in g.edge_ids():
        u, v = g.endpoints(eid)
        # Maximal fan at u starting from v.
        fan = [v]
        used = {v}
        while True:
            last_present = present[fan[-1]]
            ext = None
            for col, e2 in present[u].items():
                if col not in last_present:
                    w = g.other_end(e2, u)
                    if w not in used:
                        ext = w
                        break
            if ext is None:
                break
            fan.append(ext)
            used.add(ext)
        cc = _min_free(c, u)
        dd = _min_free(c, fan[-1])
        if cc != dd:
            chain = kempe_chain(g, c, u, dd, cc)
            kempe_swap(c, chain)
        # u now misses dd; rotate the longest valid fan prefix whose last
        # vertex also misses dd.
        placed = False
        for j, w in enumerate(fan):
            if j > 0:
                col = c.color_of(eid_of[(u, w)])
                if col is None or col in present[fan[j - 1]]:
                    break  # prefix stops being a fan here
            if dd not in present[w]:
                shift = [c.unassign(eid_of[(u, ww)]) for ww in fan[1 : j + 1]]
                for ww, col in zip(fan[:j], shift):
                    c.assign(eid_of[(u, ww)], col)
                c.assign(eid_of[(u, w)], dd)
                placed = True
                break
        if not placed:
            raise AssertionError("misra-gries found no rotatable fan prefix")
    return c


# ---------------------------------------------------------------------------
# Star-multigraph coloring


def _shift_center_fan(
    c: EdgeColoring,
    fan_edges: list[int],
    fan_colors: list[int | None],
    upto: int,
    final: int,
) -> None:
    """Give edge i the color of edge i+1 along the fan, then color the last.

    Valid even when fan vertices repeat: the shifted colors are pairwise
    distinct and each was recorded free at its target vertex, and no swap
    since recording has touched colors outside the swap pair.
    """
    for eid in fan_edges[1 : upto + 1]:
        c.unassign(eid)
    for i in range(upto):
        c.assign(fan_edges[i], fan_colors[i + 1])
    c.assign(fan_edges[upto], final)


def _insert_center_edge(g: Multigraph, c: EdgeColoring, eid: int, x: int) -> bool:
    """Color one uncolored center edge, recoloring as needed.

    Returns False only when every fan/chain resolution was blocked; the
    coloring is left proper either way.
    """
    v = g.other_end(eid, x)
    common = sorted(c.missing(x) & c.missing(v))
    if common:
        c.assign(eid, common[0])
        return True

    fan_edges = [eid]
    fan_verts = [v]
    fan_colors: list[int | None] = [None]
    used_colors: set[int] = set()
    in_fan = {eid}

    for _ in range(g.degree(x) + 2):
        vj = fan_verts[-1]
        grow_to = None
        collisions: list[int] = []
        for beta in sorted(c.missing(vj)):
            if c.misses(x, beta):
                _shift_center_fan(c, fan_edges, fan_colors, len(fan_edges) - 1, beta)
                return True
            beta_edge = c.edge_at(x, beta)  # exists: beta is present at x
            if beta not in used_colors and beta_edge not in in_fan:
                if grow_to is None:
                    grow_to = (beta, beta_edge)
            elif beta in used_colors:
                collisions.append(beta)
        if grow_to is not None:
            beta, beta_edge = grow_to
            fan_edges.append(beta_edge)
            fan_verts.append(g.other_end(beta_edge, x))
            fan_colors.append(beta)
            used_colors.add(beta)
            continue
        for beta in collisions:
            i = fan_colors.index(beta)
            w = fan_verts[i - 1]  # the fan vertex whose recorded free color is beta
            last = len(fan_edges) - 1
            for alpha in sorted(c.missing(x)):
                if c.misses(vj, alpha):
                    _shift_center_fan(c, fan_edges, fan_colors, last, alpha)
                    return True
                chain = kempe_chain(g, c, vj, alpha, beta)
                if x not in chain.vertices:
                    kempe_swap(c, chain)
                    if w != vj and w not in chain.vertices:
                        # beta is still free at w, so the full shift stays valid.
                        _shift_center_fan(c, fan_edges, fan_colors, last, alpha)
                    else:
                        # The swap reached w (or w is vj itself): stop the
                        # shift at w, whose missing set now contains alpha.
                        _shift_center_fan(c, fan_edges, fan_colors, i - 1, alpha)
                    return True
                if w == vj:
                    continue  # vj's chain ends at x and w offers no second chain
                if c.misses(w, alpha):
                    _shift_center_fan(c, fan_edges, fan_colors, i - 1, alpha)
                    return True
                chain2 = kempe_chain(g, c, w, alpha, beta)
                if x in chain2.vertices:
                    continue  # cannot happen for a proper coloring; stay safe
                kempe_swap(c, chain2)
                _shift_center_fan(c, fan_edges, fan_colors, i - 1, alpha)
                return True
        return False
    return False


def star_multigraph_color(g: Multigraph, palette: int | None = None) -> EdgeColoring:
    """Proper edge coloring of a star-multigraph with at most Delta+1 colors."""
    profile = detect_star_structure(g)
    if profile.kind == KIND_SIMPLE:
        return misra_gries(g, palette)
    if profile.kind != KIND_STAR:
        raise NotStarMultigraph(f"structure is {profile.kind}")
    x = profile.center
    k = palette if palette is not None else g.max_degree() + 1
    if k < g.max_degree() + 1:
        raise ValueError("palette below Delta + 1")

    base = misra_gries(g.without_vertices([x]), k)
    c = EdgeColoring(g, k)
    for eid, col in base.assignment.items():
        c.assign(eid, col)

    pending = sorted(g.incident_edges(x), key=lambda e: (g.other_end(e, x), e))
    for round_no in range(1 + 4 * len(pending)):
        stuck: list[int] = []
        for eid in pending:
            if not _insert_center_edge(g, c, eid, x):
                stuck.append(eid)
        if not stuck:
            return c
        if len(stuck) == len(pending):
            # A failed insertion leaves the coloring untouched, so a plain
            # retry would repeat itself; perturb with a harmless Kempe swap
            # near the stuck edge before the next round.
            vj = g.other_end(stuck[0], x)
            pres = sorted(c.present(vj) - set(c.color_of(e) for e in g.incident_edges(x)))
            miss = sorted(c.missing(vj))
            if pres and miss:
                pick = pres[round_no % len(pres)]
                chain = kempe_chain(g, c, vj, miss[0], pick)
                if x not in chain.vertices:
                    kempe_swap(c, chain)
            stuck = stuck[1:] + stuck[:1]
        pending = stuck
    raise StarColoringFailed(f"{len(pending)} center edges left after retries")


def near_star_color(g: Multigraph, palette: int | None = None) -> EdgeColoring:
    """Color a near star-multigraph with at most max(Delta+e(y,z), Delta+1)
    colors: set aside all but one (y,z)-parallel, color the star remainder,
    then place the spares in shared free colors or fresh ones."""
    profile = detect_star_structure(g)
    if profile.kind in (KIND_SIMPLE, KIND_STAR):
        return star_multigraph_color(g, palette)
    if profile.kind != KIND_NEAR_STAR:
        raise NotNearStar(f"structure is {profile.kind}")
    y, z = profile.residual_pair
    bundle = g.edges_between(y, z)
    spares = bundle[1:]
    reduced = g.without_edges(spares)
    c = star_multigraph_color(reduced, palette)
    full = EdgeColoring(g, c.k)
    for eid, col in c.assignment.items():
        full.assign(eid, col)
    for eid in spares:
        shared = sorted(full.missing(y) & full.missing(z))
        if shared:
            full.assign(eid, shared[0])
        else:
            full.extend_palette(full.k + 1)
            full.assign(eid, full.k)
    bound = max(g.max_degree() + len(bundle), g.max_degree() + 1)
    if full.k > bound:
        raise AssertionError(f"near-star coloring exceeded bound: {full.k} > {bound}")
    return full
