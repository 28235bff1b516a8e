"""Equalized edge colorings via alternating-path swaps.

Three procedures, all operating in place on an :class:`EdgeColoring`:

* :func:`equalize_classes` - classic global equalization: every class ends
  up with floor(|E|/k) or ceil(|E|/k) edges.
* :func:`equalize_balanced_sides` - for a split graph whose crossing edges
  all sit at one center vertex and whose two sides carry equally many
  edges: per color, both sides end up missing the color at equally many
  vertices, and within a side the missing counts differ by at most 2.
* :func:`equalize_per_side` - same crossing structure, no edge-count
  balance required: within each side the missing counts differ by at
  most 2.

The side-aware procedures exploit that at most one alternating chain can
cross between the sides (all crossing edges share the center), which makes
a reducing swap available whenever the target is violated.
"""

from __future__ import annotations

from .coloring import SHAPE_PATH, EdgeColoring, kempe_chain, kempe_swap
from .errors import EqualizationFailed, NotTotal, PreconditionViolated
from .multigraph import Multigraph

_MAX_SWEEPS = 200_000


def equalize_classes(g: Multigraph, c: EdgeColoring) -> EdgeColoring:
    """Rebalance a total proper coloring so class sizes differ by <= 1.

    Repeatedly picks the color pair with the largest size gap and swaps a
    chain component that is a path starting and ending with the larger
    color; each swap shrinks the gap by 2.
    """
    if not c.is_total():
        raise NotTotal("equalize_classes needs a total coloring")
    for _ in range(_MAX_SWEEPS):
        sizes = [(c.class_size(col), col) for col in range(1, c.k + 1)]
        big_size, big = max(sizes)
        small_size, small = min(sizes)
        if big_size - small_size <= 1:
            return c
        if not _swap_surplus_path(g, c, big, small, restrict=None):
            raise EqualizationFailed(
                f"no surplus ({big},{small})-path despite size gap "
                f"{big_size - small_size}"
            )
    raise EqualizationFailed("sweep budget exhausted")


def _swap_surplus_path(
    g: Multigraph,
    c: EdgeColoring,
    heavy: int,
    light: int,
    restrict: set[int] | None,
) -> bool:
    """Swap one (heavy, light)-path whose end edges both carry ``heavy``.

    With ``restrict`` given, only chains all of whose vertices lie inside
    that set are eligible.  Returns False when no such component exists.
    """
    seen: set[int] = set()
    order = sorted(restrict) if restrict is not None else g.vertex_list()
    for v in order:
        if v in seen:
            continue
        if c.edge_at(v, heavy) is None or c.edge_at(v, light) is not None:
            continue  # chain endpoints with a heavy end-edge only
        chain = kempe_chain(g, c, v, heavy, light)
        seen.update(chain.vertices)
        if chain.shape != SHAPE_PATH or not chain.edges:
            continue
        if restrict is not None and not all(u in restrict for u in chain.vertices):
            continue
        if chain.edge_colors[0] == heavy and chain.edge_colors[-1] == heavy:
            kempe_swap(c, chain)
            return True
    return False


def _check_crossing_at_center(g: Multigraph, side_a: set[int], side_b: set[int]) -> None:
    centers = None
    for eid, u, v in g.edges():
        cross = (u in side_a) != (v in side_a)
        if not cross:
            continue
        ends = {u, v}
        centers = ends if centers is None else centers & ends
        if not centers:
            raise PreconditionViolated(
                "E_G(A,B)=E_G(x,B)", "crossing edges do not share a vertex"
            )


def _side_edge_counts(g: Multigraph, c: EdgeColoring, side_a: set[int]):
    """Per color: (#edges inside A, #edges inside B)."""
    a = [0] * (c.k + 1)
    b = [0] * (c.k + 1)
    for eid, col in c.assignment.items():
        u, v = g.endpoints(eid)
        if u in side_a and v in side_a:
            a[col] += 1
        elif u not in side_a and v not in side_a:
            b[col] += 1
    return a, b


def _missing_counts(c: EdgeColoring, side: set[int]) -> list[int]:
    miss = [0] * (c.k + 1)
    for v in side:
        present = c.present(v)
        for col in range(1, c.k + 1):
            if col not in present:
                miss[col] += 1
    return miss


def _swap_endpoint_missing_path(
    g: Multigraph,
    c: EdgeColoring,
    side: set[int],
    miss_color: int,
    other: int,
) -> bool:
    """Swap a path inside ``side`` whose both endpoint vertices miss
    ``miss_color`` (i.e. both end edges carry ``other``)."""
    seen: set[int] = set()
    for v in sorted(side):
        if v in seen:
            continue
        if c.edge_at(v, miss_color) is not None or c.edge_at(v, other) is None:
            continue
        chain = kempe_chain(g, c, v, miss_color, other)
        seen.update(chain.vertices)
        if chain.shape != SHAPE_PATH or not chain.edges:
            continue
        if not all(u in side for u in chain.vertices):
            continue
        tail = chain.endpoints[1] if chain.endpoints[0] == v else chain.endpoints[0]
        if chain.edge_colors[0] == other and chain.edge_colors[-1] == other:
            if tail in side:
                kempe_swap(c, chain)
                return True
    return False


def equalize_balanced_sides(g: Multigraph, c: EdgeColoring, part) -> EdgeColoring:
    """Make both sides miss every color equally often, then flatten gaps.

    Preconditions: ``part.A`` / ``part.B`` split V(g), all crossing edges
    of ``g`` share one vertex, and both sides carry the same number of
    edges.  Postconditions, for all colors i, j:
    ``|miss_A(i)| == |miss_B(i)|`` and ``| |miss_A(i)| - |miss_A(j)| | <= 2``.

    Phase 1 fixes the cross-side imbalance one unit at a time: if color i
    is overloaded inside A relative to B, either an A-side path with both
    end edges colored i or a B-side path with both end edges colored j
    (an underloaded color) must exist, because at most one chain crosses
    between the sides.  Phase 2 then runs matched within-side swaps on
    both sides at once, which leaves the cross-side balance intact.
    """
    side_a, side_b = set(part.A), set(part.B)
    if side_a | side_b != g.verts or side_a & side_b:
        raise PreconditionViolated("partition", "A, B must split the vertex set")
    if len(side_a) != len(side_b):
        raise PreconditionViolated("|A|=|B|", f"{len(side_a)} != {len(side_b)}")
    _check_crossing_at_center(g, side_a, side_b)
    a_cnt, b_cnt = _side_edge_counts(g, c, side_a)
    if sum(a_cnt) != sum(b_cnt):
        raise PreconditionViolated(
            "e(A)=e(B)", f"e(A)={sum(a_cnt)} != e(B)={sum(b_cnt)}"
        )

    # Phase 1: drive a_i == b_i for every color.
    for _ in range(_MAX_SWEEPS):
        a_cnt, b_cnt = _side_edge_counts(g, c, side_a)
        diffs = [a_cnt[i] - b_cnt[i] for i in range(c.k + 1)]
        hi = max(range(1, c.k + 1), key=lambda i: diffs[i])
        lo = min(range(1, c.k + 1), key=lambda i: diffs[i])
        if diffs[hi] <= 0 and diffs[lo] >= 0:
            break
        moved = _swap_surplus_path(g, c, hi, lo, restrict=side_a)
        if not moved:
            moved = _swap_surplus_path(g, c, lo, hi, restrict=side_b)
        if not moved:
            raise EqualizationFailed(
                f"no cross-balancing swap for colors ({hi},{lo})"
            )
    else:
        raise EqualizationFailed("phase 1 sweep budget exhausted")

    # Phase 2: flatten within-side gaps with matched swaps on both sides.
    for _ in range(_MAX_SWEEPS):
        miss = _missing_counts(c, side_a)
        hi = max(range(1, c.k + 1), key=lambda i: miss[i])
        lo = min(range(1, c.k + 1), key=lambda i: miss[i])
        if miss[hi] - miss[lo] <= 2:
            return c
        ok_a = _swap_endpoint_missing_path(g, c, side_a, hi, lo)
        ok_b = _swap_endpoint_missing_path(g, c, side_b, hi, lo)
        if not (ok_a and ok_b):
            raise EqualizationFailed(
                f"matched within-side swap unavailable for colors ({hi},{lo})"
            )
    raise EqualizationFailed("phase 2 sweep budget exhausted")


def equalize_per_side(g: Multigraph, c: EdgeColoring, part) -> EdgeColoring:
    """Flatten per-side missing-count gaps to at most 2 on each side.

    Follows the textbook swap loop: take the side and color pair with the
    widest gap; two vertices missing the overloaded color must then lie on
    one common chain (chains cross sides at most once), and swapping that
    chain shrinks the gap.
    """
    side_a, side_b = set(part.A), set(part.B)
    if side_a | side_b != g.verts or side_a & side_b:
        raise PreconditionViolated("partition", "A, B must split the vertex set")
    _check_crossing_at_center(g, side_a, side_b)

    for _ in range(_MAX_SWEEPS):
        best = None
        for side in (side_a, side_b):
            miss = _missing_counts(c, side)
            hi = max(range(1, c.k + 1), key=lambda i: miss[i])
            lo = min(range(1, c.k + 1), key=lambda i: miss[i])
            gap = miss[hi] - miss[lo]
            if best is None or gap > best[0]:
                best = (gap, side, hi, lo)
        gap, side, hi, lo = best
        if gap <= 2:
            return c
        if not _swap_endpoint_missing_path(g, c, side, hi, lo):
            raise EqualizationFailed(
                f"no within-side swap despite gap {gap} for colors ({hi},{lo})"
            )
    raise EqualizationFailed("sweep budget exhausted")
