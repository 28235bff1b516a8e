"""Delta edge coloring of dense near star-multigraphs of even order.

Given a near star-multigraph satisfying one of five density/structure
conditions (a)-(e), the engine colors it with exactly Delta colors in four
steps: (1) color the within-side union G_AB of a balanced partition and
equalize the per-side missing counts, (2) grow every color class into a
perfect matching by exchanging short alternating paths through the
crossing edges, (3) color the uncolored side edges with a few fresh colors
and extend those classes across the bipartite middle, (4) finish the
remaining crossing edges, which form a bipartite graph of bounded degree.

Every inequality the construction relies on is evaluated as a named guard
and recorded in the trace.  Guards whose failure only weakens the
asymptotic accounting do not stop the run (the object searches are
primary); when a needed object is genuinely missing the engine raises,
and the caller falls back to a Delta+1-style coloring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .coloring import EdgeColoring, parity_audit, verify_proper
from .equalize import equalize_balanced_sides, equalize_classes, equalize_per_side
from .errors import (
    EdgeColorError,
    GuardFailed,
    MatchingFailed,
    NoAlternatingPath,
    NoEligibleNeighbor,
    NoGoodEdge,
    NoPerfectMatching,
    PreconditionViolated,
)
from .classic import konig_color, perfect_matching_bipartite_star
from .multigraph import KIND_NOT_NEAR_STAR, Multigraph, detect_star_structure
from .partition import Partition, adjust_for_center, balanced_partition, build_split
from .trace import PipelineTrace
from .vizing import near_star_color

CONDITIONS = ("a", "b", "c", "d", "e")


@dataclass
class EngineParams:
    epsilon: float
    eta: float
    seed: int = 0
    strict_guards: bool = False
    partition_retries: int = 50

    def __post_init__(self):
        if not (0 < self.epsilon < 1):
            raise ValueError("epsilon must lie in (0,1)")
        if not (0 < self.eta):
            raise ValueError("eta must be positive")


@dataclass
class EngineState:
    g: Multigraph
    params: EngineParams
    trace: PipelineTrace
    x: int
    n_half: int
    condition: str = ""
    cond_ctx: dict = field(default_factory=dict)
    pairs: list[tuple[int, int]] = field(default_factory=list)
    nb_x: set[int] = field(default_factory=set)
    part: Optional[Partition] = None
    g_star: Optional[Multigraph] = None
    gab_star: Optional[Multigraph] = None
    h_edges: set[int] = field(default_factory=set)
    side_a_edges: set[int] = field(default_factory=set)
    side_b_edges: set[int] = field(default_factory=set)
    k: int = 0
    s_bound: float = 0.0
    r_bound: float = 0.0
    ell: int = 0
    coloring: Optional[EdgeColoring] = None
    S: set[int] = field(default_factory=set)
    S_A: set[int] = field(default_factory=set)
    S_B: set[int] = field(default_factory=set)
    U: set[int] = field(default_factory=set)
    missing_after_step1: dict[int, int] = field(default_factory=dict)
    colored_h_at: dict[int, int] = field(default_factory=dict)
    r_a: set[int] = field(default_factory=set)
    r_b: set[int] = field(default_factory=set)
    r_deg: dict[int, int] = field(default_factory=dict)
    mcc_pairs: dict[int, list[list[int]]] = field(default_factory=dict)
    originated: list[tuple[int, int]] = field(default_factory=list)

    @property
    def side_a(self) -> set[int]:
        return self.part.A

    @property
    def side_b(self) -> set[int]:
        return self.part.B

    @property
    def s_a_star(self) -> set[int]:
        return self.S_A | {self.x}

    @property
    def s_b_star(self) -> set[int]:
        return self.S_B | self.nb_x


@dataclass
class DcolorResult:
    verdict: str  # "Colored" or "Fallback"
    coloring: EdgeColoring
    trace: PipelineTrace
    condition: str = ""

    @property
    def colors_used(self) -> int:
        return len(self.coloring.used_colors())


# ---------------------------------------------------------------------------
# Condition classification


def _center_of(g: Multigraph) -> Optional[int]:
    profile = detect_star_structure(g)
    if profile.kind == KIND_NOT_NEAR_STAR:
        return None
    if profile.center is not None:
        return profile.center
    return min(g.verts)


def classify_condition(
    g: Multigraph, params: EngineParams, trace: Optional[PipelineTrace] = None
) -> tuple[Optional[str], int, dict]:
    """First matching condition (a)-(e), its center, and named context.

    Every sub-clause of every condition is evaluated and logged; the
    returned context carries the special vertices (y, z) where relevant.
    """
    trace = trace if trace is not None else PipelineTrace()
    profile = detect_star_structure(g)
    if profile.kind == KIND_NOT_NEAR_STAR:
        raise PreconditionViolated("near-star", "two multi-pairs avoid every vertex")
    x = _center_of(g)
    n = g.vertex_count // 2
    eps, eta = params.epsilon, params.eta
    delta = g.max_degree()
    dmin = g.min_degree()
    degs = g.degrees()
    sdeg = {v: g.simple_degree(v) for v in g.verts}
    gx = g.without_vertices([x])
    dmin_x = gx.min_degree() if gx.vertex_count else 0
    is_star = profile.kind in ("Simple", "Star")
    regular = delta == dmin
    root_n = math.sqrt(n)
    u_set = {v for v in g.verts if delta - degs[v] >= eta * n}

    def log(cond: str, clause: str, lhs, rhs, passed: bool) -> bool:
        trace.check(f"classify.{cond}", clause, lhs, rhs, passed)
        return passed

    ctx: dict = {"U": u_set, "profile": profile}

    ok_a = all(
        [
            log("a", "star-multigraph", profile.kind, "Star/Simple", is_star),
            log("a", "regular", delta, dmin, regular),
            log("a", "delta(G)>=delta(G-x)", dmin, dmin_x, dmin >= dmin_x),
            log("a", "delta(G-x)>=(1+eps/2)n", dmin_x, (1 + eps / 2) * n, dmin_x >= (1 + eps / 2) * n),
            log("a", "mu(x)<eta*n", g.mu_of(x), eta * n, g.mu_of(x) < eta * n),
        ]
    )
    if ok_a:
        return "a", x, ctx

    heavy = [w for w in g.neighbors(x) if g.multiplicity(x, w) >= eta * n]
    resid = profile.residual_pair
    others_ok = all(sdeg[w] >= (1 + eps) * n for w in g.verts if w != x)
    ok_b = all(
        [
            log("b", "regular", delta, dmin, regular),
            log("b", "delta>=(1+eps)n", dmin, (1 + eps) * n, dmin >= (1 + eps) * n),
            log("b", "simple-degree(x)>=2", sdeg[x], 2, sdeg[x] >= 2),
            log("b", "heavy-neighbors<=sqrt(n)", len(heavy), root_n, len(heavy) <= root_n),
            log("b", "mu(G-x)<sqrt(n)", gx.mu(), root_n, gx.mu() < root_n),
            log("b", "others-simple>=(1+eps)n", None, (1 + eps) * n, others_ok),
        ]
    )
    if ok_b:
        if resid is not None:
            ctx["y"], ctx["z"] = resid
        else:
            rest = [v for v in g.vertex_list() if v != x]
            ctx["y"], ctx["z"] = rest[0], rest[1]
        return "b", x, ctx

    y_c = min((v for v in g.verts if v != x), key=lambda v: (sdeg[v], v), default=None)
    ok_c = y_c is not None and all(
        [
            log("c", "star-multigraph", profile.kind, "Star/Simple", is_star),
            log("c", "regular", delta, dmin, regular),
            log("c", "delta>=(1+eps)n", dmin, (1 + eps) * n, dmin >= (1 + eps) * n),
            log("c", "2<=simple-degree(x)", sdeg[x], 2, sdeg[x] >= 2),
            log("c", "simple-degree(x)<sqrt(n)", sdeg[x], root_n, sdeg[x] < root_n),
            log("c", "simple-degree(y)>=2eps*n", sdeg[y_c], 2 * eps * n, sdeg[y_c] >= 2 * eps * n),
            log(
                "c",
                "others-simple>=(1+eps)n",
                None,
                (1 + eps) * n,
                all(sdeg[w] >= (1 + eps) * n for w in g.verts if w not in (x, y_c)),
            ),
        ]
    )
    if ok_c:
        ctx["y"] = y_c
        return "c", x, ctx

    by_degree = sorted((v for v in g.verts if v != x), key=lambda v: (degs[v], v))
    y_d, z_d = (by_degree[0], by_degree[1]) if len(by_degree) >= 2 else (None, None)
    if y_d is not None:
        # The center is vetted through mu(x) and its own step; the rest
        # clauses cover the ordinary vertices (the slack inequality
        # relating mu(x) to 0.1*eps*n is recorded but not blocking).
        rest = [w for w in g.verts if w not in (y_d, z_d, x)]
        rest_regular = all(degs[w] == delta for w in rest) and degs[x] == delta
        rest_simple = all(sdeg[w] >= (1 + eps) * n - g.mu_of(x) for w in rest)
        log(
            "d",
            "(1+eps)n-mu(x)>=(1+0.9eps)n",
            (1 + eps) * n - g.mu_of(x),
            (1 + 0.9 * eps) * n,
            (1 + eps) * n - g.mu_of(x) >= (1 + 0.9 * eps) * n,
        )
        ok_d = all(
            [
                log("d", "star-multigraph", profile.kind, "Star/Simple", is_star),
                log("d", "mu(x)<eta*n", g.mu_of(x), eta * n, g.mu_of(x) < eta * n),
                log(
                    "d",
                    "d(y)=d(z)=delta>=(1/2+3eps/2)n",
                    (degs[y_d], degs[z_d]),
                    (dmin, (0.5 + 1.5 * eps) * n),
                    degs[y_d] == degs[z_d] == dmin and dmin >= (0.5 + 1.5 * eps) * n,
                ),
                log(
                    "d",
                    "min-simple(y,z)>Delta-(1-0.9eps)n/2",
                    min(sdeg[y_d], sdeg[z_d]),
                    delta - (1 - 0.9 * eps) * n / 2,
                    min(sdeg[y_d], sdeg[z_d]) > delta - (1 - 0.9 * eps) * n / 2,
                ),
                log("d", "rest-at-Delta>=(1+eps)n", delta, (1 + eps) * n, rest_regular and delta >= (1 + eps) * n),
                log("d", "rest-simple>=(1+eps)n-mu(x)", None, (1 + eps) * n - g.mu_of(x), rest_simple),
            ]
        )
        if ok_d:
            ctx["y"], ctx["z"] = y_d, z_d
            return "d", x, ctx

    ok_e = all(
        [
            log("e", "star-multigraph", profile.kind, "Star/Simple", is_star),
            log("e", "|U|>=eta*n", len(u_set), eta * n, len(u_set) >= eta * n),
            log("e", "delta(G)>=delta(G-x)", dmin, dmin_x, dmin >= dmin_x),
            log("e", "delta(G-x)>=(1+eps)n", dmin_x, (1 + eps) * n, dmin_x >= (1 + eps) * n),
            log("e", "mu(x)<=2/eta", g.mu_of(x), 2 / eta, g.mu_of(x) <= 2 / eta),
        ]
    )
    if ok_e:
        return "e", x, ctx

    return None, x, ctx


def select_pairs(
    g: Multigraph,
    condition: str,
    x: int,
    ctx: dict,
    params: EngineParams,
) -> tuple[list[tuple[int, int]], set[int]]:
    """The prescribed pair set N and the moved-neighbor set N^b(x).

    The center is always paired first.  Under (b) the heavy neighbors of x
    are paired, under (c) all its neighbors, under (d) the two deficient
    vertices pair with each other, and under (e) the non-maximum-degree
    vertices pair up with the high-deficiency ones first.
    """
    n = g.vertex_count // 2
    eta = params.eta
    avoid: set[int] = {x}
    if condition == "d":
        avoid |= {ctx["y"], ctx["z"]}
    u_set: set[int] = ctx.get("U", set())

    def pick_y1() -> int:
        prefer = [v for v in g.vertex_list() if v not in avoid and v not in u_set]
        if condition == "e" and prefer:
            return prefer[0]
        cands = [v for v in g.vertex_list() if v not in avoid]
        if not cands:
            raise GuardFailed("select-pairs", "no candidate for y1")
        return cands[0]

    y1 = pick_y1()
    used = {x, y1}
    pairs = [(x, y1)]
    nb_x: set[int] = set()

    if condition == "a" or condition == "d":
        if condition == "d":
            pairs.append((ctx["y"], ctx["z"]))
        return pairs, nb_x

    if condition in ("b", "c"):
        if condition == "b":
            nb_x = {
                v
                for v in g.neighbors(x)
                if v != y1 and g.multiplicity(x, v) >= eta * n
            }
        else:
            nb_x = {v for v in g.neighbors(x) if v != y1}
        partners = [v for v in g.vertex_list() if v not in used and v not in nb_x]
        if len(partners) < len(nb_x):
            raise GuardFailed("select-pairs", "not enough partner vertices")
        for i, xi in enumerate(sorted(nb_x)):
            pairs.append((xi, partners[i]))
            used.add(xi)
            used.add(partners[i])
        return pairs, nb_x

    # condition (e)
    delta = g.max_degree()
    pool = [v for v in g.vertex_list() if g.degree(v) < delta and v not in used]
    ordered = [v for v in pool if v in u_set] + [v for v in pool if v not in u_set]
    for i in range(0, len(ordered) - 1, 2):
        if len(pairs) >= n:
            break
        pairs.append((ordered[i], ordered[i + 1]))
    return pairs, nb_x


# ---------------------------------------------------------------------------
# Step 1


def _missing_in(state: EngineState, side: set[int], color: int) -> list[int]:
    c = state.coloring
    return sorted(v for v in side if c.misses(v, color))


def step1_color_gab(state: EngineState) -> EngineState:
    """Color G_AB with k colors, augment same-side deficient pairs, and
    equalize so both sides miss every color in step (nearly) equally."""
    g, params, trace = state.g, state.params, state.trace
    n = state.n_half
    eps, eta = params.epsilon, params.eta
    split = build_split(g, state.part, state.x, state.condition)
    k = split.G_AB.max_degree() + math.isqrt(n)
    state.k = k

    delta = g.max_degree()
    if state.condition == "e":
        trace.check("step1", "k<=Delta/2+n^(2/3)", k, delta / 2 + n ** (2 / 3), k <= delta / 2 + n ** (2 / 3))
    else:
        trace.check("step1", "k<=Delta/2+0.6*eta*n", k, delta / 2 + 0.6 * eta * n, k <= delta / 2 + 0.6 * eta * n)

    base = near_star_color(split.G_AB)
    if base.k > k:
        raise GuardFailed("step1.palette", f"G_AB needs {base.k} colors > k={k}")

    g_star = g.copy()
    gab = split.G_AB.copy()
    c = EdgeColoring(g_star, k)
    for eid, col in base.assignment.items():
        c.assign(eid, col)
    state.g_star = g_star
    state.gab_star = gab
    state.coloring = c
    state.h_edges = set(split.H.edge_ids()) - set(split.moved_center_edges)
    state.side_a_edges = set(split.G_A.edge_ids())
    state.side_b_edges = set(split.G_B.edge_ids())

    # S-pair augmentation: join same-side low-degree vertices that share a
    # missing color, and give the new edge that color.
    state.S = {v for v in g.verts if delta - g.degree(v) >= 7 * n ** (2 / 3)}
    changed = True
    added = 0
    while changed:
        changed = False
        for side, store in ((state.side_a, state.side_a_edges), (state.side_b, state.side_b_edges)):
            cand = sorted(state.S & side)
            done = False
            for i in range(len(cand)):
                for j in range(i + 1, len(cand)):
                    u, v = cand[i], cand[j]
                    shared = sorted(c.missing(u) & c.missing(v))
                    if not shared:
                        continue
                    eid = g_star.add_edge(u, v)
                    gab.add_edge(min(u, v), max(u, v), eid)
                    store.add(eid)
                    c.assign(eid, shared[0])
                    added += 1
                    changed = True
                    done = True
                    break
                if done:
                    break
    if added:
        trace.note("step1", f"augmented {added} same-side S-pair edges")
    trace.check("step1", "Delta(G*)=Delta(G)", g_star.max_degree(), delta, g_star.max_degree() == delta)

    if state.condition in ("a", "b", "c", "d"):
        ea = sum(1 for e in state.side_a_edges)
        eb = sum(1 for e in state.side_b_edges)
        if not trace.check("step1", "e(G*_A)=e(G*_B)", ea, eb, ea == eb):
            raise GuardFailed("step1.side-balance", f"e(G*_A)={ea} != e(G*_B)={eb}")
        equalize_balanced_sides(gab, c, state.part)
    else:
        equalize_per_side(gab, c, state.part)

    # S1.1 audit.
    ok_s11 = True
    for i in range(1, k + 1):
        ma = len(_missing_in(state, state.side_a, i))
        mb = len(_missing_in(state, state.side_b, i))
        if state.condition in ("a", "b", "c", "d") and ma != mb:
            ok_s11 = False
    trace.check("step1", "S1.1", None, None, ok_s11)
    if not ok_s11:
        raise GuardFailed("step1.S1.1", "per-color side missing counts differ")

    # S1.2 guard (diagnostic: its role is the MCC-pair budget).
    cap = 3 * eta * n if state.condition in ("a", "b", "c", "d") else 7 * n ** (2 / 3)
    worst = 0
    for i in range(1, k + 1):
        worst = max(
            worst,
            len(_missing_in(state, state.side_a, i)),
            len(_missing_in(state, state.side_b, i)),
        )
    passed = trace.check("step1", "S1.2", worst, cap, worst < cap)
    if not passed and params.strict_guards:
        raise GuardFailed("step1.S1.2", f"missing-count {worst} >= {cap:.2f}")

    state.S_A = {
        u for u in state.S & state.side_a if gab.degree(u) <= k - 2 * n ** (2 / 3)
    }
    state.S_B = {
        u for u in state.S & state.side_b if gab.degree(u) <= k - 2 * n ** (2 / 3)
    }
    state.U = {v for v in g.verts if delta - g.degree(v) >= eta * n}
    state.missing_after_step1 = {v: len(c.missing(v)) for v in g_star.verts}
    state.colored_h_at = {v: 0 for v in g_star.verts}

    if state.condition == "e":
        s, r = 7.0 * n ** (5 / 3), n ** (5 / 6)
    else:
        s, r = 3.0 * eta * n * n, math.sqrt(eta) * n
    state.s_bound, state.r_bound = s, r
    state.ell = 2 * math.floor(r)
    return state


# ---------------------------------------------------------------------------
# Step 2


def _r_degree(state: EngineState, v: int) -> int:
    return state.r_deg.get(v, 0)


def _is_good(state: EngineState, eid: int) -> bool:
    if eid in state.r_a or eid in state.r_b:
        return False
    u, v = state.g_star.endpoints(eid)
    return _r_degree(state, u) < state.r_bound and _r_degree(state, v) < state.r_bound


def _uncolor_to_residual(state: EngineState, eid: int) -> None:
    c = state.coloring
    c.unassign(eid)
    u, v = state.g_star.endpoints(eid)
    if eid in state.side_a_edges:
        state.r_a.add(eid)
    elif eid in state.side_b_edges:
        state.r_b.add(eid)
    else:
        raise AssertionError("residual edge must be a side edge")
    state.r_deg[u] = _r_degree(state, u) + 1
    state.r_deg[v] = _r_degree(state, v) + 1


def _color_h_edge(state: EngineState, eid: int, color: int) -> None:
    state.coloring.assign(eid, color)
    u, v = state.g_star.endpoints(eid)
    state.colored_h_at[u] += 1
    state.colored_h_at[v] += 1


def _uncolored_h_edge(state: EngineState, u: int, w: int) -> Optional[int]:
    c = state.coloring
    for eid in state.g_star.edges_between(u, w):
        if eid in state.h_edges and c.color_of(eid) is None:
            return eid
    return None


def step2_fix_center(state: EngineState) -> EngineState:
    """Make every color present at the center before anything else.

    For each color missing at x: either color an uncolored crossing edge
    x-w whose w also misses it, or take the w (fewest residual edges)
    whose own edge of that color is sacrificed into R_B.
    """
    c, x, g_star = state.coloring, state.x, state.g_star
    for i in sorted(c.missing(x)):
        direct = None
        for w in g_star.neighbors(x):
            if w not in state.side_b:
                continue
            eid = _uncolored_h_edge(state, x, w)
            if eid is not None and c.misses(w, i):
                direct = eid
                break
        if direct is not None:
            _color_h_edge(state, direct, i)
            continue
        cands = []
        for w in g_star.neighbors(x):
            if w not in state.side_b:
                continue
            eid = _uncolored_h_edge(state, x, w)
            if eid is not None:
                cands.append((_r_degree(state, w), w, eid))
        if not cands:
            raise NoEligibleNeighbor(i)
        _, w, eid = min(cands)
        sac = c.edge_at(w, i)
        if sac is None or sac not in state.side_b_edges:
            raise NoEligibleNeighbor(i)
        w_star = g_star.other_end(sac, w)
        _uncolor_to_residual(state, sac)
        _color_h_edge(state, eid, i)
        state.originated.append((i, w_star))
    state.trace.check("step2", "center-covered", len(c.missing(x)), 0, not c.missing(x))
    return state


def _pair_up_missing(state: EngineState) -> None:
    """Form the missing-common-color pairs for every color.

    Cross-side vertices pair first (index order), leftovers pair up within
    their side; the Parity Lemma makes the total count even.
    """
    c = state.coloring
    state.mcc_pairs = {}
    for i in range(1, state.k + 1):
        am = _missing_in(state, state.side_a, i)
        bm = _missing_in(state, state.side_b, i)
        if (len(am) + len(bm)) % 2 != 0:
            raise GuardFailed("step2.parity", f"odd missing count for color {i}")
        pairs: list[list[int]] = []
        m = min(len(am), len(bm))
        for j in range(m):
            pairs.append([am[j], bm[j]])
        rest = am[m:] or bm[m:]
        for j in range(0, len(rest), 2):
            pairs.append([rest[j], rest[j + 1]])
        state.mcc_pairs[i] = pairs


def _relocation_edge(
    state: EngineState, v: int, color: int
) -> Optional[tuple[int, int, int]]:
    """A (crossing edge, sacrificed edge) pair shifting v's missing color
    across the bipartition: returns (h_edge, colored_edge, new_endpoint)."""
    c, g_star = state.coloring, state.g_star
    other_side = state.side_b if v in state.side_a else state.side_a
    avoid = state.s_b_star if other_side is state.side_b else state.s_a_star
    store = state.side_b_edges if other_side is state.side_b else state.side_a_edges
    for w in g_star.neighbors(v):
        if w not in other_side or w in avoid:
            continue
        h_eid = _uncolored_h_edge(state, v, w)
        if h_eid is None:
            continue
        sac = c.edge_at(w, color)
        if sac is None or sac not in store or not _is_good(state, sac):
            continue
        w2 = g_star.other_end(sac, w)
        if w2 in avoid:
            continue
        return h_eid, sac, w2
    return None


def step2_relocate_S(state: EngineState) -> EngineState:
    """Move every missing color away from the protected vertex sets.

    Pairs up the per-color missing vertices first, then each low-degree
    vertex v in S_A (resp. S_B and the moved neighbors of x) sheds a
    missing color by a 2-edge exchange whose sacrificed edge lies on the
    opposite side; its pair slot passes to the new endpoint.
    """
    _pair_up_missing(state)
    c = state.coloring
    for v in sorted(state.S_A | (state.S_B | state.nb_x)):
        if v == state.x:
            continue
        for i in sorted(c.missing(v)):
            if i > state.k:
                continue
            found = _relocation_edge(state, v, i)
            if found is None:
                raise NoGoodEdge(i, v)
            h_eid, sac, w2 = found
            _uncolor_to_residual(state, sac)
            _color_h_edge(state, h_eid, i)
            for pair in state.mcc_pairs.get(i, ()):
                if v in pair:
                    pair[pair.index(v)] = w2
                    break
    protected = state.s_a_star | state.s_b_star
    bad = [
        (i, p)
        for i, ps in state.mcc_pairs.items()
        for p in ps
        if set(p) & protected
    ]
    state.trace.check("step2", "no-protected-endpoints", len(bad), 0, not bad)
    if bad:
        raise GuardFailed("step2.relocate", f"protected endpoint remains: {bad[:3]}")
    return state


def _nb_candidates(state: EngineState, anchor: int, color: int, side_b: bool) -> list[tuple[int, int, int]]:
    """Vertices on the requested side joined to ``anchor`` by an uncolored
    crossing edge and holding a good same-side edge of ``color`` away from
    the protected set.  Returns (vertex, its colored edge, h edge).

    Candidates whose sacrificed edge carries the least residual degree come
    first: like the center step's min-d_R rule, this spreads the uncolored
    edges and keeps goodness alive much longer at desk scale.
    """
    c, g_star = state.coloring, state.g_star
    side = state.side_b if side_b else state.side_a
    avoid = state.s_b_star if side_b else state.s_a_star
    store = state.side_b_edges if side_b else state.side_a_edges
    out = []
    for w in g_star.neighbors(anchor):
        if w not in side or w in avoid:
            continue
        h_eid = _uncolored_h_edge(state, anchor, w)
        if h_eid is None:
            continue
        sac = c.edge_at(w, color)
        if sac is None or sac not in store or not _is_good(state, sac):
            continue
        w2 = g_star.other_end(sac, w)
        if w2 in avoid:
            continue
        load = _r_degree(state, w) + _r_degree(state, w2)
        out.append((load, w, sac, h_eid))
    out.sort()
    return [(w, sac, h_eid) for _, w, sac, h_eid in out]


def _resolve_cross_pair(state: EngineState, i: int, a: int, b: int) -> None:
    """Five-edge alternating path a-b1-b2-a2-a1-b for a cross-side pair."""
    g_star = state.g_star
    for a1, sac_a, h_a1b in _nb_candidates(state, b, i, side_b=False):
        a2 = g_star.other_end(sac_a, a1)
        for b1, sac_b, h_ab1 in _nb_candidates(state, a, i, side_b=True):
            b2 = g_star.other_end(sac_b, b1)
            if len({a, b, a1, a2, b1, b2}) != 6:
                continue
            h_b2a2 = _uncolored_h_edge(state, a2, b2)
            if h_b2a2 is None:
                continue
            _uncolor_to_residual(state, sac_a)
            _uncolor_to_residual(state, sac_b)
            _color_h_edge(state, h_ab1, i)
            _color_h_edge(state, h_b2a2, i)
            _color_h_edge(state, h_a1b, i)
            return
    raise NoAlternatingPath(i, (a, b))


def _resolve_same_side_pair(state: EngineState, i: int, a: int, a2nd: int, in_a: bool) -> None:
    """Seven-edge alternating path for a same-side pair (Fig-style route
    a-b1-b2-a2-a2'-b2'-b1'-a')."""
    g_star = state.g_star
    for b1s, sac_bs, h_star in _nb_candidates(state, a2nd, i, side_b=in_a):
        b2s = g_star.other_end(sac_bs, b1s)
        for a2s, sac_mid, h_mid2 in _nb_candidates(state, b2s, i, side_b=not in_a):
            a2 = g_star.other_end(sac_mid, a2s)
            for b1, sac_b, h_ab1 in _nb_candidates(state, a, i, side_b=in_a):
                b2 = g_star.other_end(sac_b, b1)
                if len({a, a2nd, b1, b2, a2, a2s, b2s, b1s}) != 8:
                    continue
                h_b2a2 = _uncolored_h_edge(state, a2, b2)
                if h_b2a2 is None:
                    continue
                _uncolor_to_residual(state, sac_bs)
                _uncolor_to_residual(state, sac_mid)
                _uncolor_to_residual(state, sac_b)
                _color_h_edge(state, h_ab1, i)
                _color_h_edge(state, h_b2a2, i)
                _color_h_edge(state, h_mid2, i)
                _color_h_edge(state, h_star, i)
                return
    raise NoAlternatingPath(i, (a, a2nd))


def step2_extend_to_factors(state: EngineState) -> EngineState:
    """Resolve every pair so each of the k classes becomes a 1-factor."""
    c, trace = state.coloring, state.trace
    for i in range(1, state.k + 1):
        for pair in state.mcc_pairs.get(i, ()):
            u, v = pair
            if not c.misses(u, i) or not c.misses(v, i):
                raise AssertionError("pair endpoint no longer missing its color")
            u_in_a = u in state.side_a
            v_in_a = v in state.side_a
            if u_in_a and not v_in_a:
                _resolve_cross_pair(state, i, u, v)
            elif v_in_a and not u_in_a:
                _resolve_cross_pair(state, i, v, u)
            else:
                _resolve_same_side_pair(state, i, u, v, in_a=u_in_a)
        uncovered = [
            v for v in state.g_star.verts if c.misses(v, i)
        ]
        if uncovered:
            raise GuardFailed("step2.one-factor", f"color {i} misses {uncovered[:4]}")

    n = state.n_half
    trace.check("step2", "S2.1:e(R_A)<4s", len(state.r_a), 4 * state.s_bound, len(state.r_a) < 4 * state.s_bound)
    trace.check("step2", "S2.1:e(R_B)<4s", len(state.r_b), 4 * state.s_bound, len(state.r_b) < 4 * state.s_bound)
    if state.condition in ("a", "b", "c", "d"):
        trace.check("step2", "S2.1:e(R_A)=e(R_B)", len(state.r_a), len(state.r_b), len(state.r_a) == len(state.r_b))
    max_rdeg = max(state.r_deg.values(), default=0)
    passed = trace.check("step2", "S2.2:Delta(R)<r", max_rdeg, state.r_bound, max_rdeg < state.r_bound)
    if not passed and state.params.strict_guards:
        raise GuardFailed("step2.S2.2", f"Delta(R)={max_rdeg} >= r={state.r_bound:.2f}")
    budget_ok = True
    protected = state.s_a_star | state.s_b_star
    for v in state.g_star.verts:
        cap = state.missing_after_step1.get(v, 0)
        if v not in protected:
            cap += state.r_bound
            if not state.colored_h_at[v] < cap:
                budget_ok = False
        elif state.colored_h_at[v] > state.missing_after_step1.get(v, 0):
            budget_ok = False
    trace.check("step2", "S2.3:H-edge-budget", None, None, budget_ok)
    return state


# ---------------------------------------------------------------------------
# Step 3


def _edges_subgraph(state: EngineState, ids: set[int]) -> Multigraph:
    g = Multigraph(state.g_star.n, state.g_star.verts)
    for eid in sorted(ids):
        u, v = state.g_star.endpoints(eid)
        g.add_edge(u, v, eid)
    return g


def _residual_classes(state: EngineState, ids: set[int]) -> list[set[int]]:
    """Color one residual multigraph with the ell fresh colors, equalized.

    Returns the classes ordered largest first (ties by smallest edge id).
    """
    ell = state.ell
    sub = _edges_subgraph(state, ids)
    local = EdgeColoring(sub, ell)
    for eid in sub.edge_ids():
        u, v = sub.endpoints(eid)
        placed = False
        for col in range(1, ell + 1):
            if local.misses(u, col) and local.misses(v, col):
                local.assign(eid, col)
                placed = True
                break
        if not placed:
            raise GuardFailed("step3.palette", f"residual edge {eid} found no color in ell={ell}")
    equalize_classes(sub, local)
    classes = [local.class_edges(col) for col in range(1, ell + 1)]
    classes.sort(key=lambda s: (-len(s), min(s) if s else 1 << 60))
    return classes


def step3_color_residuals(state: EngineState) -> EngineState:
    """Color R_A and R_B with ell fresh colors and extend each new class
    across the middle so it covers everything outside U."""
    c, trace = state.coloring, state.trace
    n = state.n_half
    if state.ell == 0:
        if state.r_a or state.r_b:
            raise GuardFailed("step3.ell-zero", "residual edges exist but ell=0")
        return state
    c.extend_palette(state.k + state.ell)

    classes_a = _residual_classes(state, state.r_a)
    classes_b = _residual_classes(state, state.r_b)
    cap = 4 * state.s_bound / state.r_bound
    worst = max((len(s) for s in classes_a + classes_b), default=0)
    trace.check("step3", "class-size<4s/r", worst, cap, worst < cap)
    if state.condition in ("a", "b", "c", "d"):
        sizes_ok = all(len(sa) == len(sb) for sa, sb in zip(classes_a, classes_b))
        trace.check("step3", "aligned-class-sizes", None, None, sizes_ok)
        if not sizes_ok:
            raise GuardFailed("step3.alignment", "per-color residual sizes differ")

    for j in range(state.ell):
        color = state.k + 1 + j
        ca, cb = classes_a[j], classes_b[j]
        for eid in sorted(ca | cb):
            c.assign(eid, color)
        a_i = sorted({v for eid in ca for v in state.g_star.endpoints(eid)})
        b_i = sorted({v for eid in cb for v in state.g_star.endpoints(eid)})
        pad_a: list[int] = []
        pad_b: list[int] = []
        if len(b_i) > len(a_i):
            pool = sorted((state.U & state.side_a) - set(a_i))
            pad_a = pool[: len(b_i) - len(a_i)]
            if len(pad_a) < len(b_i) - len(a_i):
                raise GuardFailed("step3.pad", f"U cap A too small for color {color}")
        elif len(a_i) > len(b_i):
            pool = sorted((state.U & state.side_b) - set(b_i))
            pad_b = pool[: len(a_i) - len(b_i)]
            if len(pad_b) < len(a_i) - len(b_i):
                raise GuardFailed("step3.pad", f"U cap B too small for color {color}")
        drop = set(a_i) | set(b_i) | set(pad_a) | set(pad_b)
        side_a = sorted(state.side_a - drop)
        side_b = sorted(state.side_b - drop)
        h_i = Multigraph(state.g_star.n, set(side_a) | set(side_b))
        for eid in sorted(state.h_edges):
            if c.color_of(eid) is not None:
                continue
            u, v = state.g_star.endpoints(eid)
            if u in h_i.verts and v in h_i.verts:
                h_i.add_edge(u, v, eid)
        try:
            matched = perfect_matching_bipartite_star(
                h_i, side_a, side_b, center=state.x if state.x in h_i.verts else None
            )
        except (NoPerfectMatching, PreconditionViolated) as exc:
            raise MatchingFailed(f"H_{color}: {exc}") from exc
        for eid in matched:
            _color_h_edge(state, eid, color)

    for v in state.g_star.verts - state.U:
        missing_low = [i for i in range(1, state.k + state.ell + 1) if c.misses(v, i)]
        if missing_low:
            raise GuardFailed(
                "step3.coverage", f"vertex {v} misses {missing_low[:4]} after step 3"
            )
    return state


# ---------------------------------------------------------------------------
# Step 4


def step4_finish(state: EngineState) -> EdgeColoring:
    """Color the remaining crossing edges with König and exactly fit the
    Delta(G*) budget."""
    c, trace = state.coloring, state.trace
    g_star = state.g_star
    rest = [eid for eid in g_star.edge_ids() if c.color_of(eid) is None]
    for eid in rest:
        if eid not in state.h_edges:
            raise AssertionError("uncolored non-crossing edge after step 3")
    delta_star = g_star.max_degree()
    budget = delta_star - state.k - state.ell
    if not rest:
        trace.check("step4", "Delta(R)<=budget", 0, budget, True)
        return c
    r_graph = _edges_subgraph(state, set(rest))
    dr = r_graph.max_degree()
    passed = trace.check("step4", "Delta(R)<=budget", dr, budget, dr <= budget)
    if not passed:
        raise GuardFailed("step4.DeltaR", f"Delta(R)={dr} > {budget}")
    local = konig_color(r_graph)
    c.extend_palette(state.k + state.ell + local.k)
    for eid, col in sorted(local.assignment.items()):
        c.assign(eid, state.k + state.ell + col)
    return c


# ---------------------------------------------------------------------------
# Orchestration


def dcolor(g: Multigraph, params: EngineParams) -> DcolorResult:
    """Run the full pipeline; any guard failure falls back to a verified
    near-star coloring and a trace naming the failed guard."""
    trace = PipelineTrace(seed=params.seed)
    nv = g.vertex_count
    condition = ""
    try:
        if nv % 2 != 0:
            raise GuardFailed("input.even-order", f"|V|={nv}")
        cond, x, ctx = classify_condition(g, params, trace)
        if cond is None:
            raise GuardFailed("classify", "no condition (a)-(e) matched")
        condition = cond
        trace.note("classify", f"condition ({cond}), center {x}")
        pairs, nb_x = select_pairs(g, cond, x, ctx, params)
        part = balanced_partition(
            g.underlying_simple(), pairs, params.seed, params.partition_retries
        )
        trace.retries = part.retries
        part = adjust_for_center(part, g, x, nb_x, pairs)
        state = EngineState(
            g=g,
            params=params,
            trace=trace,
            x=x,
            n_half=nv // 2,
            condition=cond,
            cond_ctx=ctx,
            pairs=pairs,
            nb_x=nb_x,
            part=part,
        )
        step1_color_gab(state)
        step2_fix_center(state)
        step2_relocate_S(state)
        step2_extend_to_factors(state)
        step3_color_residuals(state)
        final = step4_finish(state)

        if not final.is_total():
            raise GuardFailed("final.total", "uncolored edges remain")
        report = verify_proper(state.g_star, final)
        if not report.ok:
            raise GuardFailed("final.proper", f"{len(report.violations)} violations")
        audit = final.copy()
        audit.extend_palette(max(audit.k, state.g_star.max_degree()))
        parity = parity_audit(state.g_star, audit)
        trace.check("final", "parity", len(parity.violations), 0, parity.ok)
        used = len(final.used_colors())
        delta = g.max_degree()
        trace.check("final", "colors<=Delta", used, delta, used <= delta)
        if used > delta:
            raise GuardFailed("final.count", f"{used} colors > Delta={delta}")
        restricted = final.rebind(g)
        return DcolorResult(
            verdict="Colored", coloring=restricted, trace=trace, condition=condition
        )
    except EdgeColorError as exc:
        trace.note("fallback", f"{type(exc).__name__}: {exc}")
        fb = near_star_color(g)
        if not verify_proper(g, fb).ok:
            raise AssertionError("fallback coloring failed verification")
        return DcolorResult(
            verdict="Fallback", coloring=fb, trace=trace, condition=condition
        )
