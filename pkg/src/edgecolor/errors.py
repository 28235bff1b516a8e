"""Exception hierarchy shared across the package."""

from __future__ import annotations


class EdgeColorError(Exception):
    """Base class for all package errors."""


class LoopRejected(EdgeColorError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"loop at vertex {vertex} rejected")


class VertexOutOfRange(EdgeColorError):
    def __init__(self, vertex: int, n: int):
        self.vertex = vertex
        self.n = n
        super().__init__(f"vertex {vertex} outside range [0, {n})")


class ParseError(EdgeColorError):
    pass


class PreconditionViolated(EdgeColorError):
    """A documented precondition of an operation does not hold.

    ``clause`` names the failed clause so callers can report it.
    """

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        msg = clause if not detail else f"{clause}: {detail}"
        super().__init__(msg)


class NotTotal(EdgeColorError):
    pass


class StaleChain(EdgeColorError):
    pass


class DegreeSequenceInfeasible(EdgeColorError):
    """Raised when no multigraph realizes the requested degree sequence.

    ``reason`` is "OddSum" or "DominantDegree".
    """

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"degree sequence infeasible: {reason}")


class NotBipartite(EdgeColorError):
    pass


class NoPerfectMatching(EdgeColorError):
    pass


class CoverFailed(EdgeColorError):
    """Spanning path cover construction gave up; callers fall back."""


class TooFewCenterNeighbors(EdgeColorError):
    pass


class NotStarMultigraph(EdgeColorError):
    pass


class NotNearStar(EdgeColorError):
    pass


class StarColoringFailed(EdgeColorError):
    """Center-edge insertion exhausted its restart budget."""


class EqualizationFailed(EdgeColorError):
    pass


class TooLarge(EdgeColorError):
    pass


class EvenOrderInput(EdgeColorError):
    pass


class InfeasibleParams(EdgeColorError):
    pass


class PartitionFailed(EdgeColorError):
    def __init__(self, retries: int):
        self.retries = retries
        super().__init__(f"no balanced partition found after {retries} retries")


class GuardFailed(EdgeColorError):
    """A runtime guard of the coloring pipeline failed.

    ``guard`` names the inequality or object search that failed; the engine
    converts these into a fallback coloring plus a trace entry.
    """

    def __init__(self, guard: str, detail: str = ""):
        self.guard = guard
        msg = guard if not detail else f"{guard}: {detail}"
        super().__init__(msg)


class NoEligibleNeighbor(GuardFailed):
    def __init__(self, color: int):
        super().__init__("step2.center", f"no eligible neighbor for color {color}")
        self.color = color


class NoGoodEdge(GuardFailed):
    def __init__(self, color: int, vertex: int):
        super().__init__("step2.relocate", f"no good edge for color {color} at vertex {vertex}")
        self.color = color
        self.vertex = vertex


class NoAlternatingPath(GuardFailed):
    def __init__(self, color: int, pair: tuple[int, int]):
        super().__init__("step2.extend", f"no alternating path for color {color}, pair {pair}")
        self.color = color
        self.pair = pair


class MatchingFailed(GuardFailed):
    def __init__(self, what: str):
        super().__init__("matching", what)


class ConstructionFailed(EdgeColorError):
    pass
