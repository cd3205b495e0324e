"""Exception hierarchy shared by every flipforest module."""

from __future__ import annotations


class FlipForestError(Exception):
    """Base class for all library errors."""


# --- tree validation -------------------------------------------------------

class InvalidTree(FlipForestError, ValueError):
    """An edge set is not a non-crossing spanning tree."""


class WrongEdgeCount(InvalidTree):
    def __init__(self, n: int, count: int):
        super().__init__(f"expected {n - 1} edges for n={n}, got {count}")
        self.n = n
        self.count = count


class BadLabel(InvalidTree):
    def __init__(self, edge, n: int):
        super().__init__(f"edge {edge} is not a chord of the {n}-gon")
        self.edge = edge


class HasCycle(InvalidTree):
    def __init__(self, edge=None):
        msg = "edge set contains a cycle"
        if edge is not None:
            msg += f" (closed by {edge})"
        super().__init__(msg)
        self.edge = edge


class NotSpanning(InvalidTree):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} is not connected to vertex 1")
        self.vertex = vertex


class Crossing(InvalidTree):
    def __init__(self, e, f):
        super().__init__(f"edges {e} and {f} cross")
        self.e = e
        self.f = f


# --- flips and sequences ---------------------------------------------------

class FlipError(FlipForestError):
    """A flip cannot be applied to a tree."""


class RemovedNotPresent(FlipError):
    def __init__(self, edge):
        super().__init__(f"removed edge {edge} is not in the tree")
        self.edge = edge


class AddedAlreadyPresent(FlipError):
    def __init__(self, edge):
        super().__init__(f"added edge {edge} is already in the tree")
        self.edge = edge


class ResultInvalid(FlipError):
    def __init__(self, reason: InvalidTree):
        super().__init__(f"flip result is invalid: {reason}")
        self.reason = reason


class EdgeAlreadyPresent(FlipForestError):
    def __init__(self, edge):
        super().__init__(f"edge {edge} is already in the tree")
        self.edge = edge


class MismatchedN(FlipForestError, ValueError):
    def __init__(self, n1: int, n2: int):
        super().__init__(f"trees have different point counts: {n1} != {n2}")


class SequenceError(FlipForestError):
    """A flip sequence does not replay correctly."""


class StepInvalid(SequenceError):
    def __init__(self, index: int, reason: Exception):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


class WrongEndpoint(SequenceError):
    def __init__(self):
        super().__init__("sequence does not end at the expected tree")


# --- moves -----------------------------------------------------------------

class AllBorderTree(FlipForestError):
    """Every edge of the tree is a hull edge, so a border edge flip must remove one."""


class NoRemovableOutsideAvoid(FlipForestError):
    def __init__(self, edge, candidates):
        super().__init__(
            f"every non-border cycle edge for {edge} is in the avoid set: {sorted(candidates)}"
        )
        self.edge = edge
        self.candidates = candidates


class HypothesisViolated(FlipForestError):
    def __init__(self, message: str, edge=None):
        super().__init__(message)
        self.edge = edge


class NoGoodFlipFound(FlipForestError):
    def __init__(self, trace):
        super().__init__(f"no good flip exists; trace: {trace}")
        self.trace = trace


class NotBorderTree(FlipForestError):
    pass


# --- strategy preconditions (CLI exit code 3) ------------------------------

class PreconditionFailed(FlipForestError):
    """A strategy was asked to run on an input it does not apply to."""


class NotACaterpillar(PreconditionFailed):
    pass


class NotNiceCaterpillar(PreconditionFailed):
    pass


class NoValidLabeling(PreconditionFailed):
    pass


class NotAHamiltonianPath(PreconditionFailed):
    pass


class NotAPathInTree(PreconditionFailed):
    pass


class ReconnectFailed(FlipForestError):
    pass


# --- oracle ----------------------------------------------------------------

class TooLarge(FlipForestError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"n={n} exceeds the oracle limit of {limit} (set FLIPFOREST_MAX_N)")
        self.n = n
        self.limit = limit
