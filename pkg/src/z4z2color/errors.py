"""Exception hierarchy shared by all modules."""


class Z4Z2Error(Exception):
    """Base class for every error raised by this package."""


class GraphError(Z4Z2Error, ValueError):
    pass


class MalformedGraph6(GraphError):
    pass


class NotCubic(GraphError):
    pass


class NotSimple(GraphError):
    pass


class Disconnected(GraphError):
    pass


class NotAMatching(GraphError):
    pass


class SelfLoopCreated(GraphError):
    pass


class MultiEdgeCreated(GraphError):
    pass


class NoPerfectMatching(Z4Z2Error):
    pass


class NotPerfectMatching(Z4Z2Error, ValueError):
    pass


class MalformedStructure(Z4Z2Error):
    pass


class WrongVertexCount(Z4Z2Error, ValueError):
    pass


class NotProper3Coloring(Z4Z2Error, ValueError):
    pass


class NotThreeEven(Z4Z2Error):
    pass


class InvalidColoring(Z4Z2Error, ValueError):
    pass


class NotPerfectOnEven(Z4Z2Error, ValueError):
    pass


class BudgetExhausted(Z4Z2Error):
    """A search hit its node budget before reaching a verdict."""

    def __init__(self, what: str, nodes: int):
        super().__init__(f"{what}: budget exhausted after {nodes} nodes")
        self.what = what
        self.nodes = nodes


class NormalizationFailed(Z4Z2Error):
    pass


class NotAnMPath(Z4Z2Error):
    pass


class ClaimViolated(Z4Z2Error):
    """A runtime check of one of the correction claims failed."""

    def __init__(self, claim: str, detail: str = ""):
        super().__init__(f"claim {claim} violated" + (f": {detail}" if detail else ""))
        self.claim = claim
        self.detail = detail


class RewiredNotAMatching(ClaimViolated):
    def __init__(self, detail: str = ""):
        super().__init__("matching", detail)


class BadParameter(Z4Z2Error, ValueError):
    pass
