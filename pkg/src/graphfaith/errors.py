"""Exception types shared across the package."""


class GraphFaithError(ValueError):
    """Base class for all domain errors raised by this package."""


class GraphError(GraphFaithError):
    """Invalid graph, graph query, or violated graph precondition."""


class ModelError(GraphFaithError):
    """Invalid independence model or model query."""


class PreorderError(GraphFaithError):
    """Relation is not a preorder, or a preorder precondition is violated."""


class MatrixError(GraphFaithError):
    """Invalid matrix input (non-square, asymmetric, singular, not PD)."""


class CapExceededError(GraphFaithError):
    """An exhaustive computation was requested above its configured cap."""


class ParseError(GraphFaithError):
    """Malformed input file; carries location information when available."""

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class InternalCheckError(RuntimeError):
    """A redundant internal verification failed; indicates a bug, not bad input."""
