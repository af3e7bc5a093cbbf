"""Exception hierarchy.

Every error raised on purpose by this package derives from ``SpanCspError``.
The CLI maps the families below onto its exit codes.
"""


class SpanCspError(Exception):
    pass


class MalformedGraphError(SpanCspError, ValueError):
    """A graph or morphism violates its structural invariants."""


class CompositionError(SpanCspError, ValueError):
    """Two arrows (or cospans, spans, cells) do not share the required boundary."""


BoundaryError = CompositionError


class BudgetExceeded(SpanCspError):
    """An enumeration or search would exceed its configured budget."""


class InvariantError(SpanCspError, AssertionError):
    """A construction produced a value that breaks an invariant it guarantees.

    This signals a bug in the library, not bad input.
    """


class RewriteError(SpanCspError):
    """A rewrite step cannot be carried out on the given match."""


class DanglingError(RewriteError):
    def __init__(self, edge: int, node: int):
        self.edge = edge
        self.node = node
        super().__init__(
            f"dangling condition violated: host edge {edge} is incident to deleted node {node}"
        )


class BoundaryDeletionError(RewriteError):
    def __init__(self, node: int):
        self.node = node
        super().__init__(f"rewrite would delete host boundary node {node}")


class DocumentError(SpanCspError):
    """Base class for problems with serialized documents."""


class MalformedDocumentError(DocumentError):
    """Input is not valid UTF-8 JSON."""


class SchemaError(DocumentError):
    """JSON is well formed but does not match the document schema."""


class DocumentInvariantError(DocumentError):
    """A document parses but its value breaks a type invariant."""
