"""Error categories for the group Steiner reduction tool.

Every error carries the process exit code the CLI reports for it.
"""

from typing import Optional

from config import EXIT_ABORT, EXIT_INPUT_ERROR, EXIT_SOLVER_CAPACITY


class SteinerError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = EXIT_INPUT_ERROR


class InputError(SteinerError):
    """Bad input: files, flags or arguments."""


class InvalidArgumentError(InputError, ValueError):
    """An argument violates an operation's precondition."""


class InvalidTreeError(InvalidArgumentError):
    """A SteinerTree violates its invariants for the given graph."""


class GraphStructureError(InputError):
    """Self-loops, parallel edges or out-of-range endpoints."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DisconnectedGraphError(GraphStructureError):
    """The graph of an instance is not connected."""


class InstanceFormatError(InputError):
    """Malformed .stp/.gstp/.map/solution text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class FormatSyntaxError(InstanceFormatError):
    """Unexpected keyword, token count or section order."""


class UnknownVertexError(InstanceFormatError):
    """A vertex number outside 1..Nodes."""


class InvalidCostError(InstanceFormatError):
    """An edge cost that is not a positive integer within range."""


class InvalidGroupError(InstanceFormatError):
    """An empty group or a group listing the same vertex twice."""


class CostOverflowError(SteinerError, ArithmeticError):
    """A cost left the representable range."""

    exit_code = EXIT_ABORT


class CapacityError(SteinerError):
    """An instance exceeds a solver's configured size limit."""

    exit_code = EXIT_SOLVER_CAPACITY

    def __init__(self, message: str, limit: int, actual: int):
        self.limit = limit
        self.actual = actual
        super().__init__(message)


class NonLeafDummyError(SteinerError):
    """A dummy vertex of a reduced instance has degree >= 2 in a tree."""

    exit_code = EXIT_ABORT

    def __init__(self, dummy_vertex: int, degree: int):
        self.dummy_vertex = dummy_vertex
        self.degree = degree
        super().__init__(
            f"dummy vertex {dummy_vertex + 1} has degree {degree} in the STPG tree; "
            "the tree is not a minimum tree with every dummy vertex as a leaf"
        )


class CampaignAbortError(SteinerError):
    """A verification campaign stopped on an instance."""

    exit_code = EXIT_ABORT

    def __init__(self, index: int, seed: int, cause: SteinerError):
        self.index = index
        self.seed = seed
        self.cause = cause
        super().__init__(
            f"campaign aborted at instance {index} (replay with --seed {seed}): {cause}"
        )
