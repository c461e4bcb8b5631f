"""Exception hierarchy. Each top-level family maps to one CLI exit code."""


class PlcsNetError(Exception):
    exit_code = 1


class ParseError(PlcsNetError):
    """Input could not be read as a valid panel."""

    exit_code = 2


class SchemaError(ParseError):
    pass


class ContiguityError(ParseError):
    pass


class ContractError(PlcsNetError, ValueError):
    """A precondition of an operation was violated."""

    exit_code = 3


class BoundsError(ContractError):
    pass


class ZeroVarianceError(ContractError):
    pass


class DegenerateSeriesError(ContractError):
    """Cumulative distance too small to fit (near-identical series)."""


class DegenerateGraphError(PlcsNetError):
    """Graph is empty or disconnected where a connected graph is required."""

    exit_code = 4
