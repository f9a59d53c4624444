"""Exception types shared across the package."""


class GraphError(ValueError):
    """Structurally invalid graph input (bad edge list, disconnected where connectivity is required)."""


class ParameterError(ValueError):
    """Invalid family or operation parameters."""


class SizeLimitError(ValueError):
    """Input exceeds the size cap of an exhaustive routine."""


class ContractError(RuntimeError):
    """An operation was called in a state its contract forbids."""
