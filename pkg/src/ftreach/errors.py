"""Exception hierarchy shared by every module."""


class FtreachError(Exception):
    """Base class for all errors raised by ftreach."""


class InputError(FtreachError, ValueError):
    """Unknown vertex or edge, malformed file, bad parameter."""


class PreconditionError(FtreachError, ValueError):
    """An operation was called on input that violates its precondition."""


class ContractViolation(FtreachError, RuntimeError):
    """A pluggable builder broke the contract the caller relies on."""


class RoutingError(FtreachError, KeyError):
    """A query was sent to a structure that does not serve the pair."""


class BudgetExceeded(FtreachError, RuntimeError):
    """Exhaustive enumeration would exceed the configured work budget."""
