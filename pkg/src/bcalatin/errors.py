"""Exception hierarchy shared by every module."""


class BcaError(Exception):
    """Base class for library errors."""


class ContractError(BcaError, ValueError):
    """An argument violates the documented precondition of an operation."""


class NotBipermutiveError(BcaError, ValueError):
    """A truth table was expected to be bipermutive but is not."""

    def __init__(self, message: str, side: str):
        super().__init__(message)
        self.side = side


class ResourceLimitError(BcaError, RuntimeError):
    """A brute-force routine was asked to exceed its configured size cap.

    This is never a mathematical verdict.
    """
