"""
Exception hierarchy for the BFHP toolkit.

Every error raised on purpose by this package derives from BfhpError.
Precondition failures also derive from ValueError so generic callers
can keep catching that.
"""


class BfhpError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(BfhpError):
    """Raised when settings fail validation."""


class DomainError(BfhpError, ValueError):
    """Raised when an input violates an operation's precondition."""

    def __init__(self, parameter: str, message: str) -> None:
        self.parameter = parameter
        super().__init__(f"{parameter}: {message}")


class InvalidInstanceError(DomainError):
    """Raised when C + N*j is not a perfect e-th power."""


class MalformedBundleError(DomainError):
    """Raised when a ciphertext bundle violates C1 < p."""


class SamplingBudgetExceeded(BfhpError):
    """Raised when a rejection sampler runs out of attempts."""

    def __init__(self, what: str, attempts: int) -> None:
        self.what = what
        self.attempts = attempts
        super().__init__(f"Could not sample {what} within {attempts} attempts")


class SearchSpaceTooLarge(BfhpError):
    """Raised when an enumeration would exceed its configured cap."""

    def __init__(self, what: str, size: int, cap: int) -> None:
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: {size} candidates exceeds cap {cap}")


class IntegrityAbort(BfhpError):
    """Raised by decrypt_or_raise when the recovered messages disagree."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"ABORT: {reason}")


class FormatError(BfhpError):
    """Raised when a serialized file cannot be decoded."""

    def __init__(self, message: str, offset: int | None = None) -> None:
        self.offset = offset
        where = f" at byte {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")
