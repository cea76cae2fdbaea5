"""
Exception hierarchy and process exit codes for exlen.
"""

from enum import IntEnum
from typing import TYPE_CHECKING, List, Optional

if TYPE_CHECKING:
    from .models import Violation


class ExitCode(IntEnum):
    """Exit statuses of the command-line front end."""
    OK = 0
    USAGE = 1
    VALIDATION = 2
    CONTRACT = 3
    SELFTEST = 4


class ExlenError(Exception):
    """Base class for every error raised by the engine."""
    exit_code = ExitCode.CONTRACT


class PresentationError(ExlenError):
    """A corpus document could not be turned into a presentation."""
    exit_code = ExitCode.VALIDATION

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class EnumerationLimitError(ExlenError):
    """Raised instead of attempting an enumeration above the configured bound."""

    def __init__(self, count: int, bound: int):
        self.count = count
        self.bound = bound
        super().__init__(
            f"refusing to enumerate over {count} indecomposables (bound {bound}); "
            f"raise --max-indecs or split the presentation into smaller extension-closed pieces"
        )


class PreconditionError(ExlenError):
    """An operation was called outside its precondition."""


class ContractViolation(ExlenError):
    """The presentation breaks the length-category contract."""


class NoLabelError(ContractViolation):
    """No brick satisfies the labelling conditions for a Hasse arrow."""


class AmbiguousLabelError(ContractViolation):
    """Several minimal bricks satisfy the labelling conditions for a Hasse arrow."""


class ValidationFailed(ExlenError):
    """A presentation failed validation; carries the report's violations."""
    exit_code = ExitCode.VALIDATION

    def __init__(self, name: str, violations: List["Violation"]):
        self.violations = violations
        super().__init__(f"{name}: {len(violations)} validation violation(s)")
