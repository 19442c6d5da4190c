"""Exception hierarchy shared by every choicenet module."""

from typing import Optional, Sequence


class ChoiceNetError(Exception):
    """Base class for all errors raised by choicenet."""

    pass


class ContractViolation(ChoiceNetError, ValueError):
    """A precondition or invariant of an operation was violated."""

    pass


class NetworkFormatError(ChoiceNetError):
    """A serialized network document could not be parsed."""

    def __init__(
        self,
        message: str,
        position: Optional[int] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
        location: Optional[str] = None,
    ) -> None:
        self.position = position
        self.line = line
        self.column = column
        self.location = location

        details = []
        if line is not None and column is not None:
            details.append(f"line {line}, column {column}")
        if position is not None:
            details.append(f"char {position}")
        if location:
            details.append(f"at {location}")
        suffix = f" ({'; '.join(details)})" if details else ""
        super().__init__(f"{message}{suffix}")


class ApproximationBudgetError(ChoiceNetError):
    """The base approximator could not certify the requested L1 budget."""

    def __init__(self, message: str, budget: float, achieved: Optional[float]) -> None:
        self.budget = budget
        self.achieved = achieved
        super().__init__(message)


class QuadratureError(ChoiceNetError):
    """An integrand produced a non-finite value."""

    def __init__(self, message: str, point: Sequence[float]) -> None:
        self.point = tuple(float(c) for c in point)
        super().__init__(f"{message} at point {list(self.point)}")


class ConfigError(ChoiceNetError):
    """An experiment config could not be parsed or validated."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        field_path: Optional[str] = None,
    ) -> None:
        self.line = line
        self.field_path = field_path

        details = []
        if field_path:
            details.append(f"field '{field_path}'")
        if line is not None:
            details.append(f"line {line}")
        suffix = f" ({', '.join(details)})" if details else ""
        super().__init__(f"{message}{suffix}")


class VerificationError(ChoiceNetError):
    """A report cannot be re-verified."""

    pass
