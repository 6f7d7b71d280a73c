"""
Error hierarchy

Each error carries the exit status the command line reports for it.
"""
from typing import Optional

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class SubtypingError(Exception):
    """Base class for all construction errors"""

    exit_status: int = EXIT_NEGATIVE


class ParseError(SubtypingError, ValueError):
    """Malformed declaration file or type expression"""

    exit_status = EXIT_USAGE

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class DeclarationError(SubtypingError, ValueError):
    """Class declarations that do not form a valid class table"""

    exit_status = EXIT_USAGE


class UnknownClassError(SubtypingError, ValueError):
    exit_status = EXIT_USAGE

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown class '{name}'")


class ArityError(SubtypingError, ValueError):
    exit_status = EXIT_USAGE


class NotInCarrierError(SubtypingError, ValueError):
    exit_status = EXIT_USAGE


class NotABijectionError(SubtypingError, ValueError):
    exit_status = EXIT_USAGE


class AntisymmetryError(SubtypingError):
    """Two distinct types ended up below each other"""

    def __init__(self, left: str, right: str):
        self.left = left
        self.right = right
        super().__init__(f"order is not antisymmetric: {left} and {right} are mutual subtypes")


class BudgetExceededError(SubtypingError):
    exit_status = EXIT_BUDGET

    def __init__(self, iteration: int, projected: int, budget: int):
        self.iteration = iteration
        self.projected = projected
        self.budget = budget
        super().__init__(
            f"iteration {iteration} would grow the carrier to {projected} types "
            f"(budget {budget})"
        )
