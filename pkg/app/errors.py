from typing import Optional


class SimplicialError(Exception):
    """Base class for every failure raised by the library"""


class StructuralError(SimplicialError):
    """Invalid simplicial data: non-closed subcomplex, mismatched sources, bad faces"""


class ParseError(SimplicialError):
    """Interchange file or catalog expression could not be read"""


class CapError(SimplicialError):
    def __init__(self, message: str, dim: Optional[int] = None, cap: Optional[int] = None):
        super().__init__(message)
        self.dim = dim
        self.cap = cap


class BudgetError(SimplicialError):
    def __init__(self, message: str, partial_count: int = 0, nodes: int = 0):
        super().__init__(message)
        self.partial_count = partial_count
        self.nodes = nodes


class LawViolation(SimplicialError):
    def __init__(self, message: str, offending: Optional[str] = None):
        super().__init__(message)
        self.offending = offending


class CogroupRequired(SimplicialError):
    """The cogroup variant was requested for an object not flagged as a cogroup"""


# CLI exit codes
EXIT_OK = 0
EXIT_LAW = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, ParseError):
        return EXIT_PARSE
    if isinstance(error, (BudgetError, CapError)):
        return EXIT_BUDGET
    return EXIT_LAW
