"""
Exceptions raised by the geometry engine.
"""
from typing import Any, Optional


class GeometryError(Exception):
    """Base class for every error the engine reports."""


class FormulaSyntaxError(GeometryError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class SortError(GeometryError):
    def __init__(self, message: str, symbol: str):
        self.symbol = symbol
        super().__init__(f"{message}: {symbol}")


class UnassignedVariableError(GeometryError):
    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__(f"Unassigned free variables: {', '.join(self.names)}")


class VocabularyMismatchError(GeometryError):
    pass


class NotPrimeError(GeometryError):
    pass


class FieldAxiomViolation(GeometryError):
    """A finite table failed a field axiom; ``witness`` is the offending tuple."""

    def __init__(self, axiom: str, witness: tuple, report: Optional[Any] = None):
        self.axiom = axiom
        self.witness = witness
        self.report = report
        super().__init__(f"Field axiom '{axiom}' fails at {witness}")


class DegenerateLineError(GeometryError):
    pass


class UnknownTheoryError(GeometryError):
    pass


class TheoryNotLicensedError(GeometryError):
    pass


class FrameError(GeometryError):
    pass


class ConstructionError(GeometryError):
    pass


class FragmentError(GeometryError):
    pass


class VariableContextError(GeometryError):
    pass


class NestingDepthError(GeometryError):
    pass


class BudgetExceeded(GeometryError):
    def __init__(self, budget: str, limit: int):
        self.budget = budget
        self.limit = limit
        super().__init__(f"Budget '{budget}' exceeded (limit {limit})")
