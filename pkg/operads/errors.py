"""
Errors Module
Exception hierarchy shared by every operads module.
The controller turns any OperadError into an error result instead of a traceback.
"""

from typing import Optional


class OperadError(Exception):
    """Base class for all errors raised by the workbench."""


class CoefficientError(OperadError):
    """Bad coefficient literal or evaluation request."""


class ParseError(OperadError):
    """
    Syntax error in a polynomial, element or presentation source.

    Args:
        message: Human readable diagnostic
        line: 1-based line of the offending token
        column: 1-based column of the offending token
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self.__str__())

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}, column {self.column}: {self.message}"


class UnknownGeneratorError(ParseError):
    """A monomial uses a generator that was never declared."""


class RepeatedLeafError(ParseError):
    """A leaf label occurs twice in one monomial."""


class LeafRangeError(ParseError):
    """A leaf label lies outside 1..n."""


class ArityError(ParseError):
    """Arity mismatch, e.g. a relation that is not of arity 3."""


class UndeclaredParameterError(ParseError):
    """A coefficient or assignment names a parameter the presentation does not declare."""


class UnknownPresetError(OperadError):
    """No built-in presentation or map with this name."""


class SymmetryError(OperadError):
    """A generator image does not respect the generator's declared symmetry."""


class DomainMismatchError(OperadError):
    """Vectors over incompatible coefficient domains were combined."""


class DimensionMismatchError(OperadError):
    """Vectors of different ambient dimension were combined."""


class NonlinearParameterError(OperadError):
    """A parameter occurs with degree above one where a linear system is required."""


class MissingInverseError(OperadError):
    """An isomorphism check was requested without an inverse map."""


class InternalConsistencyError(OperadError):
    """Two independent computations that must agree did not."""
