"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class TopoError(Exception):
    """Base class for all domain errors raised by topocx."""


class InvalidCell(TopoError, ValueError):
    """A cell is malformed (repeated vertex, degenerate cycle, bad label)."""


class UnsupportedRank(TopoError, ValueError):
    """A rank outside the range a complex or operator supports."""


class RankViolation(TopoError, ValueError):
    """Insertion would break rank monotonicity of a combinatorial complex."""


class NotFound(TopoError, LookupError):
    """A cell is not present in the complex."""

    def __str__(self) -> str:
        # LookupError.__str__ would repr() the message
        return str(self.args[0]) if self.args else ""


class UnsupportedSignedIncidence(TopoError, ValueError):
    """Signed incidence requested on a domain without orientation."""


class InvalidNeighborhood(TopoError, ValueError):
    """The via-rank of an (co)adjacency lies on the wrong side of the rank."""


class NotSymmetric(TopoError, ValueError):
    """The eigensolver was handed a non-symmetric matrix."""


class NoConvergence(TopoError, RuntimeError):
    """The iterative eigensolver hit its iteration cap."""

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(message)
        self.residual = residual


class EmptyDomain(TopoError, ValueError):
    """An embedding was requested for an empty skeleton."""


class InvalidDim(TopoError, ValueError):
    """Requested embedding dimension is not attainable."""


class ShapeError(TopoError, ValueError):
    """Feature, weight or operator shapes do not line up."""


class ParseError(TopoError, ValueError):
    """A text document does not follow its format."""


class UnsupportedFace(ParseError):
    """An OFF face that is not a triangle."""
