"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`PseudoTriError` so callers (and the CLI) can tell input problems
apart from genuine bugs.
"""

from __future__ import annotations


class PseudoTriError(Exception):
    """Base class for all package errors."""


# -- plane graphs -----------------------------------------------------------


class DegenerateGraph(PseudoTriError, ValueError):
    """Too few vertices, loops, multi-edges or a disconnected graph."""


class InconsistentRotation(PseudoTriError, ValueError):
    """A rotation does not list exactly the edges incident to its vertex."""


class OuterFaceNotFound(PseudoTriError, ValueError):
    """The outer-face hint matches none of the traced faces."""


class EmptySubset(PseudoTriError, ValueError):
    pass


class DisconnectedSubset(PseudoTriError, ValueError):
    pass


# -- rigidity / Henneberg -----------------------------------------------------


class NotIndependent(PseudoTriError, ValueError):
    """Some vertex subset spans more than 2k - 3 edges."""


class NotLaman(PseudoTriError, ValueError):
    pass


class NotLamanPlusOne(PseudoTriError, ValueError):
    pass


class PrescriptionInvalid(PseudoTriError, ValueError):
    pass


class StepInconsistent(PseudoTriError, ValueError):
    """A Henneberg step cannot be applied to the graph built so far."""


class OuterFaceTooSmall(PseudoTriError, ValueError):
    pass


# -- combinatorial pseudo-triangulations ---------------------------------------


class BadEdgeCount(PseudoTriError, ValueError):
    pass


class PrescribedVertexOnOuterFace(PseudoTriError, ValueError):
    pass


class NoPerfectMatching(PseudoTriError):
    """The plane graph admits no combinatorial pseudo-triangulation."""


class NotSimplyConnected(PseudoTriError, ValueError):
    pass


class TooLarge(PseudoTriError, ValueError):
    pass


class NoValidExtension(PseudoTriError):
    """No labeling of the new angles completes a valid labeling."""


# -- stretching / embedding ----------------------------------------------------


class RepeatedBoundaryVertex(PseudoTriError, ValueError):
    pass


class NotThreeConnected(PseudoTriError):
    def __init__(self, message: str, vertex: int | None = None, cut: tuple[int, ...] = ()):
        super().__init__(message)
        self.vertex = vertex
        self.cut = cut


class SolverFailure(PseudoTriError):
    pass


class LabelMismatch(PseudoTriError):
    """The stretched embedding does not realise the requested labeling."""


class AnchorNotOnFace(PseudoTriError, ValueError):
    pass


class NoPlacement(PseudoTriError):
    pass


class SequenceNotInteriorOnly(PseudoTriError, ValueError):
    pass


class IsolatedVertex(PseudoTriError, ValueError):
    pass


class FacesMismatch(PseudoTriError, ValueError):
    """Coordinates realise a different rotation system than the graph."""


# -- io ------------------------------------------------------------------------


class ParseError(PseudoTriError, ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field


class BadSize(PseudoTriError, ValueError):
    pass
