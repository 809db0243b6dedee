"""Exception types shared across the package.

Every error raised by plumbweave derives from :class:`PlumbweaveError`, so
callers (notably the CLI) can distinguish domain errors from genuine bugs.
The class name is part of the error contract: user-facing messages always
start with it.
"""


class PlumbweaveError(Exception):
    """Base class for all errors raised by this package."""


class TreeError(PlumbweaveError):
    """Invalid tree data."""


class FormatError(TreeError):
    """Malformed tree file or serialized document."""


class CycleDetected(TreeError):
    """The edge set contains a cycle (self-loop, multi-edge, or genuine cycle)."""


class Disconnected(TreeError):
    """The edge set does not connect all vertices."""


class BadRoot(TreeError):
    """Missing root, or root edge not incident to the root vertex."""


class DuplicateId(TreeError):
    """A vertex or edge identifier is declared twice."""


class EmptyTree(TreeError):
    """No edges: a single vertex cannot carry a (vertex, edge) root."""


class BadRotation(TreeError):
    """A rotation line is not a permutation of the incident edges."""


class UnknownVertex(PlumbweaveError):
    """A vertex identifier does not exist in the relevant structure."""


class IndexOutOfRange(PlumbweaveError):
    """An index argument is outside its documented range."""


class BadDimension(PlumbweaveError):
    """Sphere dimension parameter below the supported minimum."""


class DimensionMismatch(PlumbweaveError):
    """Vector or word dimensions do not match the ambient lattice."""


class NonInvertibleTwist(PlumbweaveError):
    """The requested inverse twist is not a lattice automorphism."""


class NotAlgorithmOutput(PlumbweaveError):
    """Operation requires a pristine fibration as produced by ``fibrate``."""
