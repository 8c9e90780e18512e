"""Exception types shared across the package."""

from __future__ import annotations


class NGroupoidError(Exception):
    """Base class for all package errors."""


class CompositionError(NGroupoidError):
    """Endpoints or facets do not line up tip-to-tail."""


class ConstructionHalted(NGroupoidError):
    """A skeleton edge has an empty arrow set: no skeleton exists.

    Carries the offending edge and its axis.
    """

    def __init__(self, edge, axis: int, source, target):
        self.edge = edge
        self.axis = axis
        self.source = source
        self.target = target
        super().__init__(
            f"no arrows {source!r} -> {target!r} in constituent {axis} "
            f"for edge {tuple(edge)}"
        )


class GroupValidationError(NGroupoidError):
    """An element list fails the finite-group axioms."""


class UnknownBasePointError(NGroupoidError):
    """A point label is not part of the base set."""


class PathError(NGroupoidError):
    """Path steps are not successively adjacent."""


class FormatError(NGroupoidError):
    """A structured input file fails to parse or validate."""
