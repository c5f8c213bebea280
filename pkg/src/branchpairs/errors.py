"""Exception types shared across the package."""

from __future__ import annotations


class BranchpairsError(Exception):
    """Base class for all errors raised by this package."""


class NotSemicomplete(BranchpairsError):
    """Input digraph has a non-adjacent vertex pair where adjacency is required."""

    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"vertices {pair[0]} and {pair[1]} are not adjacent")


class NotStrong(BranchpairsError):
    """Operation requires a strongly connected digraph (or endpoint placement
    that only strongness would provide)."""


class ParseError(BranchpairsError):
    """Input text is not a well-formed instance, pair, or certificate."""


class SizeMismatch(BranchpairsError):
    """Two digraphs that must have equal order do not."""


class TooLarge(BranchpairsError):
    """Instance exceeds the documented size cap of an exhaustive operation."""


class BadEndpoints(BranchpairsError):
    """Requested endpoints are invalid for the operation (out of range,
    coincide where they must differ, or sit in the wrong component)."""


class NoPath(BranchpairsError):
    """Defensive: a path guaranteed to exist could not be found."""


class NoBasePath(BranchpairsError):
    """Path-pair precondition violated: one of the single paths does not exist."""


class PreconditionViolated(BranchpairsError):
    """A documented operation precondition does not hold for the input."""


class ConstraintUnsatisfiable(BranchpairsError):
    """Random generation could not satisfy the requested constraint within the
    resampling cap."""


class InternalInconsistency(BranchpairsError):
    """The implementation reached a state its theory rules out.  Seeing this
    exception always indicates a bug; it is never a property of the input."""
