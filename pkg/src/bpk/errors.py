"""Exception hierarchy.

Validators never raise; they return lists of violation strings. Exceptions
are reserved for precondition failures of constructive operations.
"""

from __future__ import annotations


class BpkError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(BpkError):
    pass


class CapExceeded(BpkError):
    def __init__(self, n: int, cap: int) -> None:
        super().__init__(f"graph has {n} vertices, exact treewidth cap is {cap}")
        self.n = n
        self.cap = cap


class Disconnected(BpkError):
    pass


class Unreachable(BpkError):
    pass


class NotAForest(BpkError):
    pass


class NotInClosure(BpkError):
    pass


class DegeneratePosition(BpkError):
    def __init__(self, message: str, primitives: tuple = ()) -> None:
        super().__init__(message)
        self.primitives = primitives


class DuplicateChord(BpkError):
    pass


class BadParams(BpkError):
    pass


class NotStarForest(BpkError):
    pass


class AdjacentCrossing(BpkError):
    pass


class NotTransparent(BpkError):
    pass


class CoverMismatch(BpkError):
    pass


class KZero(BpkError):
    pass


class RadiusExceeded(BpkError):
    pass


class ModelHostMismatch(BpkError):
    pass


class NotCircular(BpkError):
    pass


class NotSpanning(BpkError):
    pass
