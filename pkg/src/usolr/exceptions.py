from __future__ import annotations

import enum


class USolRError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(USolRError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLine(GraphParseError):
    pass


class DuplicateEdge(GraphParseError):
    pass


class SelfLoop(GraphParseError):
    pass


class EndpointOutOfRange(GraphParseError):
    pass


class EdgeCountMismatch(GraphParseError):
    pass


class ConfigurationError(USolRError, ValueError):
    pass


class GraphDisconnected(USolRError):
    pass


class MoveError(enum.Enum):
    TARGET_OCCUPIED = "TargetOccupied"
    SOURCE_EMPTY = "SourceEmpty"
    GAP_IN_PATH = "GapInPath"
    CYCLE_NOT_FULL = "CycleNotFull"
    NOT_A_PATH = "NotAPath"
    NOT_A_CYCLE = "NotACycle"


class InvalidMove(USolRError, ValueError):
    def __init__(self, reason: MoveError, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason.value}: {detail}" if detail else reason.value)


class CapExceeded(USolRError):
    """Exact search would exceed its state or cycle budget."""

    def __init__(self, states_visited: int, message: str = ""):
        self.states_visited = states_visited
        super().__init__(message or f"state budget exhausted after {states_visited} states")


class OccupiedSetsDiffer(USolRError, ValueError):
    pass


class NotACycle(USolRError, ValueError):
    pass


class AlreadySolvable(USolRError):
    pass


class AugmentationImpossible(USolRError):
    pass


class VerificationFailed(USolRError):
    """A constructed plan did not verify; indicates an internal bug."""
