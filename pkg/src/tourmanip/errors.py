"""Exception hierarchy shared by every module."""


class ManipulationError(Exception):
    """Base class for all errors raised by tourmanip."""


class IllegalMove(ManipulationError):
    """A plan move references an unknown game or violates the throwing direction."""


class InvalidOutcome(ManipulationError):
    """An outcome pair is not a member of the scoring model."""


class ModelNotSupported(ManipulationError):
    """The scoring model is outside the polynomially solvable form."""

    def __init__(self, message="scoring model not of form S={(i,n-i)}"):
        super().__init__(message)


class NotAchievable(ManipulationError):
    """No legal manipulation reaches the requested goal."""


class MalformedTree(ManipulationError):
    """A cup tree is not a perfect binary tree over the tournament's teams."""


class MalformedField(ManipulationError):
    """A seeded field or bracket is not a permutation of a power-of-two team set."""


MalformedBracket = MalformedField


class IllegalThrow(ManipulationError):
    """A throw was flagged on a game whose fair winner is not in the coalition."""


class CoalitionTooLarge(ManipulationError):
    """The coalition exceeds the configured bound for an exponential-in-c search."""


class MalformedNetwork(ManipulationError):
    """A flow network violates its structural invariants."""


class Infeasible(ManipulationError):
    """No flow satisfies every arc bound."""


class InvalidCapacity(ManipulationError):
    """A team already holds more points than the target allows."""


class TooLarge(ManipulationError):
    """An exhaustive oracle query exceeds its enumeration cap."""
