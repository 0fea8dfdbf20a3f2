"""Exception hierarchy for the scored automata processor."""


class ScoredApError(Exception):
    """Base class for every error raised by this package."""


class ModelInvariantViolation(ScoredApError, ValueError):
    pass


class EmptyPattern(ScoredApError, ValueError):
    pass


class EmptyInput(ScoredApError, ValueError):
    pass


class NoAlignment(ScoredApError):
    """No accepted path exists for the query."""


class InstanceTooLarge(ScoredApError, ValueError):
    pass


class EngineFinalized(ScoredApError, RuntimeError):
    pass


class PlacementError(ScoredApError):
    """A placement violates one of the overlay limits.

    ``deficit`` is how far the offending quantity exceeds its limit, so
    raising the limit by exactly ``deficit`` makes that check pass.
    """

    def __init__(self, message: str, *, observed: int, limit: int):
        super().__init__(message)
        self.observed = observed
        self.limit = limit

    @property
    def deficit(self) -> int:
        return self.observed - self.limit


class CapacityExceeded(PlacementError):
    pass


class FanoutExceeded(PlacementError):
    def __init__(self, message: str, *, observed: int, limit: int, pattern_id, state, role: str):
        super().__init__(message, observed=observed, limit=limit)
        self.pattern_id = pattern_id
        # "start" for the implicit start source, else the global slot index
        self.state = state
        self.role = role


class WireBudgetExceeded(PlacementError):
    pass


class MalformedFasta(ScoredApError, ValueError):
    pass


class EmptyFile(ScoredApError, ValueError):
    pass


class AutomatonFormatError(ScoredApError, ValueError):
    pass
