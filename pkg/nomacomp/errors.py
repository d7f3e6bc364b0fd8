"""Exception hierarchy for nomacomp.

Infeasible scenario draws are results, not errors: they surface as
``feasible=False`` on a SolveResult and never raise.
"""


class NomaCompError(Exception):
    """Base class for all nomacomp failures."""


class ConfigError(NomaCompError):
    """Raised when a configuration violates one or more invariants."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors) or "invalid configuration")


class DimensionError(ConfigError):
    """Raised when arrays handed between stages disagree in shape."""

    def __init__(self, message: str):
        super().__init__([message])


class UnsupportedConfigurationError(ConfigError):
    """Raised when an operation is asked to handle dimensions it does not cover."""

    def __init__(self, message: str):
        super().__init__([message])


class SolverCapabilityError(NomaCompError):
    """Raised when no installed solver handles both PSD and exponential cones."""


class SolverFailure(NomaCompError):
    """Raised when a conic solve still fails after its retry, or SCA cannot continue."""


class AggregationError(NomaCompError):
    """Raised when trial records cannot be summarized."""
