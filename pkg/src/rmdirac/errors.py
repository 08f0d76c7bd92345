"""Exception types shared across the package."""


class RmdiracError(Exception):
    """Base class for all rmdirac errors."""


class DomainError(RmdiracError, ValueError):
    """Input outside the validity domain of a potential or formula."""


class NoInteriorMinimumError(DomainError):
    """The potential has no stationary point at r > 0; supply r_e explicitly."""


class OverflowGuardError(DomainError):
    """An exponential factor would exceed the configured exponent cap."""


class GammaPoleError(DomainError):
    """Gamma function evaluated at a nonpositive integer."""


class ParameterPoleError(DomainError):
    """A hypergeometric denominator parameter hits a pole before termination."""


class InadmissibleEnergyError(RmdiracError):
    """Trial energy lies outside the real-coefficient domain of an energy equation."""


class BoundViolationError(InadmissibleEnergyError):
    """A square-root radicand required to be nonnegative is negative."""


class QuantizationPoleError(InadmissibleEnergyError):
    """The quantization denominator vanishes at this trial energy."""


class NoBoundStateError(RmdiracError):
    """The requested closed-form level does not satisfy its bound-state branch condition."""


class DegenerateDenominatorError(RmdiracError):
    """The spinor coupling denominator M +/- E - C vanishes."""


class ZeroNormError(RmdiracError):
    """Attempted to normalize an identically zero state."""


class NonConvergenceError(RmdiracError):
    """An iterative solve exceeded its iteration cap.

    The ``trace`` attribute, when present, holds the iterate history.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class BranchAmbiguityError(RmdiracError):
    """Energy recovery from an eigenvalue has no real solution in the window."""


class DiscretizationError(RmdiracError):
    """The discretized eigenvector violates its tail condition; enlarge r_max."""


class ConfigError(RmdiracError, ValueError):
    """Invalid or unknown configuration input."""


class CardinalityMismatchWarning(UserWarning):
    """Closed-form and numerical level lists have unmatched entries."""
