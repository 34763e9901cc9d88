"""Exception and warning types shared across the package."""


class SharpConstantsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SharpConstantsError, ValueError):
    """A parameter lies outside the mathematically supported domain."""


class NonFiniteError(SharpConstantsError):
    """An integrand returned NaN or +/-inf at a quadrature node."""

    def __init__(self, node: float, value: float):
        self.node = node
        self.value = value
        super().__init__(f"integrand returned non-finite value {value!r} at t={node!r}")


class InvalidEnvelopeError(SharpConstantsError, ValueError):
    """A decay envelope with non-positive rate or negative amplitude."""


class PoleHitError(SharpConstantsError):
    """Evaluation requested at (or within machine tolerance of) the Blaschke pole."""


class PhaseNotRealError(SharpConstantsError):
    """The phase at a point on the imaginary axis failed its purely-real check."""


class ConditioningWarning(UserWarning):
    """Results near the lower end of the gamma range lose accuracy."""
