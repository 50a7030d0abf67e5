"""Exception types shared across the package."""


class SirsdError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SirsdError):
    """State left the admissible region (living-population underflow or
    a diverging iterate)."""


class SimplexError(SirsdError):
    """State violates one or more simplex invariants.

    Carries the list of human-readable violations in ``violations``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DimensionError(SirsdError):
    """Mismatched shapes, lengths, sampling steps, or dictionaries."""


class ConvergenceError(SirsdError):
    """A matrix decomposition failed to converge."""


class SpectrumError(SirsdError):
    """Spectral data requested from a model that does not carry any."""


class UnknownPresetError(SirsdError):
    """Requested scenario preset does not exist."""
