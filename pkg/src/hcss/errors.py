"""Exception hierarchy shared by the shaping, simulation and fitting code."""


class HcssError(Exception):
    """Base class for all errors raised by this package."""


class RateInfeasible(HcssError):
    """Requested (L, k) cannot be addressed by a dyadic composition set."""


class RankOutOfRange(HcssError):
    """Rank is not in [0, n_seq) for the given codebook entry."""


class UnknownComposition(HcssError):
    """Amplitude sequence realizes a composition outside the codebook."""


class TargetInfeasible(HcssError):
    """Requested entropy target is outside (0, log2 |support|)."""


class LengthMismatch(HcssError):
    """Amplitude sequences fed to the symbol mapper have unequal lengths."""


class DivisibilityViolation(HcssError):
    """Sequence length is incompatible with the mapping dimensionality."""


class DegenerateLength(HcssError):
    """Sequence length is too short to draw D amplitudes without replacement."""


class FramingError(HcssError):
    """Bit payload does not tile into whole shaping words."""


class FrameCorrupt(HcssError):
    """Received amplitude block is outside the shaping sphere."""


class ConfigInvalid(HcssError):
    """Simulation configuration violates its invariants."""


class InsufficientData(HcssError):
    """Not enough sweep records to seed the GN-model fit."""


class NonConvergence(HcssError):
    """Least-squares refinement did not reach the convergence tolerance."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SchemaMismatch(HcssError):
    """CSV input does not match the expected column layout."""
