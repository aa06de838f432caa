"""Exception types raised by gharmonics."""


class GHarmonicsError(Exception):
    """Base class for all library errors."""


class DenominatorPole(GHarmonicsError, ZeroDivisionError):
    """A denominator Pochhammer factor vanished."""


class NoConvergence(GHarmonicsError, ArithmeticError):
    """Series did not meet its tail bound within ``max_terms``."""


class BadSampleCount(GHarmonicsError, ValueError):
    pass


class DivisorNearZero(GHarmonicsError, ArithmeticError):
    pass


class StepTooCoarse(GHarmonicsError, ArithmeticError):
    pass


class NotEquivalent(GHarmonicsError, ValueError):
    pass


class ConfigError(GHarmonicsError, ValueError):
    pass


class AliasWarning(UserWarning):
    """Requested mode index is at or above the Nyquist limit of the samples."""
