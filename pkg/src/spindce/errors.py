"""Exception hierarchy shared by all modules.

Every error the package raises deliberately derives from SpindceError, so
callers (and the command line front end) can map failure classes to exit
codes without string matching.
"""


class SpindceError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(SpindceError, ValueError):
    """An argument is outside the documented domain (non-finite, wrong range)."""


class LosslessPoleError(SpindceError):
    """Undamped permittivity evaluated exactly at its resonance frequency."""


class LosslessResonanceCrossingError(SpindceError):
    """Total rate requested for an undamped model whose resonance lies inside
    the emission band; the integral diverges without damping."""


class CalibrationError(SpindceError):
    """Vacuum-density calibration gave a frequency-dependent ratio."""


class ConvergenceError(SpindceError):
    """Adaptive quadrature exhausted its panel budget.

    Carries the partial result so callers can inspect how far it got.
    """

    def __init__(self, message, value, abs_error, n_evals):
        super().__init__(message)
        self.value = value
        self.abs_error = abs_error
        self.n_evals = n_evals


class FitError(SpindceError):
    """An asymptote regression was too poor to locate the crossover."""


class DegenerateObjectiveError(SpindceError):
    """Shape optimization requested for an objective that is nowhere positive."""


class MissingMechanicalDataError(SpindceError):
    """Burst speed requested for a material with neither an override nor
    density and tensile strength."""


class ConfigError(SpindceError):
    """Base class for configuration and catalog problems."""


class ParseError(ConfigError):
    """File is unreadable or not valid JSON."""


class SchemaError(ConfigError):
    """Config or catalog violates the schema; the message names the key."""


class UnknownMaterialError(ConfigError):
    """Material name not present in the catalog."""
