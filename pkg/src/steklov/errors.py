"""Exception hierarchy for the toolkit.

Domain/numeric failures derive from SteklovError; configuration and
expression syntax problems derive from UsageError so the CLI can map the
two families onto distinct exit codes.
"""


class SteklovError(Exception):
    """Base class for domain and numerical errors."""


class BadDimension(SteklovError):
    """Manifold dimension below 2."""


class NonPositiveProfile(SteklovError):
    """Warping function is not strictly positive on [0, 1]."""


class OutOfDomain(SteklovError):
    """Evaluation point outside [0, 1]."""


class FrequencyOnDirichletSpectrum(SteklovError):
    """The chosen frequency makes some transversal block singular."""

    def __init__(self, m_index: int, message: str = ""):
        self.m_index = m_index
        super().__init__(message or f"characteristic function vanishes at m={m_index}")


class IntegrationFailure(SteklovError):
    """Fundamental-system integration did not converge (step-size underflow)."""


class AtCharacteristicRoot(SteklovError):
    """Weyl functions requested at (or too close to) a root of the characteristic function."""


class RootSearchFailure(SteklovError):
    """Dirichlet root bracketing failed; carries bracketing diagnostics."""


class OrderTooHigh(SteklovError):
    """Expansion coefficients dominated by differentiation noise at the requested order."""


class BranchAmbiguity(SteklovError):
    """Two-line clustering cannot decide between competing branch assignments."""


class IllConditionedFit(SteklovError):
    """Regression range too short for a meaningful boundary fit."""


class LengthMismatch(SteklovError):
    """Spectra of different sizes cannot be matched one to one."""


class EvaluationError(SteklovError):
    """Expression evaluation left the real domain (e.g. log of a negative sample)."""


class UsageError(Exception):
    """Base class for configuration and input-syntax errors (CLI exit code 2)."""


class ConfigError(UsageError):
    """Invalid run configuration; ``field`` holds the offending field path."""

    def __init__(self, field: str, message: str = ""):
        self.field = field
        super().__init__(message or f"invalid configuration field: {field}")


class ExpressionSyntaxError(UsageError):
    """Malformed warping expression; carries offset and expected-token info."""

    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"syntax error at offset {position}: expected {expected}")


class DegenerateFitWarning(UserWarning):
    """Residuals in a decay fit reached the roundoff floor."""
