"""Exception hierarchy shared across the package."""

from __future__ import annotations


class WhcertError(Exception):
    """Base class for all package-specific failures."""


class NotMonomialDetError(WhcertError):
    """The determinant is not of the form c*t**theta with c != 0."""


class NonConstantDeterminantError(WhcertError):
    """Unimodular inversion requires a nonzero constant determinant."""


class VerificationFailedError(WhcertError):
    """A factorisation candidate failed exact post-verification and the
    search budget is exhausted; unverified factors are never emitted."""


class NormalisationUnavailableError(WhcertError):
    """The requested normalisation mode is not admissible (zero pivot or
    unstable index pattern)."""


class NonExactDivisionError(WhcertError):
    """Laurent division left a remainder; the quotient is not finite data."""


class InconsistentScalarDataError(WhcertError):
    """Supplied scalar factorisation data does not reproduce the inputs."""


class InadmissibleZetaError(WhcertError):
    """(zeta1, zeta2) violates the admissibility inequalities of a stream."""
