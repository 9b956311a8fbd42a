"""Exception types for model-level failures.

Argument and configuration mistakes raise plain ``ValueError``; the classes
here mark failures of the physics model itself, which the command line maps
to a distinct exit code.
"""

from __future__ import annotations


class ModelError(RuntimeError):
    """Base class for failures while evaluating the physical model."""


class SpectrumPairingError(ModelError):
    """Eigenvalues of -(WV)^2 failed to pair up within tolerance."""


class ConvergenceError(ModelError):
    """No classical steady state found for the requested operating point."""


class UnstableOperatingPointError(ModelError):
    """The drift matrix has an eigenvalue with positive real part."""

    def __init__(self, message: str, eigenvalue: complex):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class SingularResponseError(ModelError):
    """The frequency-domain response matrix is singular at the analysis frequency."""
