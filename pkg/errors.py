"""Exception hierarchy shared by the arithmetic modules and the CLI."""
from __future__ import annotations

from dataclasses import dataclass


class FftMulError(Exception):
    """Base exception for all library errors."""


class NaturalUnderflow(FftMulError, ArithmeticError):
    """Raised when a natural subtraction would go negative."""


class DivisionByZero(FftMulError, ZeroDivisionError):
    """Raised by divmod and field inversion on a zero divisor."""


class HexFormatError(FftMulError, ValueError):
    """Raised when a hex operand cannot be parsed."""


class NotFound(FftMulError):
    """Raised when a search exhausts its range without a hit."""


class InvalidResidue(FftMulError, ValueError):
    """Raised when a residue class is not coprime to its modulus."""


class ContextMismatch(FftMulError, AssertionError):
    """Raised when field elements of different primes are combined."""


class OrderMismatch(FftMulError, ValueError):
    """Raised when a root does not have the order a transform needs."""


class PlanInconsistent(FftMulError, ValueError):
    """Raised when a Cooley-Tukey plan does not factor its length."""


class ChirpMismatch(FftMulError, ValueError):
    """Raised when a chirp does not match its root or length."""


class LiftAmbiguity(FftMulError, ArithmeticError):
    """Raised when a modulus is too small to lift coefficients uniquely."""


@dataclass
class ParameterInfeasible(FftMulError):
    """Raised when a parameter inequality cannot be satisfied."""

    inequality: str
    detail: str = ""

    def __str__(self) -> str:  # pragma: no cover - trivial
        if self.detail:
            return f"parameter inequality violated: {self.inequality} ({self.detail})"
        return f"parameter inequality violated: {self.inequality}"


class InvariantFailure(FftMulError, AssertionError):
    """Raised when an internal cross-check disagrees."""


class ProfileError(FftMulError, ValueError):
    """Raised when a profile file or value is malformed."""
