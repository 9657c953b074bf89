"""Exception types shared across the package."""


class CertFFTError(Exception):
    """Base class for package-specific failures."""


class InvalidSpecError(CertFFTError, ValueError):
    """A sparse-spectrum specification violates its invariants."""


class SignalFormatError(CertFFTError, ValueError):
    """A signal file is malformed; ``offset`` points at the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class DivisibilityError(CertFFTError, ValueError):
    """A decimation stride does not divide the signal length."""


class NoInverseError(CertFFTError, ValueError):
    """A modular inverse does not exist (arguments are not coprime)."""


class ConfigurationError(CertFFTError, ValueError):
    """A moduli/pipeline configuration is inconsistent with the signal."""


class ConstructionError(CertFFTError, ValueError):
    """An adversarial plan cannot be realized with the given parameters."""
