"""Exception types shared across the simulator."""


class IonthermError(Exception):
    """Base class for all iontherm errors."""


class NotHermitian(IonthermError):
    """Matrix expected to be Hermitian is not (within tolerance)."""


class DimensionMismatch(IonthermError):
    """Operator/state dimensions do not match the declared tensor structure."""


class ResonantDrive(IonthermError):
    """Drive detuning coincides exactly with a mode frequency."""


class UnsupportedArgument(IonthermError):
    """Argument outside the supported domain (e.g. non-polynomial 1F1 case)."""


class NonpositiveTemperature(IonthermError):
    """Temperature must be strictly positive."""


class DegenerateOmega(IonthermError):
    """Effective oscillation frequency is zero where a finite one is required."""


class PreconditionViolated(IonthermError):
    """A documented precondition of a simplified formula does not hold."""


class NoReversalPossible(IonthermError):
    """No correlation amplitude can flip the flux sign at the probe time."""


class GridTooSmall(IonthermError):
    """Time grid has too few points for the requested operation."""


class ConfigError(IonthermError):
    """Configuration file is malformed, incomplete, or carries unknown keys."""
