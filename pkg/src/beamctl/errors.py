"""Exception types shared across the engine, runner and service layers."""


class BeamctlError(Exception):
    """Base class for all library-specific failures."""


class ConfigError(BeamctlError):
    """A config document violates the schema or carries invalid values."""


class DimensionMismatchError(BeamctlError):
    """Vector/matrix operands do not conform."""


class SingularMatrixError(BeamctlError):
    """A pivot fell below the singularity tolerance during factorization."""


class NonHermitianError(BeamctlError):
    """An operation requiring a Hermitian matrix received a non-Hermitian one."""


class DegenerateControlError(BeamctlError):
    """The solution locus is not a proper circle (vanishing quadratic term)."""


class NegativeDiscriminantError(BeamctlError):
    """No real circle exists for the requested level (infeasible request)."""


class MappingPoleError(BeamctlError):
    """The bilinear gamma/beta mapping was evaluated at its pole."""


class OriginCenterError(BeamctlError):
    """The candidate circle is centered at the origin: min-modulus point is
    nonunique, and no tie rule is defined."""


class BeamAxisNullError(BeamctlError):
    """The weight vector has (numerically) zero response at the beam axis, so
    normalized levels are undefined."""


class LevelOutOfRangeError(BeamctlError):
    """Desired level outside (0, 1]: the optimal-selection rules assume the
    prescribed level never exceeds the beam-axis level."""
