"""Exception hierarchy shared across the package.

Two families matter to the CLI: ``InputError`` maps to exit code 2 (bad
arguments, files, or parameters), ``RuntimeFailure`` maps to exit code 3.
"""


class TrackerError(Exception):
    """Base class for all package errors."""


class InputError(TrackerError):
    """Caller-supplied data or parameters are unusable."""


class RuntimeFailure(TrackerError):
    """Failure while processing otherwise valid inputs."""


class InvalidInput(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class SizeMismatch(InputError):
    pass


class ParameterConstraintViolation(InputError):
    pass


class GammaOutOfRange(ParameterConstraintViolation):
    pass


class NonpositiveRegularizer(ParameterConstraintViolation):
    pass


class MalformedGroundTruth(InputError):
    pass


class MissingFrames(InputError):
    pass


class FrameUnavailable(RuntimeFailure):
    pass


class ImaginaryResidueExceeded(RuntimeFailure):
    pass
