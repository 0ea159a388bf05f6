"""Exception types shared across the package."""


class TrackingError(Exception):
    """Base class for errors raised by this package."""


class EnumerationCapExceeded(TrackingError):
    """An exhaustive enumeration would exceed the configured cap."""


class ObjectiveSetTooLarge(TrackingError):
    """A trajectory set is too large for exact union-mass evaluation."""


class MissingCoverageRect(TrackingError):
    """A trajectory id has no coverage rectangle configured."""


class DegenerateObjective(TrackingError):
    """Curvature is undefined because no usable singleton value is nonzero."""


class UndefinedAttackRate(TrackingError):
    """Attack rate is undefined because the unattacked value is zero."""


class SpecError(TrackingError):
    """An experiment spec failed validation; the message names the field."""


class CsvFormatError(TrackingError):
    """A results CSV is malformed; the message carries the line number."""
