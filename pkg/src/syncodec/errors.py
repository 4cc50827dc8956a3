"""Exception types shared across the codec modules."""


class SyncodecError(Exception):
    """Base class for all library errors."""


class AlphabetError(SyncodecError):
    """A symbol or word does not fit the required alphabet."""


class PositionError(SyncodecError):
    """An error-pattern position is out of range for the target word."""


class SizeGuardError(SyncodecError):
    """An exhaustive operation was requested beyond its enumeration cap."""


class NoCandidateError(SyncodecError):
    """Sketch arithmetic produced no consistent correction."""


class MalformedEncodingError(SyncodecError):
    """A runlength-replacement encoding has an inconsistent suffix structure."""


class DecodeFailure(SyncodecError):
    """No consistent source word could be reconstructed."""


class EmptyListError(SyncodecError):
    """The list decoder found no candidate; the input violates its contract."""


class MissingTerminalMarkerError(SyncodecError):
    """A word that must end with the segmentation marker does not."""


class RangeExhaustedError(SyncodecError):
    """The greedy hash construction ran out of values; the range is too small."""


class LocateFailure(SyncodecError):
    """The error-locating decoder could not produce a window."""


class ProfileError(SyncodecError):
    """The requested operation is not available under the active profile."""
