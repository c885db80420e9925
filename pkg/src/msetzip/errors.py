"""Exception types shared across the package."""


class MsetzipError(Exception):
    """Base class for errors raised by this package."""


class FormatError(MsetzipError):
    """Container bytes do not parse: bad magic, version, or field id."""


class TruncationError(MsetzipError):
    """A bit stream ended before a complete value could be read."""


class CorruptStreamError(MsetzipError):
    """Decoded data is structurally impossible for the declared parameters."""


class ModelMismatchError(MsetzipError):
    """Input data is inconsistent with the codec parameters.

    Raised at encode time, before any output is produced: a member whose
    length has zero probability under the length model, a member that
    extends a prefix the end detector already considers complete, or a
    symbol whose probability is structurally zero.
    """
