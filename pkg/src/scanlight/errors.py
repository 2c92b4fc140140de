"""Exception types shared across the toolkit."""


class ScanChannelError(Exception):
    """Base class for codec, channel, rendering, and extraction errors."""


class InvalidCommand(ScanChannelError):
    """Command text is empty or contains non-printable-ASCII characters."""


class MisalignedPayload(ScanChannelError):
    """Unpadded payload length is not a whole number of bytes."""


class CorruptPayload(ScanChannelError):
    """A decoded byte falls outside printable ASCII."""


class DoublePadding(ScanChannelError):
    """Padding applied to an already padded sequence."""


class PaddingNotFound(ScanChannelError):
    """The 1001 framing marker is missing; no transmission is present."""


class InvalidParameter(ScanChannelError):
    """A numeric argument is outside its documented range."""


class UnpaddedTransmission(ScanChannelError):
    """Only padded sequences may be modulated."""


class OutOfFittedRange(ScanChannelError):
    """Distance outside the 0-700 cm range of the fitted shade curve."""


class DegenerateGeometry(ScanChannelError):
    """Lens geometry with target radius not larger than beam radius."""


class UndetectableContrast(ScanChannelError):
    """Bulb brightness swing below the detectability floor."""


class TimelineOverrun(ScanChannelError):
    """Light timeline lasts longer than the scan it should fit into."""


class NoSignalPresent(ScanChannelError):
    """No scan line is brighter than the background."""


class PacketTooLarge(ScanChannelError):
    """Signal spans more than half of the scan lines."""
