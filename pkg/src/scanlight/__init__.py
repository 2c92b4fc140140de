"""scanlight: simulator, codec, and countermeasure suite for the
light-to-flatbed-scanner covert channel.

The attacker side turns a command into a padded bit sequence and keys a
light source; the scanner simulator renders the resulting banded scan
under a parametric channel model; the receiver side demodulates the scan
back into the command; and the detector flags modulated scans as a
countermeasure.
"""

from .channel import (
    BULB_MAX_BRIGHTNESS,
    BULB_MIN_BRIGHTNESS,
    BULB_OFF,
    BULB_ON,
    ChannelModel,
    LightInterval,
    LightTimeline,
    ShadeDelta,
    bulb_command_log,
    bulb_modulate,
    focal_length,
    modulate,
    shade_difference,
)
from .codec import (
    PADDING,
    BitSequence,
    apply_padding,
    compute_window,
    decode_command,
    encode_command,
    remove_padding,
)
from .detector import Verdict, classify_scan
from .errors import (
    CorruptPayload,
    DegenerateGeometry,
    DoublePadding,
    InvalidCommand,
    InvalidParameter,
    MisalignedPayload,
    NoSignalPresent,
    OutOfFittedRange,
    PacketTooLarge,
    PaddingNotFound,
    ScanChannelError,
    TimelineOverrun,
    UndetectableContrast,
    UnpaddedTransmission,
)
from .extractor import (
    ExtractionTrace,
    apply_contrast,
    average_lines,
    decode_scan,
    dominant_color,
    estimate_rate,
    extract_signal,
    stretch_signal,
)
from .harness import (
    ALTERNATING_PROBE,
    RoundtripReport,
    SweepResult,
    SweepRow,
    distance_sweep,
    rate_sweep,
    roundtrip,
)
from .imagefiles import load_scan, save_scan
from .scanner import ScanConfig, ScanImage, lines_per_bit, render_scan

__version__ = "0.1.0"

__all__ = [
    "ALTERNATING_PROBE",
    "BULB_MAX_BRIGHTNESS",
    "BULB_MIN_BRIGHTNESS",
    "BULB_OFF",
    "BULB_ON",
    "BitSequence",
    "ChannelModel",
    "CorruptPayload",
    "DegenerateGeometry",
    "DoublePadding",
    "ExtractionTrace",
    "InvalidCommand",
    "InvalidParameter",
    "LightInterval",
    "LightTimeline",
    "MisalignedPayload",
    "NoSignalPresent",
    "OutOfFittedRange",
    "PADDING",
    "PacketTooLarge",
    "PaddingNotFound",
    "RoundtripReport",
    "ScanChannelError",
    "ScanConfig",
    "ScanImage",
    "ShadeDelta",
    "SweepResult",
    "SweepRow",
    "TimelineOverrun",
    "UndetectableContrast",
    "UnpaddedTransmission",
    "Verdict",
    "apply_contrast",
    "apply_padding",
    "average_lines",
    "bulb_command_log",
    "bulb_modulate",
    "classify_scan",
    "compute_window",
    "decode_command",
    "decode_scan",
    "distance_sweep",
    "dominant_color",
    "encode_command",
    "estimate_rate",
    "extract_signal",
    "focal_length",
    "lines_per_bit",
    "load_scan",
    "modulate",
    "rate_sweep",
    "remove_padding",
    "render_scan",
    "roundtrip",
    "save_scan",
    "shade_difference",
    "stretch_signal",
]
