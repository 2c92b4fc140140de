"""Command text <-> bit sequence codec and per-bit timing.

Commands are printable 7-bit ASCII, rendered one byte per character with
the most significant bit first.  Every transmission is framed with the
fixed ``1001`` marker at both ends.  The marker serves three purposes: it
distinguishes an empty scan from a transmitted empty packet, it marks the
start and end of the signal inside the scan, and its leading ``10`` edge
lets the receiver recover the per-bit line rate without prior knowledge
of the transmitter's timing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CorruptPayload,
    DoublePadding,
    InvalidCommand,
    InvalidParameter,
    MisalignedPayload,
    PaddingNotFound,
)

#: Fixed framing marker prepended and appended to every transmission.
PADDING = (1, 0, 0, 1)

_PRINTABLE_LO = 32
_PRINTABLE_HI = 126


@dataclass(frozen=True)
class BitSequence:
    """Ordered 0/1 payload, optionally framed by the padding marker."""

    bits: tuple[int, ...]
    padded: bool = False

    def __post_init__(self) -> None:
        clean = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in clean):
            raise InvalidParameter("bit values must be 0 or 1")
        object.__setattr__(self, "bits", clean)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    @classmethod
    def from_string(cls, text: str, padded: bool = False) -> "BitSequence":
        """Parse a string of ``0``/``1`` characters."""
        if not text or any(c not in "01" for c in text):
            raise InvalidParameter(f"not a 0/1 bit string: {text!r}")
        return cls(tuple(int(c) for c in text), padded=padded)


def validate_command(cmd: str) -> str:
    if not isinstance(cmd, str) or not cmd:
        raise InvalidCommand("command must be non-empty text")
    for ch in cmd:
        if not _PRINTABLE_LO <= ord(ch) <= _PRINTABLE_HI:
            raise InvalidCommand(f"character {ch!r} is not printable ASCII")
    return cmd


def encode_command(cmd: str) -> BitSequence:
    """Encode printable-ASCII text as bits, 8 per character, MSB first."""
    validate_command(cmd)
    bits = []
    for ch in cmd:
        code = ord(ch)
        bits.extend((code >> shift) & 1 for shift in range(7, -1, -1))
    return BitSequence(tuple(bits))


def decode_command(bits: BitSequence) -> str:
    """Inverse of :func:`encode_command`."""
    if len(bits) % 8 != 0:
        raise MisalignedPayload(f"{len(bits)} bits is not a whole number of bytes")
    chars = []
    for i in range(0, len(bits), 8):
        code = 0
        for b in bits.bits[i : i + 8]:
            code = (code << 1) | b
        if not _PRINTABLE_LO <= code <= _PRINTABLE_HI:
            raise CorruptPayload(f"byte value {code} is not printable ASCII")
        chars.append(chr(code))
    return "".join(chars)


def apply_padding(bits: BitSequence) -> BitSequence:
    """Frame a payload with the 1001 marker on both ends."""
    if bits.padded:
        raise DoublePadding("sequence is already padded")
    return BitSequence(PADDING + bits.bits + PADDING, padded=True)


def remove_padding(bits: BitSequence) -> BitSequence:
    """Strip the 1001 marker; its absence means no transmission took place."""
    if not bits.padded or len(bits) < 2 * len(PADDING):
        raise PaddingNotFound("sequence is too short to carry the framing marker")
    if bits.bits[: len(PADDING)] != PADDING or bits.bits[-len(PADDING) :] != PADDING:
        raise PaddingNotFound("framing marker missing; no transmission present")
    return BitSequence(bits.bits[len(PADDING) : -len(PADDING)])


def compute_window(scan_duration_ms: float, bit_count: int) -> float:
    """Per-bit transmission window: scan duration split evenly over the bits."""
    if scan_duration_ms <= 0:
        raise InvalidParameter("scan duration must be positive")
    if bit_count <= 0:
        raise InvalidParameter("bit count must be positive")
    return scan_duration_ms / bit_count
