"""Receiver side: demodulate a scan image back into a command.

The pipeline mirrors what runs on the compromised host: contrast stretch,
background estimation, per-line averaging, half-maximum thresholding, rate
recovery from the leading framing run, midpoint bit sampling, unframing,
and ASCII decoding.  Every stage lands in an :class:`ExtractionTrace` so a
failed decode can be inspected (or plotted) stage by stage.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .codec import PADDING, BitSequence, decode_command, remove_padding
from .errors import (
    InvalidParameter,
    NoSignalPresent,
    PacketTooLarge,
    PaddingNotFound,
    ScanChannelError,
)
from .scanner import ScanImage

# Percentile anchors of the contrast stretch.
_STRETCH_LO_PCT = 5.0
_STRETCH_HI_PCT = 95.0


@dataclass
class ExtractionTrace:
    """All intermediate artifacts of one demodulation run.

    ``command`` is present iff every stage succeeded; otherwise ``error``
    holds the stage failure and the fields before it stay populated.
    """

    contrast_image: ScanImage | None = None
    background: int | None = None
    line_average: np.ndarray | None = None
    threshold: float | None = None
    stretched: np.ndarray | None = None
    rate_lines: float | None = None
    padded_bits: BitSequence | None = None
    command: str | None = None
    error: ScanChannelError | None = None

    @property
    def succeeded(self) -> bool:
        return self.command is not None


def apply_contrast(img: ScanImage) -> ScanImage:
    """Monotone linear stretch mapping the 5th/95th percentiles to 0/255.

    Widens the gap between the dark and bright pixel populations; an image
    already spanning the full range maps (almost) onto itself, and a
    uniform image passes through untouched.
    """
    flat = img.pixels.reshape(-1)
    lo = float(np.percentile(flat, _STRETCH_LO_PCT))
    hi = float(np.percentile(flat, _STRETCH_HI_PCT))
    if hi <= lo:
        return ScanImage(pixels=img.pixels.copy(), config=img.config)
    scale = 255.0 / (hi - lo)
    values = np.arange(256, dtype=np.float64)
    lut = np.clip(np.rint((values - lo) * scale), 0.0, 255.0).astype(np.uint8)
    return ScanImage(pixels=kernels.apply_lut(img.pixels, lut), config=img.config)


def dominant_color(img: ScanImage) -> int:
    """Modal luma value; ties break toward the smaller shade."""
    luma = kernels.luma_image(img.pixels)
    counts = np.bincount(luma.reshape(-1), minlength=256)
    return int(np.argmax(counts))


def average_lines(img: ScanImage, background: float) -> np.ndarray:
    """Per-line mean luma relative to the background shade."""
    if not 0 <= background <= 255:
        raise InvalidParameter("background must lie in [0, 255]")
    luma = kernels.luma_image(img.pixels)
    sums = kernels.line_luma_sums(luma)
    return sums / img.width - float(background)


def stretch_signal(line_average: np.ndarray, threshold: float) -> np.ndarray:
    """Binarize the line averages: 1 where the value exceeds the threshold."""
    values = np.asarray(line_average, dtype=np.float64)
    if values.size == 0 or float(values.max()) <= 0.0:
        raise NoSignalPresent("no line rises above the background")
    return (values > threshold).astype(np.uint8)


def estimate_rate(stretched: np.ndarray) -> float:
    """Lines per bit, recovered as the length of the first bright run.

    The framing marker starts ``10``, so the first maximal 1-run spans
    exactly one bit regardless of the transmitter's window choice.
    """
    values = np.asarray(stretched)
    ones = np.flatnonzero(values)
    if ones.size == 0:
        raise NoSignalPresent("no bright line in the stretched signal")
    first = int(ones[0])
    zeros_after = np.flatnonzero(values[first:] == 0)
    if zeros_after.size == 0:
        raise NoSignalPresent("bright region never ends; no keying visible")
    return float(zeros_after[0])


def extract_signal(stretched: np.ndarray, rate_lines: float) -> BitSequence:
    """Sample the stretched signal at bit midpoints into a padded sequence.

    Sampling starts at the first bright line and reads offset
    ``(k + 0.5) * rate_lines`` for k = 0, 1, ...; it stops once a sample
    lands past the last bright line, which (thanks to the trailing marker
    ending in 1) is exactly the end of the transmission.
    """
    if rate_lines < 1:
        raise InvalidParameter("need at least one line per bit to sample")
    values = np.asarray(stretched)
    ones = np.flatnonzero(values)
    if ones.size == 0:
        raise PaddingNotFound("blank signal")
    start, last = int(ones[0]), int(ones[-1])
    if (last - start + 1) > 0.5 * values.size:
        raise PacketTooLarge(
            f"signal spans {last - start + 1} of {values.size} lines; "
            "packets must fit in half the scan"
        )
    bits: list[int] = []
    k = 0
    while True:
        idx = start + int(np.floor((k + 0.5) * rate_lines))
        if idx > last:
            break
        bits.append(int(values[idx]))
        k += 1
    if len(bits) < 2 * len(PADDING) or tuple(bits[: len(PADDING)]) != PADDING:
        raise PaddingNotFound("sampled signal does not begin with the framing marker")
    return BitSequence(tuple(bits), padded=True)


def decode_scan(img: ScanImage) -> ExtractionTrace:
    """Run the full pipeline, recording every stage; never raises.

    Stage failures are captured in ``trace.error`` and leave ``command``
    absent, e.g. a blank scan on a day without a transmission.
    """
    trace = ExtractionTrace()
    try:
        trace.contrast_image = apply_contrast(img)
        trace.background = dominant_color(trace.contrast_image)
        trace.line_average = average_lines(trace.contrast_image, trace.background)
        trace.threshold = float(np.max(trace.line_average)) / 2.0
        trace.stretched = stretch_signal(trace.line_average, trace.threshold)
        trace.rate_lines = estimate_rate(trace.stretched)
        trace.padded_bits = extract_signal(trace.stretched, trace.rate_lines)
        payload = remove_padding(trace.padded_bits)
        trace.command = decode_command(payload)
    except ScanChannelError as exc:
        trace.error = exc
    return trace


def export_trace(trace: ExtractionTrace, directory: str | Path) -> dict[str, Path]:
    """Write trace artifacts (contrast PNG, stage CSVs, summary JSON)."""
    from .imagefiles import save_png  # deferred; imagefiles imports nothing from here

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}

    if trace.contrast_image is not None:
        path = directory / "contrast.png"
        save_png(trace.contrast_image, path)
        written["contrast_image"] = path
    if trace.line_average is not None:
        path = directory / "line_average.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["line", "average"])
            for i, value in enumerate(trace.line_average):
                writer.writerow([i, format(float(value), ".6f")])
        written["line_average"] = path
    if trace.stretched is not None:
        path = directory / "stretched.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["line", "value"])
            for i, value in enumerate(trace.stretched):
                writer.writerow([i, int(value)])
        written["stretched"] = path

    summary = {
        "background": trace.background,
        "threshold": trace.threshold,
        "rate_lines": trace.rate_lines,
        "padded_bits": str(trace.padded_bits) if trace.padded_bits is not None else None,
        "command": trace.command,
        "error": type(trace.error).__name__ if trace.error is not None else None,
        "error_detail": str(trace.error) if trace.error is not None else None,
    }
    path = directory / "trace.json"
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written["summary"] = path
    return written
