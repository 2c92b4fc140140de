"""Experiment harness: rate and distance sweeps, end-to-end round trips.

The sweeps reproduce the channel's characteristic curves at desk scale:
bit errors versus transmission window, and shade delta versus distance.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .channel import ChannelModel, bulb_modulate, modulate, shade_difference
from .codec import PADDING, BitSequence, apply_padding, encode_command
from .errors import InvalidParameter
from .extractor import ExtractionTrace, decode_scan
from .scanner import ScanConfig, render_scan

#: 29-bit alternating probe used to characterize error rate versus window.
ALTERNATING_PROBE = BitSequence(tuple(int(i % 2 == 0) for i in range(29)))


@dataclass(frozen=True)
class SweepRow:
    parameter: float
    bit_errors: int
    decoded: str | None


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    ground_truth: BitSequence


@dataclass(frozen=True)
class RoundtripReport:
    command: str
    window_ms: float
    padded_bits: str
    bit_count: int
    transmission_ms: float
    decoded: str | None
    success: bool
    trace: ExtractionTrace


def _count_errors(signal: BitSequence, trace: ExtractionTrace) -> tuple[int, str | None]:
    """Bit errors of one extraction against the fixed-length ground truth.

    A failed or wrong-length extraction scores as an all-zero guess of the
    signal's length (per-position comparison on the fixed-length signal);
    successful extractions score position-wise after stripping the marker.
    """
    all_zero_score = sum(signal.bits)
    if trace.padded_bits is None:
        return all_zero_score, None
    payload = trace.padded_bits.bits[len(PADDING) : -len(PADDING)]
    decoded = "".join(str(b) for b in payload)
    if len(payload) != len(signal):
        return all_zero_score, decoded
    errors = sum(a != b for a, b in zip(payload, signal.bits))
    return errors, decoded


def rate_sweep(
    signal: BitSequence,
    rates_ms: list[float],
    channel: ChannelModel,
    config: ScanConfig,
) -> SweepResult:
    """Transmit one signal at several windows and count extraction errors.

    Rows are ordered by window, largest (slowest, most robust) first.
    """
    if not rates_ms:
        raise InvalidParameter("need at least one rate")
    rows = []
    for rate in sorted(set(float(r) for r in rates_ms), reverse=True):
        padded = apply_padding(signal)
        timeline = modulate(padded, rate)
        image = render_scan(timeline, channel, config)
        trace = decode_scan(image)
        errors, decoded = _count_errors(signal, trace)
        rows.append(SweepRow(parameter=rate, bit_errors=errors, decoded=decoded))
    return SweepResult(rows=tuple(rows), ground_truth=signal)


def distance_sweep(distances_cm: list[float]) -> tuple[tuple[float, float, float, float], ...]:
    """Tabulate the shade-delta curve: (distance, dR, dG, dB) per distance."""
    rows = []
    for distance in distances_cm:
        delta = shade_difference(distance)
        rows.append((float(distance), delta.d_red, delta.d_green, delta.d_blue))
    return tuple(rows)


def roundtrip(
    cmd: str,
    window_ms: float,
    channel: ChannelModel,
    config: ScanConfig,
    brightness_high: float = 100.0,
    brightness_low: float = 0.0,
) -> RoundtripReport:
    """Full encode -> modulate -> render -> decode pass for one command."""
    padded = apply_padding(encode_command(cmd))
    if channel.source_kind == "bulb":
        timeline = bulb_modulate(padded, window_ms, brightness_high, brightness_low)
    else:
        timeline = modulate(padded, window_ms)
    image = render_scan(timeline, channel, config)
    trace = decode_scan(image)
    return RoundtripReport(
        command=cmd,
        window_ms=window_ms,
        padded_bits=str(padded),
        bit_count=len(padded),
        transmission_ms=len(padded) * window_ms,
        decoded=trace.command,
        success=trace.command == cmd,
        trace=trace,
    )


def write_rate_sweep_csv(result: SweepResult, path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["window_ms", "bit_errors", "decoded"])
        for row in result.rows:
            writer.writerow([format(row.parameter, "g"), row.bit_errors, row.decoded or ""])


def write_distance_sweep_csv(
    rows: tuple[tuple[float, float, float, float], ...], path: str | Path
) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["distance_cm", "delta_red", "delta_green", "delta_blue"])
        for distance, d_red, d_green, d_blue in rows:
            writer.writerow(
                [
                    format(distance, "g"),
                    format(d_red, ".6f"),
                    format(d_green, ".6f"),
                    format(d_blue, ".6f"),
                ]
            )
