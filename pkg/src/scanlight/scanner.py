"""Synthetic flatbed scan rendering.

The scanner acquires the pane line by line while the transmitter keys its
light source, so a light timeline shows up as horizontal bands: every line
exposed while the source is on is brighter by the channel's shade delta.
The renderer reproduces that band structure with optional per-pixel sensor
noise and an optional per-line document texture.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .channel import ChannelModel, LightTimeline, shade_difference
from .errors import InvalidParameter, TimelineOverrun

TEXTURE_MODES = ("none", "uniform", "noise-texture")

# Per-line shade offset amplitude of the "noise-texture" document model.
TEXTURE_AMPLITUDE = 12


@dataclass(frozen=True)
class ScanConfig:
    """Geometry and timing of one scan.

    The default profile scans 1440 lines in 8 seconds (0.18 lines/ms), so
    a 50 ms bit occupies 9 whole lines and a 100 ms bit 18, while windows
    of 25 ms and below land on fractional line counts; together with the
    default noise this reproduces the error-versus-rate behavior the
    channel shows on real hardware.  A full 300-dpi page profile is a
    config away (e.g. ``lines=3500, width_px=2550``).
    """

    dpi: int = 300
    scan_duration_ms: float = 8000.0
    lines: int = 1440
    width_px: int = 200
    background_shade: tuple[int, int, int] = (200, 200, 200)
    document_texture: str = "none"

    def __post_init__(self) -> None:
        if self.dpi <= 0 or self.lines <= 0 or self.width_px <= 0:
            raise InvalidParameter("dpi, lines, and width must be positive")
        if self.scan_duration_ms <= 0:
            raise InvalidParameter("scan duration must be positive")
        shade = tuple(int(v) for v in self.background_shade)
        if len(shade) != 3 or any(not 0 <= v <= 255 for v in shade):
            raise InvalidParameter("background shade must be an RGB triple in [0, 255]")
        object.__setattr__(self, "background_shade", shade)
        if self.document_texture not in TEXTURE_MODES:
            raise InvalidParameter(f"unknown texture mode {self.document_texture!r}")

    @property
    def lines_per_ms(self) -> float:
        return self.lines / self.scan_duration_ms

    def with_dpi(self, dpi: int) -> "ScanConfig":
        """Same physical sweep at another resolution: line count scales with dpi."""
        if dpi <= 0:
            raise InvalidParameter("dpi must be positive")
        return replace(self, dpi=dpi, lines=round(self.lines * dpi / self.dpi))


@dataclass(frozen=True)
class ScanImage:
    """Line-by-line RGB scan output plus the config that produced it."""

    pixels: np.ndarray
    config: ScanConfig

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels)
        if px.dtype != np.uint8:
            raise InvalidParameter("pixels must be uint8")
        if px.shape != (self.config.lines, self.config.width_px, 3):
            raise InvalidParameter(
                f"pixel grid {px.shape} does not match config "
                f"({self.config.lines}, {self.config.width_px}, 3)"
            )
        object.__setattr__(self, "pixels", px)

    @property
    def lines(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


def lines_per_bit(config: ScanConfig, window_ms: float) -> float:
    """How many scan lines one transmitted bit occupies."""
    if window_ms <= 0:
        raise InvalidParameter("window must be positive")
    return window_ms * config.lines_per_ms


def _line_levels(timeline: LightTimeline, config: ScanConfig, idle_level: float) -> np.ndarray:
    """Per-line emission level, interval edges quantized to the nearest line.

    Lines outside the timeline sit at ``idle_level``: zero for a keyed
    laser, the low keying level for a bulb that glows through the scan.
    """
    levels = np.full(config.lines, idle_level, dtype=np.float64)
    rate = config.lines_per_ms
    t = 0.0
    for iv in timeline.intervals:
        lo = int(np.floor(t * rate + 0.5))
        t += iv.duration_ms
        hi = int(np.floor(t * rate + 0.5))
        levels[min(lo, config.lines) : min(hi, config.lines)] = iv.level
    return levels


def render_scan(timeline: LightTimeline, channel: ChannelModel, config: ScanConfig) -> ScanImage:
    """Render a light timeline into a scan image under a channel model.

    Line ``l`` is exposed at scan time ``l / lines_per_ms``; lines exposed
    while the source emits at level ``v`` read ``background + v * delta``
    plus seeded Gaussian noise, clamped to the 8-bit range.
    """
    if timeline.total_duration_ms > config.scan_duration_ms * (1 + 1e-12):
        raise TimelineOverrun(
            f"timeline of {timeline.total_duration_ms:g} ms exceeds the "
            f"{config.scan_duration_ms:g} ms scan"
        )
    # A hijacked bulb keeps glowing at its low level outside the packet;
    # a keyed laser is dark outside its timeline.
    idle_level = 0.0
    if channel.source_kind == "bulb" and timeline.intervals:
        idle_level = min(iv.level for iv in timeline.intervals)
    levels = _line_levels(timeline, config, idle_level)
    delta = shade_difference(channel.distance_cm).as_array()
    background = np.asarray(config.background_shade, dtype=np.float64)
    base = background[None, :] + levels[:, None] * delta[None, :]

    rng = np.random.default_rng(channel.rng_seed)
    if config.document_texture == "noise-texture":
        offsets = rng.integers(-TEXTURE_AMPLITUDE, TEXTURE_AMPLITUDE + 1, size=config.lines)
        base = base + offsets[:, None].astype(np.float64)
    noise = None
    if channel.noise_sigma > 0:
        noise = rng.normal(0.0, channel.noise_sigma, size=(config.lines, config.width_px, 3))

    pixels = kernels.compose_scan(base, noise, config.width_px)
    return ScanImage(pixels=pixels, config=config)
