"""Countermeasure: flag scans that look like a modulated light signal.

Meant to sit on a scan proxy: every scan passes through
:func:`classify_scan` before being handed to the requester, and suspicious
ones are held for review.  Scoring is rule-based over features of the
per-line signal; a hit on the framing marker alone is enough to flag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import extractor
from .codec import remove_padding
from .errors import ScanChannelError
from .scanner import ScanImage

DECISION_THRESHOLD = 0.5

# Feature weights.  Padding recovery alone reaches the threshold: anything
# the extractor can decode is flagged no matter what the soft features say.
WEIGHT_PADDING = 0.5
WEIGHT_TRANSITIONS = 0.2
WEIGHT_AUTOCORR = 0.2
WEIGHT_BAND_FRACTION = 0.1

# A stretched signal with this many 0/1 transitions counts as fully keyed.
_TRANSITION_SATURATION = 8

# Shortest autocorrelation lag considered; lag-1 correlation is high for
# any blob-shaped signal and carries no periodicity information.
_MIN_LAG = 2


@dataclass(frozen=True)
class Verdict:
    """Classification outcome with the per-feature evidence behind it."""

    label: str
    score: float
    evidence: tuple[tuple[str, float], ...]

    @property
    def suspicious(self) -> bool:
        return self.label == "suspicious"


def _autocorr_peak(stretched: np.ndarray) -> float:
    """Peak normalized autocorrelation over lags [2, n/2] of the band signal."""
    x = stretched.astype(np.float64)
    x -= x.mean()
    denom = float(np.dot(x, x))
    if denom == 0.0:
        return 0.0
    best = 0.0
    for lag in range(_MIN_LAG, x.size // 2 + 1):
        value = float(np.dot(x[:-lag], x[lag:])) / denom
        if value > best:
            best = value
    return min(best, 1.0)


def _verdict(features: dict[str, float]) -> Verdict:
    score = (
        WEIGHT_PADDING * features["padding_found"]
        + WEIGHT_TRANSITIONS * features["transitions"]
        + WEIGHT_AUTOCORR * features["autocorr_peak"]
        + WEIGHT_BAND_FRACTION * features["band_fraction"]
    )
    label = "suspicious" if score >= DECISION_THRESHOLD else "benign"
    return Verdict(label=label, score=score, evidence=tuple(sorted(features.items())))


def classify_scan(img: ScanImage) -> Verdict:
    """Score a scan for modulated-light structure; deterministic per image."""
    features = {
        "band_fraction": 0.0,
        "transitions": 0.0,
        "autocorr_peak": 0.0,
        "padding_found": 0.0,
    }
    try:
        contrast = extractor.apply_contrast(img)
        background = extractor.dominant_color(contrast)
        line_average = extractor.average_lines(contrast, background)
        threshold = float(np.max(line_average)) / 2.0
        stretched = extractor.stretch_signal(line_average, threshold)
    except ScanChannelError:
        # Nothing brighter than the background: degenerate image, score 0.
        return _verdict(features)

    fraction = float(stretched.mean())
    transitions = int(np.count_nonzero(np.diff(stretched.astype(np.int16))))
    # Keyed packets must fit in half the scan, so a bright fraction in
    # (0, 0.5] is consistent with a transmission; more than that is not.
    features["band_fraction"] = 1.0 if 0.0 < fraction <= 0.5 else 0.0
    features["transitions"] = min(transitions / _TRANSITION_SATURATION, 1.0)
    features["autocorr_peak"] = _autocorr_peak(stretched)
    try:
        rate = extractor.estimate_rate(stretched)
        padded = extractor.extract_signal(stretched, rate)
        remove_padding(padded)
        features["padding_found"] = 1.0
    except ScanChannelError:
        pass
    return _verdict(features)
