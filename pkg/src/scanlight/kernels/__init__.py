"""Per-pixel hot kernels: compiled core with a numpy fallback.

The compiled extension (``scanlight.kernels._core``, built from Cython) and
the numpy implementation in ``_pure`` compute bit-identical results; which
one is active is decided once at import time.  Set the environment variable
``SCANLIGHT_PURE_PYTHON=1`` to force the fallback, e.g. for benchmarking.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pure

if os.environ.get("SCANLIGHT_PURE_PYTHON") == "1":
    _impl = _pure
    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pure
        BACKEND = "python"


def backend_name() -> str:
    """Name of the active kernel backend: ``cython`` or ``python``."""
    return BACKEND


def compose_scan(base: np.ndarray, noise: np.ndarray | None, width: int) -> np.ndarray:
    """Expand per-line RGB targets into a uint8 pixel grid.

    ``base`` is (lines, 3) float64; ``noise``, when given, is
    (lines, width, 3) float64 additive noise.  Each pixel is rounded
    half-to-even and clamped to [0, 255].
    """
    base = np.ascontiguousarray(base, dtype=np.float64)
    out = np.empty((base.shape[0], width, 3), dtype=np.uint8)
    if noise is None:
        _impl.compose_clean(base, out)
    else:
        noise = np.ascontiguousarray(noise, dtype=np.float64)
        if noise.shape != out.shape:
            raise ValueError(f"noise shape {noise.shape} does not match {out.shape}")
        _impl.compose_noisy(base, noise, out)
    return out


def luma_image(pixels: np.ndarray) -> np.ndarray:
    """Per-pixel integer luma: round(0.299 R + 0.587 G + 0.114 B)."""
    pixels = np.ascontiguousarray(pixels, dtype=np.uint8)
    out = np.empty(pixels.shape[:2], dtype=np.uint8)
    _impl.luma_u8(pixels, out)
    return out


def line_luma_sums(luma: np.ndarray) -> np.ndarray:
    """Exact per-line sums of a uint8 luma grid."""
    luma = np.ascontiguousarray(luma, dtype=np.uint8)
    out = np.empty(luma.shape[0], dtype=np.int64)
    _impl.line_sums(luma, out)
    return out


def apply_lut(pixels: np.ndarray, lut: np.ndarray) -> np.ndarray:
    """Apply a 256-entry uint8 lookup table to every channel value."""
    pixels = np.ascontiguousarray(pixels, dtype=np.uint8)
    lut = np.ascontiguousarray(lut, dtype=np.uint8)
    if lut.shape != (256,):
        raise ValueError("lookup table must have exactly 256 entries")
    out = np.empty_like(pixels)
    _impl.lut_u8(pixels, lut, out)
    return out
