"""Numpy implementations of the hot kernels.

Kept operation-for-operation equivalent to the compiled core in ``_core.pyx``
(same evaluation order, rounding via rint, clamping before the uint8 cast)
so both backends produce bit-identical output.
"""

from __future__ import annotations

import numpy as np


def compose_clean(base: np.ndarray, out: np.ndarray) -> None:
    line_px = np.clip(np.rint(base), 0.0, 255.0).astype(np.uint8)
    out[:] = line_px[:, None, :]


def compose_noisy(base: np.ndarray, noise: np.ndarray, out: np.ndarray) -> None:
    vals = base[:, None, :] + noise
    np.rint(vals, out=vals)
    np.clip(vals, 0.0, 255.0, out=vals)
    out[:] = vals.astype(np.uint8)


def luma_u8(pixels: np.ndarray, out: np.ndarray) -> None:
    px = pixels.astype(np.float64)
    luma = (0.299 * px[..., 0] + 0.587 * px[..., 1]) + 0.114 * px[..., 2]
    np.rint(luma, out=luma)
    np.clip(luma, 0.0, 255.0, out=luma)
    out[:] = luma.astype(np.uint8)


def line_sums(luma: np.ndarray, out: np.ndarray) -> None:
    out[:] = luma.sum(axis=1, dtype=np.int64)


def lut_u8(pixels: np.ndarray, lut: np.ndarray, out: np.ndarray) -> None:
    out[:] = lut[pixels]
