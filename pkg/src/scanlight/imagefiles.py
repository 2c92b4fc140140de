"""Scan image files: 8-bit RGB PNG, binary PPM/PGM, and JSON sidecars.

Every saved scan gets a ``<basename>.json`` sidecar carrying the scan
geometry and, when known, the channel parameters and noise seed, so a
render can be reproduced from its artifacts alone.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

import numpy as np
from PIL import Image

from . import kernels
from .channel import ChannelModel
from .errors import InvalidParameter
from .scanner import ScanConfig, ScanImage

_IMAGE_SUFFIXES = (".png", ".ppm", ".pgm")


def save_png(img: ScanImage, path: str | Path) -> None:
    Image.fromarray(img.pixels, mode="RGB").save(Path(path), format="PNG")


def load_png(path: str | Path) -> np.ndarray:
    with Image.open(Path(path)) as im:
        return np.asarray(im.convert("RGB"), dtype=np.uint8)


def save_ppm(img: ScanImage, path: str | Path) -> None:
    """Binary (P6) portable pixmap."""
    header = f"P6\n{img.width} {img.lines}\n255\n".encode("ascii")
    Path(path).write_bytes(header + img.pixels.tobytes())


def save_pgm(img: ScanImage, path: str | Path) -> None:
    """Binary (P5) portable graymap of the image luma."""
    luma = kernels.luma_image(img.pixels)
    header = f"P5\n{img.width} {img.lines}\n255\n".encode("ascii")
    Path(path).write_bytes(header + luma.tobytes())


def _read_pnm_tokens(data: bytes, count: int) -> tuple[list[int], int]:
    """Read whitespace/comment-separated integer header tokens."""
    tokens: list[int] = []
    i = 0
    while len(tokens) < count:
        if i >= len(data):
            raise InvalidParameter("truncated PNM header")
        c = data[i : i + 1]
        if c == b"#":
            while i < len(data) and data[i : i + 1] != b"\n":
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace():
                j += 1
            tokens.append(int(data[i:j]))
            i = j
    return tokens, i + 1  # one whitespace byte separates header from raster


def load_pnm(path: str | Path) -> np.ndarray:
    """Load a binary PPM (P6) or PGM (P5); grayscale is expanded to RGB."""
    data = Path(path).read_bytes()
    magic = data[:2]
    if magic not in (b"P6", b"P5"):
        raise InvalidParameter(f"unsupported PNM magic {magic!r}")
    (width, height, maxval), offset = _read_pnm_tokens(data[2:], 3)
    offset += 2
    if maxval != 255:
        raise InvalidParameter("only 8-bit PNM files are supported")
    channels = 3 if magic == b"P6" else 1
    raster = np.frombuffer(data, dtype=np.uint8, count=height * width * channels, offset=offset)
    if magic == b"P6":
        return raster.reshape(height, width, 3).copy()
    gray = raster.reshape(height, width)
    return np.repeat(gray[:, :, None], 3, axis=2)


def sidecar_path(path: str | Path) -> Path:
    return Path(path).with_suffix(".json")


def save_scan(img: ScanImage, path: str | Path, channel: ChannelModel | None = None) -> Path:
    """Write a scan image (format chosen by suffix) plus its JSON sidecar."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".png":
        save_png(img, path)
    elif suffix == ".ppm":
        save_ppm(img, path)
    elif suffix == ".pgm":
        save_pgm(img, path)
    else:
        raise InvalidParameter(f"unsupported image suffix {suffix!r}; use {_IMAGE_SUFFIXES}")
    meta: dict = {"scan": asdict(img.config)}
    if channel is not None:
        meta["channel"] = asdict(channel)
    side = sidecar_path(path)
    side.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return side


def load_scan(path: str | Path) -> ScanImage:
    """Load a scan image; the sidecar restores the config when present.

    Without a sidecar the geometry is taken from the raster and the
    remaining config fields fall back to defaults, which is all the
    extraction pipeline needs.
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".png":
        pixels = load_png(path)
    elif suffix in (".ppm", ".pgm"):
        pixels = load_pnm(path)
    else:
        raise InvalidParameter(f"unsupported image suffix {suffix!r}; use {_IMAGE_SUFFIXES}")

    side = sidecar_path(path)
    if side.exists():
        meta = json.loads(side.read_text(encoding="utf-8"))
        scan_meta = dict(meta.get("scan", {}))
        scan_meta["background_shade"] = tuple(scan_meta.get("background_shade", (200, 200, 200)))
        config = ScanConfig(**scan_meta)
    else:
        config = ScanConfig(lines=pixels.shape[0], width_px=pixels.shape[1])
    if (config.lines, config.width_px) != pixels.shape[:2]:
        raise InvalidParameter("sidecar geometry does not match the raster")
    return ScanImage(pixels=pixels, config=config)


def load_channel_sidecar(path: str | Path) -> ChannelModel | None:
    """Channel parameters recorded next to an image, if any."""
    side = sidecar_path(path)
    if not side.exists():
        return None
    meta = json.loads(side.read_text(encoding="utf-8"))
    if "channel" not in meta:
        return None
    return ChannelModel(**meta["channel"])
