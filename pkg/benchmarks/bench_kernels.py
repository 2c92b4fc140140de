#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the numpy fallback.

Times each hot kernel on a full-page scan (300 dpi: ~3500 x 2550 px) and a
complete transmit-render-decode round trip per backend.  Run after an
editable install:

    python benchmarks/bench_kernels.py [--lines N] [--width N] [--repeats N]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from scanlight.kernels import _pure

try:
    from scanlight.kernels import _core
except ImportError:
    _core = None

ROUNDTRIP_SNIPPET = """
import time
from scanlight import ChannelModel, ScanConfig, roundtrip
from scanlight.kernels import backend_name

config = ScanConfig(lines=@LINES@, width_px=@WIDTH@)
channel = ChannelModel(noise_sigma=17.0)
roundtrip("warm up", 25.0, channel, config)
started = time.perf_counter()
for _ in range(@REPEATS@):
    report = roundtrip("d x.pdf", 50.0, channel, config)
    assert report.success, report.trace.error
elapsed = (time.perf_counter() - started) / @REPEATS@
print(f"  end-to-end roundtrip [{backend_name()}]: {elapsed * 1e3:8.2f} ms")
"""


def timeit(fn, repeats):
    fn()  # warm up
    started = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - started) / repeats


def bench_kernels(lines, width, repeats):
    rng = np.random.default_rng(0)
    base = rng.uniform(0.0, 300.0, size=(lines, 3))
    noise = rng.normal(0.0, 17.0, size=(lines, width, 3))
    pixels = rng.integers(0, 256, size=(lines, width, 3)).astype(np.uint8)
    luma = rng.integers(0, 256, size=(lines, width)).astype(np.uint8)
    lut = rng.integers(0, 256, size=256).astype(np.uint8)

    out_px = np.empty((lines, width, 3), np.uint8)
    out_luma = np.empty((lines, width), np.uint8)
    out_sums = np.empty(lines, np.int64)

    workloads = [
        ("compose_noisy", lambda impl: impl.compose_noisy(base, noise, out_px)),
        ("compose_clean", lambda impl: impl.compose_clean(base, out_px)),
        ("luma_u8", lambda impl: impl.luma_u8(pixels, out_luma)),
        ("line_sums", lambda impl: impl.line_sums(luma, out_sums)),
        ("lut_u8", lambda impl: impl.lut_u8(pixels, lut, out_px)),
    ]

    print(f"kernel timings on {lines} x {width} px, mean of {repeats} runs:")
    header = f"  {'kernel':<14}{'numpy (ms)':>12}"
    if _core is not None:
        header += f"{'cython (ms)':>13}{'speedup':>9}"
    print(header)
    for name, call in workloads:
        t_pure = timeit(lambda: call(_pure), repeats) * 1e3
        row = f"  {name:<14}{t_pure:12.2f}"
        if _core is not None:
            t_core = timeit(lambda: call(_core), repeats) * 1e3
            row += f"{t_core:13.2f}{t_pure / t_core:9.2f}x"
        print(row)


def bench_roundtrip(lines, width, repeats):
    print(f"\nround trip at the default profile ({lines} x {width}):", flush=True)
    snippet = (
        ROUNDTRIP_SNIPPET.replace("@LINES@", str(lines))
        .replace("@WIDTH@", str(width))
        .replace("@REPEATS@", str(repeats))
    )
    for pure in ("0", "1") if _core is not None else ("1",):
        env = dict(os.environ, SCANLIGHT_PURE_PYTHON=pure)
        subprocess.run([sys.executable, "-c", snippet], env=env, check=True)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lines", type=int, default=3500)
    parser.add_argument("--width", type=int, default=2550)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if _core is None:
        print("compiled core not available; timing the numpy fallback only\n")
    bench_kernels(args.lines, args.width, args.repeats)
    bench_roundtrip(1440, 200, max(args.repeats, 10))


if __name__ == "__main__":
    main()
