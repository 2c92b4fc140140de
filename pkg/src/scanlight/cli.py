"""Command-line interface.

Verbs: ``encode``, ``simulate``, ``decode``, ``roundtrip``, ``sweep rate``,
``sweep distance``, ``detect``.  Channel and scan parameters come from an
optional JSON config file (flat keys mirroring the model fields) and are
overridden by command-line flags.
"""

from __future__ import annotations

import json
from pathlib import Path

import click

from .channel import ChannelModel, bulb_modulate, modulate
from .codec import BitSequence, apply_padding, encode_command
from .detector import classify_scan
from .errors import ScanChannelError
from .extractor import decode_scan, export_trace
from .harness import (
    distance_sweep,
    rate_sweep,
    roundtrip as run_roundtrip,
    write_distance_sweep_csv,
    write_rate_sweep_csv,
)
from .imagefiles import load_scan, save_scan
from .scanner import ScanConfig, lines_per_bit, render_scan

_CHANNEL_KEYS = frozenset(
    ("distance_cm", "source_kind", "beam_radius_m", "target_radius_m", "noise_sigma", "rng_seed")
)
_SCAN_KEYS = frozenset(
    ("dpi", "scan_duration_ms", "lines", "width_px", "background_shade", "document_texture")
)


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise click.UsageError("config file must hold a JSON object")
    known = _CHANNEL_KEYS | _SCAN_KEYS
    unknown = {k for k in data if k not in known and not k.startswith("_")}
    if unknown:
        raise click.UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def _build_models(config_path: str | None, **overrides) -> tuple[ChannelModel, ScanConfig]:
    cfg = _load_config_file(config_path)
    channel_kwargs = {k: v for k, v in cfg.items() if k in _CHANNEL_KEYS}
    scan_kwargs = {k: v for k, v in cfg.items() if k in _SCAN_KEYS}
    for key, value in overrides.items():
        if value is None:
            continue
        if key in _CHANNEL_KEYS:
            channel_kwargs[key] = value
        elif key in _SCAN_KEYS:
            scan_kwargs[key] = value
    if "background_shade" in scan_kwargs:
        shade = scan_kwargs["background_shade"]
        if isinstance(shade, str):
            shade = shade.split(",")
        scan_kwargs["background_shade"] = tuple(int(v) for v in shade)
    try:
        return ChannelModel(**channel_kwargs), ScanConfig(**scan_kwargs)
    except (ScanChannelError, TypeError) as exc:
        raise click.UsageError(str(exc))


def _channel_options(fn):
    for option in reversed(
        (
            click.option("--config", "config_path", type=click.Path(exists=True), default=None,
                         help="JSON config with channel/scan keys; flags override it."),
            click.option("--distance-cm", type=float, default=None),
            click.option("--noise", "noise_sigma", type=float, default=None,
                         help="Per-pixel Gaussian noise sigma (shade units)."),
            click.option("--seed", "rng_seed", type=int, default=None),
            click.option("--source", "source_kind",
                         type=click.Choice(("laser-visible", "laser-ir", "bulb")), default=None),
            click.option("--lines", type=int, default=None),
            click.option("--width-px", type=int, default=None),
            click.option("--duration-ms", "scan_duration_ms", type=float, default=None),
            click.option("--dpi", type=int, default=None),
            click.option("--background", "background_shade", type=str, default=None,
                         help="Background shade as R,G,B."),
            click.option("--texture", "document_texture",
                         type=click.Choice(("none", "uniform", "noise-texture")), default=None),
        )
    ):
        fn = option(fn)
    return fn


@click.group()
def main():
    """Simulate, decode, and detect light-modulated covert scans."""


@main.command()
@click.option("--cmd", "command", required=True, help="Printable-ASCII command text.")
@click.option("--pad", is_flag=True, help="Frame the bits with the 1001 marker.")
def encode(command: str, pad: bool):
    """Encode a command as a 0/1 bit string."""
    try:
        bits = encode_command(command)
        if pad:
            bits = apply_padding(bits)
    except ScanChannelError as exc:
        raise click.UsageError(str(exc))
    click.echo(str(bits))


@main.command()
@click.option("--cmd", "command", required=True)
@click.option("--window-ms", type=float, required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--brightness-high", type=float, default=100.0, show_default=True)
@click.option("--brightness-low", type=float, default=0.0, show_default=True)
@_channel_options
def simulate(command, window_ms, out_path, brightness_high, brightness_low, config_path, **params):
    """Render the scan an attack transmission would produce."""
    channel, scan_config = _build_models(config_path, **params)
    try:
        padded = apply_padding(encode_command(command))
        if channel.source_kind == "bulb":
            timeline = bulb_modulate(padded, window_ms, brightness_high, brightness_low)
        else:
            timeline = modulate(padded, window_ms)
        image = render_scan(timeline, channel, scan_config)
    except ScanChannelError as exc:
        raise click.ClickException(str(exc))
    save_scan(image, out_path, channel=channel)
    click.echo(
        f"wrote {out_path} ({scan_config.lines}x{scan_config.width_px}, "
        f"{lines_per_bit(scan_config, window_ms):g} lines/bit, {len(padded)} bits)"
    )


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--trace-dir", type=click.Path(), default=None,
              help="Directory for stage artifacts (contrast PNG, CSVs, summary).")
@click.pass_context
def decode(ctx, in_path, trace_dir):
    """Extract the command carried by a scan image; exit 2 if none."""
    image = load_scan(in_path)
    trace = decode_scan(image)
    if trace_dir is not None:
        export_trace(trace, trace_dir)
    if trace.command is None:
        click.echo(f"extraction failed: {type(trace.error).__name__}: {trace.error}", err=True)
        ctx.exit(2)
    click.echo(trace.command)


@main.command("roundtrip")
@click.option("--cmd", "command", required=True)
@click.option("--window-ms", type=float, required=True)
@click.option("--brightness-high", type=float, default=100.0, show_default=True)
@click.option("--brightness-low", type=float, default=0.0, show_default=True)
@click.option("--out-dir", type=click.Path(), default=None,
              help="Directory for the rendered scan and trace artifacts.")
@_channel_options
@click.pass_context
def roundtrip_cmd(ctx, command, window_ms, brightness_high, brightness_low, out_dir,
                  config_path, **params):
    """Encode, transmit, render, and decode one command; report the result."""
    channel, scan_config = _build_models(config_path, **params)
    try:
        report = run_roundtrip(
            command, window_ms, channel, scan_config,
            brightness_high=brightness_high, brightness_low=brightness_low,
        )
    except ScanChannelError as exc:
        raise click.ClickException(str(exc))
    artifacts: dict[str, str] = {}
    if out_dir is not None:
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        written = export_trace(report.trace, directory)
        artifacts = {name: str(path) for name, path in written.items()}
    payload = {
        "command": report.command,
        "window_ms": report.window_ms,
        "bit_count": report.bit_count,
        "transmission_ms": report.transmission_ms,
        "decoded": report.decoded,
        "success": report.success,
        "error": type(report.trace.error).__name__ if report.trace.error else None,
        "artifacts": artifacts,
    }
    click.echo(json.dumps(payload, indent=2, sort_keys=True))
    if not report.success:
        ctx.exit(2)


@main.group()
def sweep():
    """Parameter sweeps writing CSV tables."""


@sweep.command("rate")
@click.option("--signal", "signal_text", required=True, help="Ground-truth bits, e.g. 1010...")
@click.option("--rates", "rates_text", required=True, help="Comma-separated windows in ms.")
@click.option("--out", "out_path", type=click.Path(), required=True)
@_channel_options
def sweep_rate(signal_text, rates_text, out_path, config_path, **params):
    """Bit errors as a function of the transmission window."""
    channel, scan_config = _build_models(config_path, **params)
    try:
        signal = BitSequence.from_string(signal_text)
        rates = [float(r) for r in rates_text.split(",") if r.strip()]
        result = rate_sweep(signal, rates, channel, scan_config)
    except ScanChannelError as exc:
        raise click.ClickException(str(exc))
    write_rate_sweep_csv(result, out_path)
    click.echo(f"wrote {out_path} ({len(result.rows)} rows)")


@sweep.command("distance")
@click.option("--from", "start", type=float, required=True)
@click.option("--to", "stop", type=float, required=True)
@click.option("--step", type=float, required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def sweep_distance(start, stop, step, out_path):
    """Shade-delta curve over a distance range (inclusive endpoints)."""
    if step <= 0 or stop < start:
        raise click.UsageError("need step > 0 and --to >= --from")
    count = int(round((stop - start) / step)) + 1
    distances = [start + i * step for i in range(count) if start + i * step <= stop + 1e-9]
    try:
        rows = distance_sweep(distances)
    except ScanChannelError as exc:
        raise click.ClickException(str(exc))
    write_distance_sweep_csv(rows, out_path)
    click.echo(f"wrote {out_path} ({len(rows)} rows)")


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.pass_context
def detect(ctx, in_path):
    """Classify a scan as benign or suspicious; exit 3 when suspicious."""
    image = load_scan(in_path)
    verdict = classify_scan(image)
    payload = {
        "label": verdict.label,
        "score": round(verdict.score, 6),
        "evidence": {name: round(value, 6) for name, value in verdict.evidence},
    }
    click.echo(json.dumps(payload, indent=2, sort_keys=True))
    if verdict.suspicious:
        ctx.exit(3)


if __name__ == "__main__":
    main()
