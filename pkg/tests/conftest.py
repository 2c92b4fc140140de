import pytest

from scanlight import ChannelModel, ScanConfig, apply_padding, encode_command, modulate, render_scan


@pytest.fixture
def quiet_channel():
    """Noise-free channel at the default distance."""
    return ChannelModel(noise_sigma=0.0, rng_seed=3)


@pytest.fixture
def default_config():
    return ScanConfig()


@pytest.fixture
def render_text(quiet_channel, default_config):
    """Factory: render a command's transmission, returning (image, padded bits)."""

    def _render(cmd, window_ms, channel=None, config=None):
        padded = apply_padding(encode_command(cmd))
        timeline = modulate(padded, window_ms)
        image = render_scan(timeline, channel or quiet_channel, config or default_config)
        return image, padded

    return _render


@pytest.fixture
def lpb_window():
    """Transmission window that makes one bit span the given line count."""

    def _window(config, lines_per_bit):
        return lines_per_bit * config.scan_duration_ms / config.lines

    return _window
