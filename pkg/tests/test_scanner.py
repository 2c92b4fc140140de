import numpy as np
import pytest

from scanlight import (
    BitSequence,
    ChannelModel,
    InvalidParameter,
    LightTimeline,
    ScanConfig,
    ScanImage,
    TimelineOverrun,
    apply_padding,
    encode_command,
    lines_per_bit,
    modulate,
    render_scan,
    shade_difference,
)

MARKER = BitSequence.from_string("10011001", padded=True)


def oracle_line_states(timeline, config):
    """Independent interval walk: the source state at each line's scan time."""
    boundaries = []
    t = 0.0
    for iv in timeline.intervals:
        boundaries.append((t, t + iv.duration_ms, iv.level))
        t += iv.duration_ms
    states = []
    for line in range(config.lines):
        t_line = line / config.lines_per_ms
        level = 0.0
        for start, end, lvl in boundaries:
            if start <= t_line < end:
                level = lvl
                break
        states.append(level > 0.0)
    return states


class TestRenderBands:
    def test_marker_bands_at_tenth_line_rate(self, quiet_channel):
        # 0.1 lines/ms, 100 ms windows: bands must sit exactly on [0,10)+[30,50)+[70,80)
        config = ScanConfig(lines=80, scan_duration_ms=800.0, width_px=8)
        timeline = modulate(MARKER, 100.0)
        image = render_scan(timeline, quiet_channel, config)
        bright = (image.pixels[:, 0, 1] > config.background_shade[1]).tolist()
        expected = [l < 10 or (30 <= l < 50) or (70 <= l < 80) for l in range(80)]
        assert bright == expected

    def test_bands_match_interval_oracle(self, quiet_channel):
        config = ScanConfig(lines=80, scan_duration_ms=800.0, width_px=8)
        timeline = modulate(MARKER, 100.0)
        image = render_scan(timeline, quiet_channel, config)
        bright = (image.pixels[:, 0, 1] > config.background_shade[1]).tolist()
        assert bright == oracle_line_states(timeline, config)

    def test_band_count_equals_one_runs(self, quiet_channel, default_config):
        padded = apply_padding(encode_command("scan me"))
        image = render_scan(modulate(padded, 50.0), quiet_channel, default_config)
        bright = image.pixels[:, 0, 1] > default_config.background_shade[1]
        band_count = int(np.count_nonzero(np.diff(bright.astype(int)) == 1)) + int(bright[0])
        one_runs = str(padded).count("10") + str(padded).endswith("1")
        assert band_count == one_runs

    def test_all_off_is_uniform_background(self, quiet_channel, default_config):
        timeline = LightTimeline(())
        image = render_scan(timeline, quiet_channel, default_config)
        assert np.array_equal(
            image.pixels,
            np.broadcast_to(
                np.array(default_config.background_shade, np.uint8),
                image.pixels.shape,
            ),
        )

    def test_on_lines_carry_shade_delta(self, default_config):
        channel = ChannelModel(distance_cm=100.0, noise_sigma=0.0)
        image = render_scan(modulate(MARKER, 100.0), channel, default_config)
        delta = shade_difference(100.0)
        expected = np.rint(
            np.array(default_config.background_shade, float)
            + np.array([delta.d_red, delta.d_green, delta.d_blue])
        ).astype(np.uint8)
        assert image.pixels[0, 0].tolist() == expected.tolist()

    def test_bulb_levels_scale_delta(self, default_config):
        from scanlight import bulb_modulate

        channel = ChannelModel(distance_cm=100.0, noise_sigma=0.0, source_kind="bulb")
        padded = MARKER
        image = render_scan(bulb_modulate(padded, 100.0, 80.0, 20.0), channel, default_config)
        delta = shade_difference(100.0).as_array()
        bg = np.array(default_config.background_shade, float)
        on_expected = np.rint(bg + 0.8 * delta).astype(np.uint8)
        off_expected = np.rint(bg + 0.2 * delta).astype(np.uint8)
        lpb = int(lines_per_bit(default_config, 100.0))
        assert image.pixels[0, 0].tolist() == on_expected.tolist()
        assert image.pixels[lpb, 0].tolist() == off_expected.tolist()


class TestRenderNoise:
    def test_seeded_render_reproducible(self, default_config):
        channel = ChannelModel(noise_sigma=17.0, rng_seed=42)
        timeline = modulate(MARKER, 100.0)
        a = render_scan(timeline, channel, default_config)
        b = render_scan(timeline, channel, default_config)
        assert np.array_equal(a.pixels, b.pixels)

    def test_different_seeds_differ(self, default_config):
        timeline = modulate(MARKER, 100.0)
        a = render_scan(timeline, ChannelModel(noise_sigma=17.0, rng_seed=1), default_config)
        b = render_scan(timeline, ChannelModel(noise_sigma=17.0, rng_seed=2), default_config)
        assert not np.array_equal(a.pixels, b.pixels)

    def test_texture_is_per_line_and_seeded(self, quiet_channel):
        config = ScanConfig(document_texture="noise-texture", lines=64, width_px=16)
        image = render_scan(LightTimeline(()), quiet_channel, config)
        # every pixel within a line identical, lines differ
        assert np.all(image.pixels == image.pixels[:, :1, :])
        assert len(np.unique(image.pixels[:, 0, 0])) > 1
        again = render_scan(LightTimeline(()), quiet_channel, config)
        assert np.array_equal(image.pixels, again.pixels)

    def test_uniform_texture_matches_none(self, quiet_channel):
        timeline = modulate(MARKER, 100.0)
        a = render_scan(timeline, quiet_channel, ScanConfig(document_texture="none"))
        b = render_scan(timeline, quiet_channel, ScanConfig(document_texture="uniform"))
        assert np.array_equal(a.pixels, b.pixels)


class TestLinesPerBit:
    def test_values(self):
        config = ScanConfig(lines=800, scan_duration_ms=8000.0)
        assert lines_per_bit(config, 100.0) == pytest.approx(10.0)
        assert lines_per_bit(config, 50.0) == pytest.approx(5.0)
        assert lines_per_bit(config, 5.0) == pytest.approx(0.5)

    def test_positive_window_required(self, default_config):
        with pytest.raises(InvalidParameter):
            lines_per_bit(default_config, 0.0)

    def test_dpi_scales_lines_proportionally(self):
        config = ScanConfig(dpi=300, lines=1440)
        doubled = config.with_dpi(600)
        assert doubled.lines == 2880
        assert lines_per_bit(doubled, 50.0) == pytest.approx(2 * lines_per_bit(config, 50.0))


class TestValidation:
    def test_timeline_overrun(self, quiet_channel, default_config):
        padded = apply_padding(encode_command("x" * 20))  # 168 bits
        with pytest.raises(TimelineOverrun):
            render_scan(modulate(padded, 100.0), quiet_channel, default_config)

    def test_exact_fit_allowed(self, quiet_channel):
        config = ScanConfig(lines=80, scan_duration_ms=800.0, width_px=4)
        image = render_scan(modulate(MARKER, 100.0), quiet_channel, config)
        assert image.lines == 80

    def test_scan_image_shape_checked(self, default_config):
        with pytest.raises(InvalidParameter):
            ScanImage(pixels=np.zeros((3, 3, 3), np.uint8), config=default_config)

    def test_config_field_validation(self):
        with pytest.raises(InvalidParameter):
            ScanConfig(lines=0)
        with pytest.raises(InvalidParameter):
            ScanConfig(background_shade=(300, 0, 0))
        with pytest.raises(InvalidParameter):
            ScanConfig(document_texture="paper")
