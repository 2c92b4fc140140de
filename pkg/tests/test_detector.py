import numpy as np
import pytest

from scanlight import (
    ChannelModel,
    LightTimeline,
    ScanConfig,
    ScanImage,
    apply_padding,
    classify_scan,
    decode_scan,
    encode_command,
    modulate,
    render_scan,
)
from scanlight.detector import DECISION_THRESHOLD


def gradient_image(config, top=0, bottom=255):
    ramp = np.linspace(top, bottom, config.lines)
    pixels = np.rint(ramp)[:, None, None].astype(np.uint8)
    pixels = np.broadcast_to(pixels, (config.lines, config.width_px, 3)).copy()
    return ScanImage(pixels=pixels, config=config)


class TestSuspicious:
    @pytest.mark.parametrize("cmd,window", [("ls", 100.0), ("d x.pdf", 50.0), ("en q", 100.0)])
    def test_decodable_renders_are_flagged(self, cmd, window, quiet_channel, default_config):
        padded = apply_padding(encode_command(cmd))
        image = render_scan(modulate(padded, window), quiet_channel, default_config)
        # oracle: the extractor succeeds on this image
        assert decode_scan(image).command == cmd
        verdict = classify_scan(image)
        assert verdict.suspicious
        assert verdict.score >= DECISION_THRESHOLD

    def test_padding_recovery_alone_reaches_threshold(self, quiet_channel, default_config):
        padded = apply_padding(encode_command("x"))
        image = render_scan(modulate(padded, 100.0), quiet_channel, default_config)
        verdict = classify_scan(image)
        evidence = dict(verdict.evidence)
        assert evidence["padding_found"] == 1.0

    def test_noisy_modulated_scan_flagged(self, default_config):
        channel = ChannelModel(noise_sigma=17.0, rng_seed=9)
        padded = apply_padding(encode_command("d x.pdf"))
        image = render_scan(modulate(padded, 50.0), channel, default_config)
        assert classify_scan(image).suspicious


class TestBenign:
    def test_uniform_scores_low(self, default_config):
        pixels = np.full((default_config.lines, default_config.width_px, 3), 200, np.uint8)
        verdict = classify_scan(ScanImage(pixels=pixels, config=default_config))
        assert verdict.label == "benign"
        assert verdict.score < 0.2

    def test_gradient_not_flagged(self, default_config):
        verdict = classify_scan(gradient_image(default_config))
        assert verdict.label == "benign"

    def test_reverse_gradient_not_flagged(self, default_config):
        verdict = classify_scan(gradient_image(default_config, top=255, bottom=0))
        assert verdict.label == "benign"

    def test_seeded_noise_texture_not_flagged(self, default_config):
        # oracle: the extractor finds no framed packet in this image
        config = ScanConfig(document_texture="noise-texture")
        channel = ChannelModel(noise_sigma=5.0, rng_seed=21)
        image = render_scan(LightTimeline(()), channel, config)
        assert decode_scan(image).command is None
        verdict = classify_scan(image)
        assert verdict.label == "benign"


class TestVerdict:
    def test_deterministic(self, quiet_channel, default_config):
        padded = apply_padding(encode_command("abc"))
        image = render_scan(modulate(padded, 100.0), quiet_channel, default_config)
        a = classify_scan(image)
        b = classify_scan(image)
        assert a == b

    def test_evidence_lists_all_features(self, default_config):
        pixels = np.full((default_config.lines, default_config.width_px, 3), 10, np.uint8)
        verdict = classify_scan(ScanImage(pixels=pixels, config=default_config))
        names = {name for name, _ in verdict.evidence}
        assert names == {"band_fraction", "transitions", "autocorr_peak", "padding_found"}

    def test_label_matches_threshold(self, quiet_channel, default_config):
        padded = apply_padding(encode_command("abc"))
        image = render_scan(modulate(padded, 100.0), quiet_channel, default_config)
        verdict = classify_scan(image)
        assert (verdict.score >= DECISION_THRESHOLD) == verdict.suspicious
