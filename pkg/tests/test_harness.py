import hashlib

import pytest

from scanlight import (
    ChannelModel,
    InvalidParameter,
    OutOfFittedRange,
    ScanConfig,
    distance_sweep,
    rate_sweep,
    roundtrip,
)
from scanlight.harness import (
    ALTERNATING_PROBE,
    write_distance_sweep_csv,
    write_rate_sweep_csv,
)

RATES = [100.0, 50.0, 25.0, 10.0, 5.0]


class TestRateSweep:
    def test_calibrated_default_shape(self, default_config):
        channel = ChannelModel()  # calibrated default noise
        result = rate_sweep(ALTERNATING_PROBE, RATES, channel, default_config)
        errors = {row.parameter: row.bit_errors for row in result.rows}
        assert errors[100.0] == 0
        assert errors[50.0] == 0
        assert errors[25.0] >= 1
        assert errors[10.0] >= 10
        assert errors[5.0] >= 10

    def test_errors_monotone_as_rate_drops(self, default_config):
        channel = ChannelModel()
        result = rate_sweep(ALTERNATING_PROBE, RATES, channel, default_config)
        counts = [row.bit_errors for row in result.rows]
        assert all(a <= b for a, b in zip(counts, counts[1:]))

    def test_rows_sorted_largest_window_first(self, quiet_channel, default_config):
        result = rate_sweep(ALTERNATING_PROBE, [10.0, 100.0, 50.0], quiet_channel, default_config)
        assert [row.parameter for row in result.rows] == [100.0, 50.0, 10.0]

    def test_noise_free_slow_rates_decode_exactly(self, quiet_channel, default_config):
        result = rate_sweep(ALTERNATING_PROBE, [100.0, 50.0], quiet_channel, default_config)
        for row in result.rows:
            assert row.bit_errors == 0
            assert row.decoded == str(ALTERNATING_PROBE)

    def test_errors_bounded_by_signal_length(self, default_config):
        channel = ChannelModel()
        result = rate_sweep(ALTERNATING_PROBE, RATES, channel, default_config)
        assert all(row.bit_errors <= len(ALTERNATING_PROBE) for row in result.rows)

    def test_empty_rates_rejected(self, quiet_channel, default_config):
        with pytest.raises(InvalidParameter):
            rate_sweep(ALTERNATING_PROBE, [], quiet_channel, default_config)

    def test_deterministic_given_seed(self, default_config):
        channel = ChannelModel(noise_sigma=17.0, rng_seed=123)
        a = rate_sweep(ALTERNATING_PROBE, RATES, channel, default_config)
        b = rate_sweep(ALTERNATING_PROBE, RATES, channel, default_config)
        assert a == b


class TestDistanceSweep:
    def test_cardinality(self):
        rows = distance_sweep([float(x) for x in range(0, 701, 10)])
        assert len(rows) == 71

    def test_row_at_zero(self):
        rows = distance_sweep([0.0])
        assert rows[0] == (0.0, 12.0, 13.0, 13.0)

    def test_argmax_in_stated_optimum_band(self):
        rows = distance_sweep([float(x) for x in range(0, 701)])
        sums = [r + g + b for _, r, g, b in rows]
        best = sums.index(max(sums))
        assert 110 <= rows[best][0] <= 210

    def test_four_interval_shape(self):
        rows = distance_sweep([float(x) for x in range(0, 701)])
        sums = [r + g + b for _, r, g, b in rows]
        peak = sums.index(max(sums))
        # flat start, rise to the peak, fall past it, flat tail
        assert max(sums[:41]) - min(sums[:41]) < 20.0
        assert sums[peak] > 5 * max(sums[:41])
        assert sums[peak] > sums[peak + 100]
        tail = sums[450:]
        assert max(tail) - min(tail) < 1e-9

    def test_out_of_range_rejected(self):
        with pytest.raises(OutOfFittedRange):
            distance_sweep([500.0, 701.0])


class TestRoundtrip:
    def test_delete_file_fixture(self, quiet_channel, default_config):
        report = roundtrip("d x.pdf", 50.0, quiet_channel, default_config)
        assert report.success
        assert report.decoded == "d x.pdf"
        assert report.bit_count == 64
        assert report.transmission_ms == 3200.0

    def test_bulb_fixture(self, default_config):
        channel = ChannelModel(noise_sigma=0.0, source_kind="bulb")
        report = roundtrip("en q", 100.0, channel, default_config)
        assert report.success
        assert report.bit_count == 40
        assert report.transmission_ms == 4000.0

    def test_sub_line_window_fails_decode(self, quiet_channel, default_config):
        # 2 ms window -> 0.36 lines/bit: bits vanish into single lines
        report = roundtrip("d x.pdf", 2.0, quiet_channel, default_config)
        assert not report.success
        assert report.trace.error is not None


class TestCsvOutput:
    def test_rate_csv_deterministic(self, tmp_path, default_config):
        channel = ChannelModel()
        digests = set()
        for name in ("a.csv", "b.csv"):
            result = rate_sweep(ALTERNATING_PROBE, RATES, channel, default_config)
            path = tmp_path / name
            write_rate_sweep_csv(result, path)
            digests.add(hashlib.sha256(path.read_bytes()).hexdigest())
        assert len(digests) == 1

    def test_rate_csv_layout(self, tmp_path, quiet_channel, default_config):
        result = rate_sweep(ALTERNATING_PROBE, [100.0, 50.0], quiet_channel, default_config)
        path = tmp_path / "rates.csv"
        write_rate_sweep_csv(result, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "window_ms,bit_errors,decoded"
        assert lines[1].startswith("100,0,")
        assert len(lines) == 3

    def test_distance_csv_layout(self, tmp_path):
        rows = distance_sweep([0.0, 10.0])
        path = tmp_path / "dist.csv"
        write_distance_sweep_csv(rows, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "distance_cm,delta_red,delta_green,delta_blue"
        assert lines[1] == "0,12.000000,13.000000,13.000000"
