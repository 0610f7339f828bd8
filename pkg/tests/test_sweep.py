import numpy as np
import pytest

import oracles
from polarfec import (
    NoCrossingError,
    RngStream,
    SweepConfig,
    SweepPoint,
    compare_gain,
    emit_csv,
    parse_csv,
    run_sweep,
)
from polarfec.sweep import _FrameRandom, frame_draws, point_seed_for


class TestFrameStreams:
    def test_frame_random_equals_fresh_philox(self):
        reused = _FrameRandom(314159)
        for frame in (0, 1, 17, 4096, 123456):
            gen = reused.frame(frame)
            bits = gen.integers(0, 2, size=11, dtype=np.uint8)
            noise = gen.normal(0.0, 0.7, size=16)
            fresh = RngStream(314159, frame).generator()
            assert np.array_equal(bits, fresh.integers(0, 2, size=11, dtype=np.uint8))
            assert np.array_equal(noise, fresh.normal(0.0, 0.7, size=16))

    def test_frame_draws_reproducible(self):
        a = frame_draws(7, 99, 11, 16, 0.5)
        b = frame_draws(7, 99, 11, 16, 0.5)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    def test_point_seed_stable(self):
        assert point_seed_for(42, 3) == point_seed_for(42, 3)
        assert point_seed_for(42, 3) != point_seed_for(42, 4)

    def test_single_frame_reproducible_in_isolation(self, spec16_11):
        # frame 1000 simulated alone equals frame 1000 inside a larger chunk
        from polarfec.sweep import _simulate_chunk

        config = small_config(code=spec16_11)
        seed = point_seed_for(config.master_seed, 0)
        bits_bulk, flags_bulk = _simulate_chunk((config, spec16_11, seed, 0, 2048, 0.6))
        bits_one, flags_one = _simulate_chunk((config, spec16_11, seed, 1000, 1, 0.6))
        assert bits_one[0] == bits_bulk[1000]
        assert flags_one[0] == flags_bulk[1000]


class TestConfig:
    def test_grid(self):
        config = SweepConfig(code=(16, 11), ebn0_start=1.0, ebn0_stop=4.0, ebn0_step=0.5)
        assert config.ebn0_points() == [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0]

    def test_single_point_grid(self):
        config = SweepConfig(code=(16, 11), ebn0_start=3.0, ebn0_stop=3.0)
        assert config.ebn0_points() == [3.0]

    def test_rs_with_polar_code_rejected(self, spec16_11):
        with pytest.raises(ValueError):
            SweepConfig(code=spec16_11, decoder="rs15_11").resolved_code()
        with pytest.raises(ValueError):
            SweepConfig(code=(16, 11), decoder="rs15_11").resolved_code()

    def test_rs_accepts_its_shape(self):
        assert SweepConfig(code=(15, 11), decoder="rs15_11").resolved_code() is None
        assert SweepConfig(code=None, decoder="rs15_11").resolved_code() is None

    def test_polar_requires_code(self):
        with pytest.raises(ValueError):
            SweepConfig(code=None, decoder="soft_minsum").resolved_code()

    def test_labels(self):
        config = SweepConfig(code=(16, 11), decoder="fixed", quant_bits=4, frac_bits=2)
        assert config.decoder_label() == "fixed_q4_f2"
        assert config.code_label() == "16,11"
        assert SweepConfig(decoder="rs15_11").code_label() == "15,11"

    def test_bad_values_rejected(self):
        with pytest.raises(ValueError):
            SweepConfig(code=(16, 11), decoder="viterbi")
        with pytest.raises(ValueError):
            SweepConfig(code=(16, 11), ebn0_step=0.0)
        with pytest.raises(ValueError):
            SweepConfig(code=(16, 11), ebn0_start=5.0, ebn0_stop=4.0)
        with pytest.raises(ValueError):
            SweepConfig(code=(16, 11), max_frames=0)


def small_config(**overrides):
    base = dict(
        code=(16, 11),
        decoder="soft_minsum",
        ebn0_start=2.0,
        ebn0_stop=3.0,
        ebn0_step=1.0,
        max_frames=6000,
        min_frame_errors=60,
        master_seed=11,
    )
    base.update(overrides)
    return SweepConfig(**base)


class TestRunSweep:
    def test_noiseless_limit(self, spec16_11):
        config = SweepConfig(
            code=spec16_11,
            decoder="soft_minsum",
            ebn0_start=60.0,
            ebn0_stop=60.0,
            max_frames=1000,
            min_frame_errors=10,
            master_seed=3,
        )
        (point,) = run_sweep(config)
        assert point.frames == 1000
        assert point.ber == 0.0 and point.fer == 0.0

    def test_deterministic_repeat(self):
        assert run_sweep(small_config()) == run_sweep(small_config())

    def test_worker_count_invariance(self):
        serial = run_sweep(small_config(), workers=1)
        par2 = run_sweep(small_config(), workers=2)
        par3 = run_sweep(small_config(), workers=3)
        assert serial == par2 == par3

    def test_early_stop_exact(self):
        points = run_sweep(small_config())
        for p in points:
            if p.frames < 6000:
                assert p.frame_errors == 60  # stopped at the exact crossing frame
            else:
                assert p.frame_errors <= 60

    def test_conservation(self):
        for p in run_sweep(small_config(ebn0_start=0.0, ebn0_stop=2.0)):
            assert 0 <= p.frame_errors <= p.frames
            assert 0 <= p.bit_errors <= p.frames * 11
            assert p.ber == p.bit_errors / (p.frames * 11)
            assert p.fer == p.frame_errors / p.frames

    def test_monotonic_trend_confident_points(self):
        config = small_config(
            ebn0_start=0.0, ebn0_stop=4.0, ebn0_step=2.0,
            max_frames=60_000, min_frame_errors=150,
        )
        points = run_sweep(config)
        confident = [p for p in points if p.frame_errors >= 100]
        bers = [p.ber for p in confident]
        assert bers == sorted(bers, reverse=True)

    def test_uncoded_bracket_at_4db(self, spec16_11):
        config = SweepConfig(
            code=spec16_11,
            decoder="soft_minsum",
            ebn0_start=4.0,
            ebn0_stop=4.0,
            max_frames=100_000,
            min_frame_errors=10**9,
            master_seed=5,
        )
        (point,) = run_sweep(config)
        assert point.frames == 100_000
        assert 0.0 < point.ber < oracles.uncoded_bpsk_ber(4.0)

    def test_rs_sweep_runs(self):
        config = SweepConfig(
            decoder="rs15_11",
            ebn0_start=5.0,
            ebn0_stop=5.0,
            max_frames=4000,
            min_frame_errors=50,
            master_seed=9,
        )
        (point,) = run_sweep(config)
        assert point.frame_errors >= 50 or point.frames == 4000
        assert 0 < point.ber < 0.5

    def test_fixed_sweep_runs(self, spec16_11):
        config = small_config(code=spec16_11, decoder="fixed", quant_bits=5, frac_bits=1)
        (p0, p1) = run_sweep(config)
        assert p0.ber > p1.ber > 0

    def test_low_confidence_flag(self):
        point = SweepPoint(1.0, 10, 5, 5, 0.05, 0.5)
        assert point.low_confidence
        point = SweepPoint(1.0, 1000, 500, 100, 0.05, 0.1)
        assert not point.low_confidence


class TestCsv:
    def test_empty_sweep(self):
        text = emit_csv([], {"code": "16,11", "decoder": "soft_minsum", "seed": 1})
        lines = text.splitlines()
        assert len(lines) == 2
        assert lines[0] == "# code=16,11 decoder=soft_minsum seed=1"
        assert lines[1] == "ebno_db,frames,bit_errors,frame_errors,ber,fer"

    def test_single_point_three_lines(self):
        point = SweepPoint(4.0, 100, 7, 3, 7 / 1100, 0.03)
        text = emit_csv([point], {"code": "16,11", "decoder": "hard", "seed": 2})
        assert len(text.splitlines()) == 3

    def test_round_trip(self, rng):
        points = []
        for _ in range(20):
            frames = int(rng.integers(1, 10**6))
            bit_errors = int(rng.integers(0, frames))
            frame_errors = int(rng.integers(0, frames))
            points.append(
                SweepPoint(
                    ebn0_db=float(rng.uniform(-2, 12)),
                    frames=frames,
                    bit_errors=bit_errors,
                    frame_errors=frame_errors,
                    ber=bit_errors / (frames * 11),
                    fer=frame_errors / frames,
                )
            )
        parsed, metadata = parse_csv(emit_csv(points, {"code": "16,11", "decoder": "soft_minsum", "seed": 77}))
        assert parsed == points
        assert metadata["decoder"] == "soft_minsum"
        assert metadata["seed"] == "77"

    def test_parse_rejects_malformed(self):
        with pytest.raises(ValueError):
            parse_csv("ebno_db,frames\n1,2\n")


def curve(pairs):
    return [SweepPoint(e, 10**6, int(b * 11 * 10**6), 100, b, 10 * b) for e, b in pairs]


class TestCompareGain:
    def test_identical_curves(self):
        c = curve([(0, 1e-2), (2, 1e-3), (4, 1e-4), (6, 1e-5)])
        assert compare_gain(c, c, 1e-4) == 0.0

    def test_shifted_curve_exact(self):
        a = curve([(1.0, 1e-2), (3.0, 1e-3), (5.0, 1e-4), (7.0, 1e-5)])
        b = curve([(0.0, 1e-2), (2.0, 1e-3), (4.0, 1e-4), (6.0, 1e-5)])
        assert compare_gain(a, b, 3e-4) == pytest.approx(1.0, abs=1e-12)

    def test_interpolates_between_points(self):
        a = curve([(0.0, 1e-3), (1.0, 1e-5)])
        b = curve([(0.0, 1e-3), (1.0, 1e-5)])
        assert compare_gain(a, b, 1e-4) == pytest.approx(0.0)
        # crossing sits at the log-midpoint
        assert compare_gain(a, curve([(0.0, 1e-4), (1.0, 1e-6)]), 1e-4) == pytest.approx(0.5)

    def test_no_crossing_raises(self):
        high = curve([(0, 1e-1), (2, 1e-2)])
        low = curve([(0, 1e-5), (2, 1e-6)])
        with pytest.raises(NoCrossingError):
            compare_gain(high, low, 1e-3)

    def test_zero_ber_points_skipped(self):
        a = [
            SweepPoint(0.0, 1000, 110, 50, 1e-2, 0.05),
            SweepPoint(2.0, 1000, 11, 5, 1e-3, 0.005),
            SweepPoint(4.0, 1000, 0, 0, 0.0, 0.0),
        ]
        with pytest.raises(NoCrossingError):
            compare_gain(a, a, 1e-4)
