import numpy as np
import pytest

from polarfec import (
    ARCH_KINDS,
    bhattacharyya_construct,
    build_schedule,
    f_minsum,
    format_trace,
    g_func,
    latency_clocks,
    pe_count,
    sc_decode,
)
from polarfec.construction import CodeSpec


class TestLatency:
    def test_table_values_n16(self):
        assert latency_clocks(16, "conventional") == 30
        assert latency_clocks(16, "two_bit_sc") == 22
        assert latency_clocks(16, "proposed") == 8

    def test_speedup_ratios(self):
        assert latency_clocks(16, "conventional") / latency_clocks(16, "proposed") == 3.75
        assert latency_clocks(16, "two_bit_sc") / latency_clocks(16, "proposed") == 2.75

    @pytest.mark.parametrize("n_bits", [4, 8, 16, 32, 128])
    def test_formulas(self, n_bits):
        assert latency_clocks(n_bits, "conventional") == 2 * n_bits - 2
        assert latency_clocks(n_bits, "two_bit_sc") == 3 * n_bits // 2 - 2
        assert latency_clocks(n_bits, "proposed") == n_bits // 2

    def test_rejections(self):
        with pytest.raises(ValueError):
            latency_clocks(16, "systolic")
        with pytest.raises(ValueError):
            latency_clocks(2, "proposed")
        with pytest.raises(ValueError):
            latency_clocks(24, "proposed")


class TestPeCount:
    def test_tree_sizes(self, spec16_11):
        assert pe_count(spec16_11, "proposed") == 15  # 8 + 4 + 2 + 1

    def test_smaller_trees(self, spec8_5):
        assert pe_count(spec8_5, "proposed") == 7
        assert pe_count(CodeSpec(2, 1, (0,), (1,)), "proposed") == 1

    def test_same_tree_all_archs(self, spec16_11):
        assert len({pe_count(spec16_11, a) for a in ARCH_KINDS}) == 1


@pytest.fixture(scope="module")
def noisy_frames():
    gen = np.random.default_rng(777)
    return [gen.normal(0.0, 2.0, 16) for _ in range(400)]


class TestSchedules:
    @pytest.mark.parametrize("arch", ARCH_KINDS)
    def test_total_clocks_match_formula(self, arch):
        for n_bits in (4, 8, 16, 32, 128):
            spec = bhattacharyya_construct(n_bits, max(1, 3 * n_bits // 4))
            llrs = np.random.default_rng(n_bits).normal(0, 1.5, n_bits)
            trace = build_schedule(spec, arch, llrs)
            assert trace.total_clocks == latency_clocks(n_bits, arch)
            assert trace.total_clocks == 1 + max(a.clock for a in trace.activations)

    @pytest.mark.parametrize("arch", ARCH_KINDS)
    def test_cosimulation_matches_golden(self, arch, spec16_11, noisy_frames):
        for llrs in noisy_frames:
            trace = build_schedule(spec16_11, arch, llrs)
            golden = sc_decode(llrs, spec16_11, "minsum")
            assert np.array_equal(trace.decoded_bits(), golden.u_hat)

    @pytest.mark.parametrize("arch", ARCH_KINDS)
    def test_every_bit_decoded_exactly_once(self, arch, spec16_11, noisy_frames):
        trace = build_schedule(spec16_11, arch, noisy_frames[0])
        indices = [idx for per_clock in trace.decoded_pairs for idx, _ in per_clock]
        assert sorted(indices) == list(range(16))

    def test_proposed_two_bits_every_clock(self, spec16_11, noisy_frames):
        trace = build_schedule(spec16_11, "proposed", noisy_frames[0])
        assert trace.total_clocks == 8
        assert all(len(per_clock) == 2 for per_clock in trace.decoded_pairs)

    def test_conventional_one_bit_per_leaf_clock(self, spec16_11, noisy_frames):
        trace = build_schedule(spec16_11, "conventional", noisy_frames[0])
        sizes = [len(per_clock) for per_clock in trace.decoded_pairs]
        assert sizes.count(1) == 16 and sizes.count(0) == 14

    def test_two_bit_sc_merges_last_stage(self, spec16_11, noisy_frames):
        trace = build_schedule(spec16_11, "two_bit_sc", noisy_frames[0])
        merged = [a for a in trace.activations if a.function == "FG"]
        assert len(merged) == 8  # one per size-2 node
        sizes = [len(per_clock) for per_clock in trace.decoded_pairs]
        assert sizes.count(2) == 8 and sizes.count(0) == 14

    @pytest.mark.parametrize("arch", ARCH_KINDS)
    def test_sel_and_feedback_invariants(self, arch, spec16_11, noisy_frames):
        trace = build_schedule(spec16_11, arch, noisy_frames[0])
        for act in trace.activations:
            assert (act.function == "F") == (act.sel == 0)
            if act.function in ("G", "FG"):
                assert act.partial_sum_feedback in (0, 1)
            a, b = act.operand_indices
            assert b - a == 1 << act.stage

    @pytest.mark.parametrize("arch", ARCH_KINDS)
    def test_g_only_after_left_block_decided(self, arch, spec16_11, noisy_frames):
        trace = build_schedule(spec16_11, arch, noisy_frames[0])
        decide_clock = {}
        for clock, per_clock in enumerate(trace.decoded_pairs):
            for idx, _ in per_clock:
                decide_clock[idx] = clock
        for act in trace.activations:
            if act.function != "G":
                continue
            left = range(act.node_base, act.node_base + (1 << act.stage))
            assert all(decide_clock[i] < act.clock for i in left)

    @pytest.mark.parametrize("arch", ARCH_KINDS)
    def test_stage_writes_precede_reads(self, arch, spec16_11, noisy_frames):
        # a stage reads its input node only after the parent stage produced
        # it, in the same clock (combinational chain) or earlier
        trace = build_schedule(spec16_11, arch, noisy_frames[0])
        n = spec16_11.stages
        produced = {}  # stage -> (node_base, function, clock, order)
        for order, act in enumerate(trace.activations):
            if act.stage < n - 1:
                parent = produced.get(act.stage + 1)
                assert parent is not None, "child stage ran before its parent"
                p_base, p_clock, p_order = parent
                assert p_base == act.node_base & ~((1 << (act.stage + 2)) - 1)
                assert (p_clock, p_order) <= (act.clock, order)
            produced[act.stage] = (act.node_base, act.clock, order)

    def test_pair_ordering_dependence_at_n4(self):
        # find inputs where flipping the first decoded bit of a pair flips
        # the second: the merged PE's G must consume the same-clock decision
        spec = bhattacharyya_construct(4, 4)
        gen = np.random.default_rng(3)
        dependence_seen = False
        for _ in range(200):
            llrs = gen.normal(0, 1.5, 4)
            trace = build_schedule(spec, "proposed", llrs)
            (i0, bit0), (i1, bit1) = trace.decoded_pairs[0]
            # reconstruct the pair's PE inputs: stage-1 F outputs
            v0 = f_minsum(llrs[0], llrs[2])
            v1 = f_minsum(llrs[1], llrs[3])
            assert bit0 == (1 if f_minsum(v0, v1) < 0 else 0)
            assert bit1 == (1 if g_func(v0, v1, bit0) < 0 else 0)
            flipped = 1 if g_func(v0, v1, bit0 ^ 1) < 0 else 0
            if flipped != bit1:
                dependence_seen = True
        assert dependence_seen

    def test_rejects_bad_input(self, spec16_11):
        with pytest.raises(ValueError):
            build_schedule(spec16_11, "proposed", np.zeros(8))
        with pytest.raises(ValueError):
            build_schedule(spec16_11, "wavefront", np.zeros(16))


class TestTraceFormat:
    def test_lines(self, spec16_11, noisy_frames):
        text = format_trace(build_schedule(spec16_11, "proposed", noisy_frames[0]))
        lines = text.strip().splitlines()
        assert len(lines) == 8 * 15  # 8 clocks, 15 PEs per clock
        assert lines[0].startswith("clk=0 stage=3 fn=")
        for line in lines:
            assert "stage=" in line and "fn=" in line and "sel=" in line
        assert any("fn=FG" in line and "u=" in line for line in lines)
