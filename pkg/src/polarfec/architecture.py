"""Cycle-accurate scheduling and latency model of three SC decoder designs.

Three hardware scheduling strategies for the same processing-element tree
(N/2 + N/4 + ... + 1 PEs, one F and one G circuit per PE):

* ``conventional``  - one tree-stage activation per clock; every node of the
  decode tree is activated twice (F descent, G descent), 2N - 2 clocks.
* ``two_bit_sc``    - identical, except the last stage's F and G execute in
  the same clock, so each size-2 node costs one clock: 1.5N - 2 clocks.
* ``proposed``      - all stages chain combinationally inside a single clock
  and the last-stage PE is modified to expose both its F and G outputs, so
  every clock decides one bit pair: N/2 clocks.

The model is transaction level: combinational depth inside a clock is
represented by activation ordering, not timing.  Traces are executed
functionally with min-sum arithmetic and must decode bit-identically to the
reference decoder; the schedules reorder computation, never change it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codec import encode_nonsystematic, f_minsum, g_func
from .construction import is_power_of_two

ARCH_KINDS = ("conventional", "two_bit_sc", "proposed")

# First-bit-pair schedule signatures, one clock per parenthesized group.
SCHEDULE_LABELS = {
    "conventional": "(F)-(F)-(F)-(F)-(G)",
    "two_bit_sc": "(F)-(F)-(F)-(F-G)",
    "proposed": "(F-F-F-F-G)",
}


def _check_arch(arch):
    if arch not in ARCH_KINDS:
        raise ValueError(f"arch must be one of {ARCH_KINDS}, got {arch!r}")


def latency_clocks(n_bits, arch):
    """Decode latency in clock cycles for a length-N code under one design.

    conventional: 2N - 2; two_bit_sc: 1.5N - 2; proposed: N/2.  Each formula
    is also realized constructively by build_schedule and the two must agree.
    """
    _check_arch(arch)
    if not is_power_of_two(n_bits) or n_bits < 4:
        raise ValueError(f"n_bits must be a power of two >= 4, got {n_bits}")
    if arch == "conventional":
        return 2 * n_bits - 2
    if arch == "two_bit_sc":
        return 3 * n_bits // 2 - 2
    return n_bits // 2


def pe_count(spec, arch):
    """Processing elements in the PE tree: N/2 + N/4 + ... + 1 = N - 1.

    All three designs instantiate the full tree; the proposed one modifies
    the final PE to expose both function outputs.
    """
    _check_arch(arch)
    return spec.block_len - 1


@dataclass(frozen=True, slots=True)
class PeActivation:
    """One processing-element operation within a schedule.

    stage s consumes a 2^(s+1)-entry LLR array; PE j reads local operand
    indices (j, j + 2^s).  function "F" has sel = 0; "G" has sel = 1 and a
    decided-bit feedback; "FG" is the merged/modified last-stage operation
    emitting both outputs, with the feedback being the pair's first bit.
    node_base is the first source index covered by the activation's node.
    """

    clock: int
    stage: int
    function: str
    operand_indices: tuple
    sel: int
    partial_sum_feedback: int | None = None
    node_base: int = 0


@dataclass(frozen=True)
class ScheduleTrace:
    """Per-clock PE activation record of one decode, plus its decisions."""

    arch: str
    code: object
    activations: tuple
    total_clocks: int
    decoded_pairs: tuple  # one list of (bit_index, bit_value) per clock

    def decoded_bits(self):
        """Source-vector estimate assembled from the per-clock decisions."""
        u = np.zeros(self.code.block_len, dtype=np.uint8)
        for per_clock in self.decoded_pairs:
            for idx, bit in per_clock:
                u[idx] = bit
        return u


def build_schedule(spec, arch, channel_llrs):
    """Emit and functionally execute one architecture's decode schedule.

    Min-sum arithmetic throughout; frozen positions are forced to zero
    before any feedback.  total_clocks always equals latency_clocks.
    """
    _check_arch(arch)
    llrs = np.asarray(channel_llrs, dtype=float)
    if len(llrs) != spec.block_len:
        raise ValueError(f"expected {spec.block_len} LLRs, got {len(llrs)}")
    if arch == "proposed":
        activations, pairs = _run_combinational(spec, llrs)
    else:
        activations, pairs = _run_staged(spec, llrs, merge_last=(arch == "two_bit_sc"))
    total = activations[-1].clock + 1
    expected = latency_clocks(spec.block_len, arch)
    if total != expected:
        raise AssertionError(
            f"schedule produced {total} clocks, formula says {expected}"
        )
    return ScheduleTrace(
        arch=arch,
        code=spec,
        activations=tuple(activations),
        total_clocks=total,
        decoded_pairs=tuple(pairs),
    )


def _decide(llr_value, index, frozen):
    if frozen[index]:
        return 0
    return 1 if llr_value < 0 else 0


def _run_staged(spec, llrs, merge_last):
    """Conventional / 2b-SC: one node activation per clock, depth-first.

    With merge_last, a size-2 node's F and G collapse into a single "FG"
    clock whose G input is the F decision made the same clock.
    """
    frozen = spec.frozen_mask()
    activations = []
    pairs = []
    clock = [-1]

    def next_clock():
        clock[0] += 1
        pairs.append([])
        return clock[0]

    def rec(v, base):
        m = len(v)
        half = m // 2
        stage = half.bit_length() - 1
        a = v[:half]
        b = v[half:]
        f_out = [f_minsum(a[j], b[j]) for j in range(half)]
        if m == 2 and merge_last:
            c = next_clock()
            bit0 = _decide(f_out[0], base, frozen)
            g_out = g_func(a[0], b[0], bit0)
            bit1 = _decide(g_out, base + 1, frozen)
            activations.append(
                PeActivation(c, stage, "FG", (0, 1), 1, bit0, base)
            )
            pairs[c] += [(base, bit0), (base + 1, bit1)]
            return [bit0 ^ bit1, bit1]

        c = next_clock()
        for j in range(half):
            activations.append(PeActivation(c, stage, "F", (j, j + half), 0, None, base))
        if m == 2:
            bit0 = _decide(f_out[0], base, frozen)
            pairs[c].append((base, bit0))
            left = [bit0]
        else:
            left = rec(f_out, base)

        g_out = [g_func(a[j], b[j], left[j]) for j in range(half)]
        c = next_clock()
        for j in range(half):
            activations.append(
                PeActivation(c, stage, "G", (j, j + half), 1, left[j], base)
            )
        if m == 2:
            bit1 = _decide(g_out[0], base + 1, frozen)
            pairs[c].append((base + 1, bit1))
            right = [bit1]
        else:
            right = rec(g_out, base + half)
        return [left[j] ^ right[j] for j in range(half)] + right

    rec(llrs.tolist(), 0)
    return activations, pairs


def _run_combinational(spec, llrs):
    """Proposed design: every clock recomputes the whole stage path.

    Clock c decodes the pair (u_2c, u_2c+1).  Stage s applies F when bit
    s-1 of c is zero, else G fed by the partial sums of the already decided
    left block; the modified stage-0 PE emits both outputs, the first bit
    feeding the second bit's G input within the same clock.
    """
    n = spec.stages
    n_bits = spec.block_len
    frozen = spec.frozen_mask()
    u_hat = np.zeros(n_bits, dtype=np.uint8)
    activations = []
    pairs = []
    llr_list = llrs.tolist()
    for c in range(n_bits // 2):
        pairs.append([])
        v = llr_list
        base = 0
        for stage in range(n - 1, 0, -1):
            half = 1 << stage
            a = v[:half]
            b = v[half:]
            if (c >> (stage - 1)) & 1 == 0:
                for j in range(half):
                    activations.append(
                        PeActivation(c, stage, "F", (j, j + half), 0, None, base)
                    )
                v = [f_minsum(a[j], b[j]) for j in range(half)]
            else:
                beta = encode_nonsystematic(u_hat[base : base + half])
                for j in range(half):
                    activations.append(
                        PeActivation(c, stage, "G", (j, j + half), 1, int(beta[j]), base)
                    )
                v = [g_func(a[j], b[j], int(beta[j])) for j in range(half)]
                base += half
        i0, i1 = 2 * c, 2 * c + 1
        bit0 = _decide(f_minsum(v[0], v[1]), i0, frozen)
        bit1 = _decide(g_func(v[0], v[1], bit0), i1, frozen)
        activations.append(PeActivation(c, 0, "FG", (0, 1), 1, bit0, i0))
        u_hat[i0] = bit0
        u_hat[i1] = bit1
        pairs[c] += [(i0, bit0), (i1, bit1)]
    return activations, pairs


def format_trace(trace):
    """Line-oriented text dump: one 'clk=.. stage=.. fn=..' line per PE op."""
    lines = []
    for act in trace.activations:
        line = (
            f"clk={act.clock} stage={act.stage} fn={act.function}"
            f" a={act.operand_indices[0]} b={act.operand_indices[1]} sel={act.sel}"
        )
        if act.partial_sum_feedback is not None:
            line += f" u={act.partial_sum_feedback}"
        lines.append(line)
    return "\n".join(lines) + "\n"
