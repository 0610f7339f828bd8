"""Fixed-point successive cancellation decoding with saturating arithmetic.

LLRs are held as Q-bit signed integers on a symmetric grid: the usable range
is [-(2^(Q-1)-1), +(2^(Q-1)-1)], excluding the two's-complement minimum so
negation can never overflow.  Every add/subtract saturates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codec import DecodeResult, encode_nonsystematic


@dataclass(frozen=True)
class QuantSpec:
    """Fixed-point format: Q total bits, of which fraction_bits are fractional."""

    total_bits_q: int
    fraction_bits: int = 1

    def __post_init__(self):
        if self.total_bits_q < 3:
            raise ValueError(f"total_bits_q must be >= 3, got {self.total_bits_q}")
        if not (0 <= self.fraction_bits < self.total_bits_q):
            raise ValueError(
                f"fraction_bits must be in [0, {self.total_bits_q}), got {self.fraction_bits}"
            )

    @property
    def max_mag(self):
        """Largest representable magnitude in grid units: 2^(Q-1) - 1."""
        return (1 << (self.total_bits_q - 1)) - 1

    @property
    def step(self):
        """LLR value of one grid unit."""
        return 2.0 ** (-self.fraction_bits)


@dataclass(frozen=True)
class FixedLlr:
    """A quantized LLR: raw integer plus its format."""

    raw: int
    spec: QuantSpec

    def __post_init__(self):
        if abs(self.raw) > self.spec.max_mag:
            raise ValueError(f"raw {self.raw} exceeds +/-{self.spec.max_mag}")

    @property
    def value(self):
        return self.raw * self.spec.step


def quantize(value, qspec):
    """Quantize a real LLR: scale by 2^fraction_bits, round half away from
    zero, saturate to the representable range."""
    if not math.isfinite(value):
        raise ValueError("LLR must be finite")
    raw = int(math.copysign(math.floor(abs(value) * 2.0**qspec.fraction_bits + 0.5), value))
    raw = max(-qspec.max_mag, min(qspec.max_mag, raw))
    return FixedLlr(raw, qspec)


def _check_same_spec(a, b):
    if a.spec != b.spec:
        raise ValueError("operands must share one QuantSpec")


def sat_add(a, b):
    """Saturating add of two FixedLlr values in the same format."""
    _check_same_spec(a, b)
    m = a.spec.max_mag
    return FixedLlr(max(-m, min(m, a.raw + b.raw)), a.spec)


def sat_sub(a, b):
    """Saturating subtract of two FixedLlr values in the same format."""
    _check_same_spec(a, b)
    m = a.spec.max_mag
    return FixedLlr(max(-m, min(m, a.raw - b.raw)), a.spec)


def sc_decode_fixed(channel_llrs, spec, qspec):
    """Min-sum SC decode entirely on the Q-bit integer grid.

    Channel LLRs pass through the saturating quantizer (there is no separate
    pre-clip), the F combine is sign*min on raw values, which is exact in
    fixed point, and G is a saturating add/subtract.  Raw value 0 at a leaf
    decides bit 0.  Saturation events during the decode (including channel
    quantization) are counted and reported on the result.

    Returns
    -------
    DecodeResult with saturation_events set.
    """
    llrs = np.asarray(channel_llrs, dtype=float)
    if len(llrs) != spec.block_len:
        raise ValueError(f"expected {spec.block_len} LLRs, got {len(llrs)}")
    max_mag = qspec.max_mag
    sat_events = [0]

    def clamp(value):
        if value > max_mag:
            sat_events[0] += 1
            return max_mag
        if value < -max_mag:
            sat_events[0] += 1
            return -max_mag
        return value

    scale = 2.0**qspec.fraction_bits
    raw = []
    for v in llrs:
        if not math.isfinite(v):
            raise ValueError("LLR must be finite")
        raw.append(clamp(int(math.copysign(math.floor(abs(v) * scale + 0.5), v))))

    frozen = spec.frozen_mask()
    u_hat = np.zeros(spec.block_len, dtype=np.uint8)
    ops = [0]

    def f_int(la, lb):
        mag = min(abs(la), abs(lb))
        return -mag if (la < 0) != (lb < 0) else mag

    def g_int(la, lb, bit):
        return clamp(lb + la) if bit == 0 else clamp(lb - la)

    def rec(v, base):
        m = len(v)
        if m == 1:
            if not frozen[base] and v[0] < 0:
                u_hat[base] = 1
            return [int(u_hat[base])]
        half = m // 2
        a = v[:half]
        b = v[half:]
        left = rec([f_int(a[j], b[j]) for j in range(half)], base)
        right = rec([g_int(a[j], b[j], left[j]) for j in range(half)], base + half)
        ops[0] += m
        return [left[j] ^ right[j] for j in range(half)] + right

    rec(raw, 0)
    x_hat = encode_nonsystematic(u_hat)
    return DecodeResult(
        u_hat=u_hat,
        x_hat=x_hat,
        info_bits=x_hat[list(spec.info_set)],
        pe_op_count=ops[0],
        saturation_events=sat_events[0],
    )
