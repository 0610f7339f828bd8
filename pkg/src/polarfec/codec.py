"""Polar encoding and floating-point successive cancellation decoding.

Encoding is the in-place butterfly realization of the n-fold Kronecker power
of the 2x2 polarizing kernel, in natural index order (no bit-reversal
permutation anywhere; the decoder shares the same order).  At length 2 the
map is (u0, u1) -> (u0 xor u1, u1).

LLR sign convention throughout: positive means bit 0 is more likely,
i.e. LLR = log(P(bit=0)/P(bit=1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .construction import is_power_of_two


@dataclass(frozen=True)
class DecodeResult:
    """Output of a successive cancellation decode.

    Attributes
    ----------
    u_hat : ndarray
        Estimated source vector, length N; zero at every frozen index.
    x_hat : ndarray
        Re-encoded codeword estimate, u_hat carried through the butterfly.
    info_bits : ndarray
        x_hat restricted to the information positions (the systematic payload).
    pe_op_count : int
        Total number of scalar F and G evaluations performed.
    saturation_events : int | None
        For fixed-point decodes, how many arithmetic results were clamped;
        None for floating-point decodes.
    """

    u_hat: np.ndarray
    x_hat: np.ndarray
    info_bits: np.ndarray
    pe_op_count: int
    saturation_events: int | None = None


def _as_bits(bits):
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("bit vector must be one-dimensional")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("bit vector entries must be 0 or 1")
    return arr


def encode_nonsystematic(u_full, return_xor_count=False):
    """Multiply a length-N source vector by the polar transform over GF(2).

    Runs the in-place butterfly; each of the log2(N) stages performs N/2
    XORs, so the total XOR count is (N/2)*log2(N).  The transform is an
    involution: applying it twice returns the input.

    Parameters
    ----------
    u_full : array-like of {0,1}
        Source vector, length a power of two.
    return_xor_count : bool
        When True, also return the number of XOR operations performed.
    """
    x = _as_bits(u_full).copy()
    n_bits = len(x)
    if not is_power_of_two(n_bits):
        raise ValueError(f"length must be a power of two, got {n_bits}")
    xors = 0
    dist = 1
    while dist < n_bits:
        for j in range(0, n_bits, 2 * dist):
            x[j : j + dist] ^= x[j + dist : j + 2 * dist]
            xors += dist
        dist *= 2
    if return_xor_count:
        return x, xors
    return x


def encode_systematic(info, spec):
    """Systematically encode K information bits into a length-N codeword.

    Two-pass non-recursive procedure: scatter the message onto the
    information positions with zeros elsewhere, transform, re-zero the
    frozen positions, transform again.  The resulting codeword carries the
    message verbatim on info_set, and its transform is zero on frozen_set.
    """
    msg = _as_bits(info)
    if len(msg) != spec.info_len:
        raise ValueError(f"expected {spec.info_len} info bits, got {len(msg)}")
    a = np.zeros(spec.block_len, dtype=np.uint8)
    a[list(spec.info_set)] = msg
    t = encode_nonsystematic(a)
    t[list(spec.frozen_set)] = 0
    return encode_nonsystematic(t)


def f_exact(la, lb):
    """Exact log-domain combine of two LLRs (the check-node operation).

    Computes log((1 + e^(la+lb)) / (e^la + e^lb)) through the stable Jacobi
    logarithm max(a, b) + log1p(exp(-|a - b|)).  The result never exceeds
    min(|la|, |lb|) in magnitude and carries the sign of la*lb.
    """
    return _jacobi(la + lb, 0.0) - _jacobi(la, lb)


def _jacobi(a, b):
    return max(a, b) + math.log1p(math.exp(-abs(a - b)))


def f_minsum(la, lb):
    """Hardware-friendly approximation sign(la*lb) * min(|la|, |lb|).

    A zero operand is treated as positive, so any zero input yields zero
    through the min term.
    """
    mag = min(abs(la), abs(lb))
    return -mag if (la < 0) != (lb < 0) else mag


def g_func(la, lb, u_hat):
    """Combine two LLRs with a decided-bit feedback: lb + la or lb - la."""
    if u_hat not in (0, 1):
        raise ValueError(f"u_hat must be 0 or 1, got {u_hat}")
    return lb + la if u_hat == 0 else lb - la


_F_MODES = {"exact": f_exact, "minsum": f_minsum}


def sc_decode(channel_llrs, spec, f_mode="minsum"):
    """Successive cancellation decode of one frame of channel LLRs.

    Standard recursive schedule: descend left applying the F combine,
    decide the leaf bit (frozen index -> 0; otherwise 0 iff LLR >= 0, ties
    deciding 0), ascend applying G with the partial-sum feedback, and merge
    partial sums through the butterfly.  The systematic payload is read from
    the re-encoded estimate x_hat = transform(u_hat).

    Parameters
    ----------
    channel_llrs : array-like of float
        N channel LLRs, positive favouring bit 0.
    spec : CodeSpec
    f_mode : {"minsum", "exact"}

    Returns
    -------
    DecodeResult
    """
    llrs = np.asarray(channel_llrs, dtype=float)
    if len(llrs) != spec.block_len:
        raise ValueError(f"expected {spec.block_len} LLRs, got {len(llrs)}")
    if f_mode not in _F_MODES:
        raise ValueError(f"f_mode must be one of {tuple(_F_MODES)}, got {f_mode!r}")
    f = _F_MODES[f_mode]
    frozen = spec.frozen_mask()
    u_hat = np.zeros(spec.block_len, dtype=np.uint8)
    ops = [0]

    def rec(v, base):
        m = len(v)
        if m == 1:
            if not frozen[base] and v[0] < 0:
                u_hat[base] = 1
            return [int(u_hat[base])]
        half = m // 2
        a = v[:half]
        b = v[half:]
        left = rec([f(a[j], b[j]) for j in range(half)], base)
        right = rec([g_func(a[j], b[j], left[j]) for j in range(half)], base + half)
        ops[0] += m
        return [left[j] ^ right[j] for j in range(half)] + right

    rec(llrs.tolist(), 0)
    x_hat = encode_nonsystematic(u_hat)
    return DecodeResult(
        u_hat=u_hat,
        x_hat=x_hat,
        info_bits=x_hat[list(spec.info_set)],
        pe_op_count=ops[0],
    )


def hard_decision_decode(received_bits, spec, saturation=1.0):
    """Decode hard channel decisions by mapping them onto saturated LLRs.

    Bit 0 maps to +saturation, bit 1 to -saturation, then the min-sum SC
    decoder runs unchanged.  Min-sum decisions are scale invariant for
    uniform input magnitudes, so the saturation constant only needs to be
    positive.
    """
    bits = _as_bits(received_bits)
    if len(bits) != spec.block_len:
        raise ValueError(f"expected {spec.block_len} bits, got {len(bits)}")
    if saturation <= 0:
        raise ValueError("saturation must be positive")
    llrs = np.where(bits == 0, float(saturation), -float(saturation))
    return sc_decode(llrs, spec, f_mode="minsum")
