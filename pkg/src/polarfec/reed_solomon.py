"""RS(15,11) over GF(16): the hard-decision baseline code.

Field: GF(2^4) modulo x^4 + x + 1, primitive element alpha = 2.  The code is
narrow-sense with generator (x - a)(x - a^2)(x - a^3)(x - a^4), systematic
(11 information symbols followed by 4 parity symbols), correcting up to two
symbol errors.  Codewords are lists of symbols in descending polynomial
order: received[i] is the coefficient of x^(14-i).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FIELD_POLY = 0x13  # x^4 + x + 1
N_SYMBOLS = 15
K_SYMBOLS = 11
N_PARITY = N_SYMBOLS - K_SYMBOLS
BITS_PER_SYMBOL = 4
T_CORRECTABLE = N_PARITY // 2


def _build_tables():
    exp = np.zeros(30, dtype=np.int64)
    log = np.zeros(16, dtype=np.int64)
    v = 1
    for i in range(15):
        exp[i] = v
        log[v] = i
        v <<= 1
        if v & 0x10:
            v ^= FIELD_POLY
    exp[15:] = exp[:15]
    return exp, log


GF16_EXP, GF16_LOG = _build_tables()


def gf16_mul(a, b):
    """Multiply two GF(16) elements."""
    if not (0 <= a < 16 and 0 <= b < 16):
        raise ValueError("GF(16) elements lie in [0, 15]")
    if a == 0 or b == 0:
        return 0
    return int(GF16_EXP[GF16_LOG[a] + GF16_LOG[b]])


def gf16_inv(a):
    """Multiplicative inverse of a nonzero GF(16) element."""
    if not (0 < a < 16):
        raise ValueError("cannot invert outside (0, 15]")
    return int(GF16_EXP[(15 - GF16_LOG[a]) % 15])


def _compute_generator():
    g = [1]
    for j in range(1, N_PARITY + 1):
        root = int(GF16_EXP[j])
        nxt = [0] * (len(g) + 1)
        for i, c in enumerate(g):
            nxt[i] ^= gf16_mul(c, root)
            nxt[i + 1] ^= c
        g = nxt
    return tuple(reversed(g))  # descending powers


# (x-a)(x-a^2)(x-a^3)(x-a^4) = x^4 + 13x^3 + 12x^2 + 8x + 7
GENERATOR_POLY = _compute_generator()


@dataclass(frozen=True)
class RsDecodeResult:
    """Decoded information symbols plus a decode-failure flag.

    On failure the info field carries the received systematic part
    unchanged (best effort); failure is a result value, not an error.
    """

    info: tuple
    failure: bool


def _check_symbols(symbols, expected_len):
    syms = [int(s) for s in symbols]
    if len(syms) != expected_len:
        raise ValueError(f"expected {expected_len} symbols, got {len(syms)}")
    if any(not 0 <= s < 16 for s in syms):
        raise ValueError("symbols must lie in [0, 15]")
    return syms


def rs_encode(info_symbols):
    """Systematically encode 11 information symbols into a 15-symbol codeword.

    Parity is the remainder of info(x) * x^4 modulo the generator; every
    syndrome of the result is zero.
    """
    info = _check_symbols(info_symbols, K_SYMBOLS)
    rem = info + [0] * N_PARITY
    for i in range(K_SYMBOLS):
        c = rem[i]
        if c:
            for j in range(1, N_PARITY + 1):
                rem[i + j] ^= gf16_mul(GENERATOR_POLY[j], c)
        rem[i] = 0
    return info + rem[K_SYMBOLS:]


def rs_syndromes(received):
    """Evaluate the received polynomial at alpha^1 .. alpha^4."""
    r = _check_symbols(received, N_SYMBOLS)
    out = []
    for j in range(1, N_PARITY + 1):
        alpha_j = int(GF16_EXP[j])
        acc = 0
        for c in r:
            acc = gf16_mul(acc, alpha_j) ^ c
        out.append(acc)
    return out


def rs_decode(received):
    """Correct up to two symbol errors in a 15-symbol word.

    Syndromes, then Berlekamp-Massey for the error locator, Chien search for
    its roots and the Forney formula for magnitudes.  Failure is declared
    when the locator degree exceeds 2, when the root count mismatches the
    locator degree, or when correction leaves a nonzero syndrome.  Patterns
    beyond two errors may be miscorrected to a nearby codeword; that is
    inherent to bounded-distance decoding.
    """
    r = _check_symbols(received, N_SYMBOLS)
    synd = rs_syndromes(r)
    if max(synd) == 0:
        return RsDecodeResult(tuple(r[:K_SYMBOLS]), False)

    locator = _berlekamp_massey(synd)
    degree = len(locator) - 1
    if degree > T_CORRECTABLE:
        return RsDecodeResult(tuple(r[:K_SYMBOLS]), True)

    positions = _chien_search(locator)
    if len(positions) != degree:
        return RsDecodeResult(tuple(r[:K_SYMBOLS]), True)

    corrected = list(r)
    if not _forney_correct(corrected, synd, locator, positions):
        return RsDecodeResult(tuple(r[:K_SYMBOLS]), True)
    if max(rs_syndromes(corrected)) != 0:
        return RsDecodeResult(tuple(r[:K_SYMBOLS]), True)
    return RsDecodeResult(tuple(corrected[:K_SYMBOLS]), False)


def _berlekamp_massey(synd):
    """Minimal LFSR (error locator, ascending coefficients) for the syndromes."""
    locator = [1]
    prev = [1]
    length = 0
    shift = 1
    prev_disc = 1
    for n in range(N_PARITY):
        disc = synd[n]
        for i in range(1, length + 1):
            if i < len(locator) and locator[i]:
                disc ^= gf16_mul(locator[i], synd[n - i])
        if disc == 0:
            shift += 1
            continue
        coef = gf16_mul(disc, gf16_inv(prev_disc))
        if 2 * length <= n:
            saved = list(locator)
            locator = locator + [0] * max(0, len(prev) + shift - len(locator))
            for i in range(len(prev)):
                locator[i + shift] ^= gf16_mul(coef, prev[i])
            length = n + 1 - length
            prev = saved
            prev_disc = disc
            shift = 1
        else:
            locator = locator + [0] * max(0, len(prev) + shift - len(locator))
            for i in range(len(prev)):
                locator[i + shift] ^= gf16_mul(coef, prev[i])
            shift += 1
    while len(locator) > 1 and locator[-1] == 0:
        locator.pop()
    return locator


def _chien_search(locator):
    """Symbol positions whose locator value X = alpha^(14-i) inverts a root."""
    positions = []
    for i in range(N_SYMBOLS):
        x_inv = int(GF16_EXP[(15 - (14 - i)) % 15])
        val = 0
        for k in range(len(locator) - 1, -1, -1):
            val = gf16_mul(val, x_inv) ^ locator[k]
        if val == 0:
            positions.append(i)
    return positions


def _forney_correct(word, synd, locator, positions):
    """Apply Forney error magnitudes in place; False if a magnitude is undefined."""
    # Omega(x) = S(x) * Lambda(x) mod x^4 with S(x) = S1 + S2 x + S3 x^2 + S4 x^3
    omega = [0] * N_PARITY
    for i in range(N_PARITY):
        if synd[i]:
            for k in range(len(locator)):
                if i + k < N_PARITY and locator[k]:
                    omega[i + k] ^= gf16_mul(synd[i], locator[k])
    for pos in positions:
        x_inv = int(GF16_EXP[(15 - (14 - pos)) % 15])
        num = 0
        for k in range(N_PARITY - 1, -1, -1):
            num = gf16_mul(num, x_inv) ^ omega[k]
        # Formal derivative keeps odd-power terms only in characteristic 2.
        den = locator[1] if len(locator) > 1 else 0
        if len(locator) > 3 and locator[3]:
            den ^= gf16_mul(locator[3], gf16_mul(x_inv, x_inv))
        if den == 0:
            return False
        word[pos] ^= gf16_mul(num, gf16_inv(den))
    return True


def _gf16_mul_vec(values, scalar):
    """Multiply an array of GF(16) elements by one nonzero scalar."""
    values = np.asarray(values)
    out = GF16_EXP[(GF16_LOG[values] + GF16_LOG[scalar]) % 15]
    return np.where(values == 0, 0, out)


def rs_encode_rows(info_rows):
    """Row-wise systematic encoding of a (frames, 11) symbol array.

    Matches rs_encode on every row; used by the Monte-Carlo engine.
    """
    info = np.asarray(info_rows, dtype=np.int64)
    frames = info.shape[0]
    rem = np.zeros((frames, N_SYMBOLS), dtype=np.int64)
    rem[:, :K_SYMBOLS] = info
    for i in range(K_SYMBOLS):
        feedback = rem[:, i].copy()
        for j in range(1, N_PARITY + 1):
            rem[:, i + j] ^= _gf16_mul_vec(feedback, GENERATOR_POLY[j])
        rem[:, i] = 0
    out = np.concatenate([info, rem[:, K_SYMBOLS:]], axis=1)
    return out.astype(np.uint8)


def rs_syndromes_rows(received_rows):
    """Row-wise syndromes of a (frames, 15) symbol array, shape (frames, 4)."""
    r = np.asarray(received_rows, dtype=np.int64)
    out = np.zeros((r.shape[0], N_PARITY), dtype=np.int64)
    for j in range(1, N_PARITY + 1):
        alpha_j = int(GF16_EXP[j])
        acc = np.zeros(r.shape[0], dtype=np.int64)
        for i in range(N_SYMBOLS):
            acc = _gf16_mul_vec(acc, alpha_j) ^ r[:, i]
        out[:, j - 1] = acc
    return out


def symbols_to_bits(symbols):
    """Unpack GF(16) symbols into bits, most significant bit first."""
    syms = np.asarray(symbols, dtype=np.uint8)
    shifts = np.array([3, 2, 1, 0], dtype=np.uint8)
    return ((syms[..., None] >> shifts) & 1).reshape(*syms.shape[:-1], -1)


def bits_to_symbols(bits):
    """Pack bits (MSB first, groups of four) into GF(16) symbols."""
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.shape[-1] % BITS_PER_SYMBOL:
        raise ValueError("bit count must be a multiple of 4")
    grouped = arr.reshape(*arr.shape[:-1], -1, BITS_PER_SYMBOL)
    weights = np.array([8, 4, 2, 1], dtype=np.uint8)
    return (grouped * weights).sum(axis=-1).astype(np.uint8)
