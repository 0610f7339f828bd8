"""Monte-Carlo BER/FER sweep engine with deterministic per-frame streams.

Every frame's randomness comes from a counter-based stream keyed by
(point_seed, frame_index), so a sweep's outcome is a pure function of its
configuration: frames may be simulated in any order, in chunks, or on any
number of parallel workers without changing a single count.  Early stopping
cuts at the exact frame where the requested number of frame errors is
reached.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import batch, reed_solomon
from .construction import CodeSpec, bhattacharyya_construct
from .quantized import QuantSpec

DECODERS = ("soft_exact", "soft_minsum", "hard", "fixed", "rs15_11")

CHUNK_FRAMES = 4096

# Confidence floor: points with fewer frame errors are flagged, not trusted.
MIN_CONFIDENT_ERRORS = 20


class NoCrossingError(Exception):
    """A curve does not bracket the requested target error rate."""


@dataclass(frozen=True)
class SweepConfig:
    """One BER/FER sweep: code, decoder, Eb/N0 grid and stopping rules."""

    code: object = None  # CodeSpec, (N, K) tuple, or None for rs15_11
    decoder: str = "soft_minsum"
    ebn0_start: float = 0.0
    ebn0_stop: float = 8.0
    ebn0_step: float = 1.0
    max_frames: int = 100_000
    min_frame_errors: int = 100
    master_seed: int = 0
    quant_bits: int = 5
    frac_bits: int = 1

    def __post_init__(self):
        if self.decoder not in DECODERS:
            raise ValueError(f"decoder must be one of {DECODERS}")
        if self.ebn0_step <= 0:
            raise ValueError("ebn0_step must be positive")
        if self.ebn0_stop < self.ebn0_start:
            raise ValueError("ebn0_stop must be >= ebn0_start")
        if self.max_frames < 1 or self.min_frame_errors < 1:
            raise ValueError("max_frames and min_frame_errors must be >= 1")

    def ebn0_points(self):
        count = int(math.floor((self.ebn0_stop - self.ebn0_start) / self.ebn0_step + 1e-9)) + 1
        return [self.ebn0_start + i * self.ebn0_step for i in range(count)]

    def resolved_code(self):
        """CodeSpec for polar decoders; None for the RS baseline."""
        if self.decoder == "rs15_11":
            if self.code is None:
                return None
            pair = tuple(self.code) if not isinstance(self.code, CodeSpec) else (
                self.code.block_len,
                self.code.info_len,
            )
            if pair != (reed_solomon.N_SYMBOLS, reed_solomon.K_SYMBOLS):
                raise ValueError("rs15_11 requires code (15, 11) or none")
            return None
        if isinstance(self.code, CodeSpec):
            return self.code
        if self.code is None:
            raise ValueError(f"decoder {self.decoder} requires a code")
        n, k = self.code
        return bhattacharyya_construct(int(n), int(k))

    def decoder_label(self):
        if self.decoder == "fixed":
            return f"fixed_q{self.quant_bits}_f{self.frac_bits}"
        return self.decoder

    def code_label(self):
        spec = self.resolved_code()
        if spec is None:
            return f"{reed_solomon.N_SYMBOLS},{reed_solomon.K_SYMBOLS}"
        return f"{spec.block_len},{spec.info_len}"


@dataclass(frozen=True)
class SweepPoint:
    """Measured error rates at one Eb/N0 point."""

    ebn0_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float

    @property
    def low_confidence(self):
        return self.frame_errors < MIN_CONFIDENT_ERRORS


class _FrameRandom:
    """Reusable Philox generator reset per frame; equals a fresh
    Generator(Philox(key=[point_seed, frame])) draw for draw."""

    def __init__(self, point_seed):
        self._point_seed = point_seed
        self._bitgen = np.random.Philox(key=[point_seed, 0])
        self._gen = np.random.Generator(self._bitgen)
        self._template = self._bitgen.state

    def frame(self, frame_index):
        state = self._template
        state["state"]["key"] = np.array([self._point_seed, frame_index], dtype=np.uint64)
        state["state"]["counter"] = np.zeros(4, dtype=np.uint64)
        state["buffer_pos"] = 4
        state["has_uint32"] = 0
        state["uinteger"] = 0
        self._bitgen.state = state
        return self._gen


def frame_draws(point_seed, frame_index, payload_bits, channel_bits, sigma):
    """The per-frame random draws: message bits, then channel noise.

    This is the reference definition of a frame's randomness; the chunked
    engine reproduces it exactly for every frame.
    """
    gen = _FrameRandom(point_seed).frame(frame_index)
    message = gen.integers(0, 2, size=payload_bits, dtype=np.uint8)
    noise = gen.normal(0.0, sigma, size=channel_bits)
    return message, noise


def point_seed_for(master_seed, point_index):
    """64-bit stream key for one sweep point."""
    ss = np.random.SeedSequence((int(master_seed), int(point_index)))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _frame_shape(config, spec):
    if config.decoder == "rs15_11":
        payload = reed_solomon.K_SYMBOLS * reed_solomon.BITS_PER_SYMBOL
        chan = reed_solomon.N_SYMBOLS * reed_solomon.BITS_PER_SYMBOL
        rate = payload / chan
    else:
        payload = spec.info_len
        chan = spec.block_len
        rate = spec.info_len / spec.block_len
    return payload, chan, rate


def _simulate_chunk(args):
    """Simulate frames [start, start+count) of one point; returns per-frame
    bit-error counts and frame-error flags."""
    config, spec, point_seed, start, count, sigma = args
    payload_bits, channel_bits, _ = _frame_shape(config, spec)
    messages = np.empty((count, payload_bits), dtype=np.uint8)
    noise = np.empty((count, channel_bits))
    frame_rng = _FrameRandom(point_seed)
    for i in range(count):
        gen = frame_rng.frame(start + i)
        messages[i] = gen.integers(0, 2, size=payload_bits, dtype=np.uint8)
        noise[i] = gen.normal(0.0, sigma, size=channel_bits)

    if config.decoder == "rs15_11":
        decoded = _run_rs_frames(messages, noise)
    else:
        decoded = _run_polar_frames(config, spec, messages, noise, sigma)
    wrong = decoded != messages
    return wrong.sum(axis=1).astype(np.int64), wrong.any(axis=1)


def _run_polar_frames(config, spec, messages, noise, sigma):
    codewords = batch.encode_systematic_rows(messages, spec)
    received = (1.0 - 2.0 * codewords.astype(float)) + noise
    if config.decoder == "hard":
        hard_bits = (received < 0).astype(np.uint8)
        llrs = batch.hard_llr_rows(hard_bits)
        u_hat = batch.decode_minsum_rows(llrs, spec)
    else:
        llrs = 2.0 * received / (sigma * sigma)
        if config.decoder == "soft_minsum":
            u_hat = batch.decode_minsum_rows(llrs, spec)
        elif config.decoder == "soft_exact":
            u_hat = batch.decode_exact_rows(llrs, spec)
        else:
            u_hat = batch.decode_fixed_rows(
                llrs, spec, QuantSpec(config.quant_bits, config.frac_bits)
            )
    x_hat = batch.transform_rows(u_hat)
    return x_hat[:, list(spec.info_set)]


def _run_rs_frames(messages, noise):
    info_symbols = reed_solomon.bits_to_symbols(messages)
    codewords = reed_solomon.rs_encode_rows(info_symbols)
    code_bits = reed_solomon.symbols_to_bits(codewords)
    received = (1.0 - 2.0 * code_bits.astype(float)) + noise
    hard_bits = (received < 0).astype(np.uint8)
    received_symbols = reed_solomon.bits_to_symbols(hard_bits)
    syndromes = reed_solomon.rs_syndromes_rows(received_symbols)
    decoded_symbols = received_symbols[:, : reed_solomon.K_SYMBOLS].copy()
    for idx in np.flatnonzero(syndromes.any(axis=1)):
        result = reed_solomon.rs_decode(received_symbols[idx])
        decoded_symbols[idx] = result.info
    return reed_solomon.symbols_to_bits(decoded_symbols)


def run_sweep(config, workers=1):
    """Run the configured sweep; returns one SweepPoint per Eb/N0 value.

    The result is a pure function of config: counts are identical for any
    worker count, because each chunk of frames is simulated from its own
    keyed streams and chunks are reduced in index order with the stop rule
    evaluated on the exact per-frame error sequence.
    """
    spec = config.resolved_code()
    points = []
    for point_index, ebn0 in enumerate(config.ebn0_points()):
        _, _, rate = _frame_shape(config, spec)
        sigma = math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0 / 10.0)))
        pseed = point_seed_for(config.master_seed, point_index)
        chunks = []
        start = 0
        while start < config.max_frames:
            count = min(CHUNK_FRAMES, config.max_frames - start)
            chunks.append((config, spec, pseed, start, count, sigma))
            start += count
        points.append(_reduce_point(ebn0, config, spec, chunks, workers))
    return points


def _reduce_point(ebn0, config, spec, chunks, workers):
    frames = bit_errors = frame_errors = 0
    stop = False

    def consume(result):
        nonlocal frames, bit_errors, frame_errors, stop
        per_frame_bits, per_frame_flags = result
        need = config.min_frame_errors - frame_errors
        cumulative = np.cumsum(per_frame_flags)
        if cumulative.size and cumulative[-1] >= need:
            cut = int(np.searchsorted(cumulative, need)) + 1
            frames += cut
            bit_errors += int(per_frame_bits[:cut].sum())
            frame_errors += int(cumulative[cut - 1])
            stop = True
        else:
            frames += len(per_frame_flags)
            bit_errors += int(per_frame_bits.sum())
            frame_errors += int(cumulative[-1]) if cumulative.size else 0

    if workers <= 1:
        for chunk in chunks:
            consume(_simulate_chunk(chunk))
            if stop:
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending = {}
            next_submit = 0
            next_consume = 0
            while next_consume < len(chunks) and not stop:
                while next_submit < len(chunks) and next_submit - next_consume < workers:
                    pending[next_submit] = pool.submit(_simulate_chunk, chunks[next_submit])
                    next_submit += 1
                consume(pending.pop(next_consume).result())
                next_consume += 1
            for fut in pending.values():
                fut.cancel()

    payload_bits, _, _ = _frame_shape(config, spec)
    return SweepPoint(
        ebn0_db=ebn0,
        frames=frames,
        bit_errors=bit_errors,
        frame_errors=frame_errors,
        ber=bit_errors / (frames * payload_bits) if frames else 0.0,
        fer=frame_errors / frames if frames else 0.0,
    )


def emit_csv(points, metadata):
    """Render sweep points as CSV text.

    Leading comment '# code=<N>,<K> decoder=<name> seed=<seed>', then the
    header 'ebno_db,frames,bit_errors,frame_errors,ber,fer', one row per
    point.  Floats are written with repr so parsing returns them exactly.
    """
    lines = [
        f"# code={metadata['code']} decoder={metadata['decoder']} seed={metadata['seed']}",
        "ebno_db,frames,bit_errors,frame_errors,ber,fer",
    ]
    for p in points:
        lines.append(
            f"{p.ebn0_db!r},{p.frames},{p.bit_errors},{p.frame_errors},{p.ber!r},{p.fer!r}"
        )
    return "\n".join(lines) + "\n"


def parse_csv(text):
    """Parse emit_csv output back into (points, metadata)."""
    metadata = {}
    points = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for token in line[1:].split():
                if "=" in token:
                    key, value = token.split("=", 1)
                    metadata[key] = value
            continue
        if line.startswith("ebno_db"):
            continue
        cols = line.split(",")
        if len(cols) != 6:
            raise ValueError(f"malformed CSV row: {line!r}")
        points.append(
            SweepPoint(
                ebn0_db=float(cols[0]),
                frames=int(cols[1]),
                bit_errors=int(cols[2]),
                frame_errors=int(cols[3]),
                ber=float(cols[4]),
                fer=float(cols[5]),
            )
        )
    return points, metadata


def _crossing_ebn0(points, target_ber):
    """Eb/N0 at which the curve crosses target_ber, log-linear interpolation."""
    usable = [(p.ebn0_db, p.ber) for p in points if p.ber > 0]
    for (e1, b1), (e2, b2) in zip(usable, usable[1:]):
        if b1 >= target_ber >= b2:
            if b1 == b2:
                return e1
            span = math.log10(b1) - math.log10(b2)
            frac = (math.log10(b1) - math.log10(target_ber)) / span
            return e1 + frac * (e2 - e1)
    raise NoCrossingError(f"no crossing of ber={target_ber:g}")


def compare_gain(curve_a, curve_b, target_ber):
    """Coding-gain difference in dB between two measured curves.

    Interpolates each curve's Eb/N0 at the target BER (linear in dB versus
    log10 BER) and returns crossing(a) - crossing(b).  Raises
    NoCrossingError when either curve does not bracket the target.
    """
    return _crossing_ebn0(curve_a, target_ber) - _crossing_ebn0(curve_b, target_ber)
