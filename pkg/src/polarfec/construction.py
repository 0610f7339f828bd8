"""Polar code construction: frozen/information set selection.

The synthetic-channel reliabilities are computed with the Bhattacharyya
parameter recursion over a binary erasure channel proxy.  Indices are kept
in the same natural (non-bit-reversed) order the encoder butterfly uses, so
a frozen index addresses a position of the source vector directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np


def is_power_of_two(n):
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters of the erasure-proxy construction.

    design_erasure_prob is the initial Bhattacharyya parameter z0 of the
    proxy channel, in (0, 1).
    """

    design_erasure_prob: float = 0.5

    def __post_init__(self):
        if not (0.0 < self.design_erasure_prob < 1.0):
            raise ValueError(
                f"design_erasure_prob must lie in (0, 1), got {self.design_erasure_prob}"
            )


@dataclass(frozen=True)
class CodeSpec:
    """A polar code: block length, payload size and the frozen index set.

    Attributes
    ----------
    block_len : int
        Codeword length N, a power of two.
    info_len : int
        Number of information bits K, 1 <= K <= N.
    frozen_set : tuple of int
        The N-K source positions pinned to zero, sorted ascending.
    info_set : tuple of int
        The K information positions, sorted ascending.
    """

    block_len: int
    info_len: int
    frozen_set: tuple = ()
    info_set: tuple = ()

    def __post_init__(self):
        n, k = self.block_len, self.info_len
        if not is_power_of_two(n):
            raise ValueError(f"block_len must be a power of two, got {n}")
        if not (1 <= k <= n):
            raise ValueError(f"info_len must be in [1, {n}], got {k}")
        frozen = tuple(sorted(int(i) for i in self.frozen_set))
        info = tuple(sorted(int(i) for i in self.info_set))
        object.__setattr__(self, "frozen_set", frozen)
        object.__setattr__(self, "info_set", info)
        if len(frozen) != n - k or len(info) != k:
            raise ValueError("frozen/info set sizes must be N-K and K")
        if set(frozen) & set(info):
            raise ValueError("frozen_set and info_set must be disjoint")
        if set(frozen) | set(info) != set(range(n)):
            raise ValueError("frozen_set and info_set must partition [0, N)")

    @property
    def stages(self):
        """n = log2(N), the number of butterfly stages."""
        return self.block_len.bit_length() - 1

    @property
    def rate(self):
        """Code rate K/N as an exact rational."""
        return Fraction(self.info_len, self.block_len)

    def frozen_mask(self):
        """Boolean mask of length N, True at frozen positions."""
        mask = np.zeros(self.block_len, dtype=bool)
        mask[list(self.frozen_set)] = True
        return mask


def bhattacharyya_reliabilities(n_bits, z0):
    """Bhattacharyya parameter of each synthetic channel, natural index order.

    Starting from the scalar z0, each recursion level expands every value z
    into the pair (2z - z^2, z^2): the degraded channel lands at the even
    offspring index, the upgraded one at the odd.  Larger z means a less
    reliable channel.
    """
    z = np.array([float(z0)])
    while len(z) < n_bits:
        z = np.stack([2.0 * z - z * z, z * z], axis=1).reshape(-1)
    return z


def bhattacharyya_construct(n_bits, k_info, params=None):
    """Build a CodeSpec by freezing the N-K least reliable synthetic channels.

    Parameters
    ----------
    n_bits : int
        Block length N, a power of two.
    k_info : int
        Information payload K, 1 <= K <= N.
    params : ConstructionParams, optional
        Erasure-proxy design point; defaults to z0 = 0.5.

    Returns
    -------
    CodeSpec

    Ties in reliability are broken by freezing the smaller index, which makes
    the construction fully deterministic.
    """
    if not is_power_of_two(n_bits):
        raise ValueError(f"n_bits must be a power of two, got {n_bits}")
    if not (1 <= k_info <= n_bits):
        raise ValueError(f"k_info must be in [1, {n_bits}], got {k_info}")
    if params is None:
        params = ConstructionParams()
    z = bhattacharyya_reliabilities(n_bits, params.design_erasure_prob)
    # Stable argsort on -z: descending reliability-cost, ties by lower index.
    order = np.argsort(-z, kind="stable")
    frozen = tuple(sorted(int(i) for i in order[: n_bits - k_info]))
    info = tuple(sorted(set(range(n_bits)) - set(frozen)))
    return CodeSpec(n_bits, k_info, frozen, info)


def validate_domination(spec, max_samples=4096, seed=0):
    """Check that two-pass systematic encoding is exact for this code.

    Encodes messages systematically, then verifies that the codeword carries
    the message verbatim on info_set and that the re-encoded source vector is
    zero on frozen_set.  Exhaustive when K <= 12, sampled otherwise.
    """
    from . import codec

    k = spec.info_len
    if k <= 12:
        messages = product((0, 1), repeat=k)
    else:
        rng = np.random.default_rng(seed)
        messages = (rng.integers(0, 2, size=k) for _ in range(max_samples))
    info = list(spec.info_set)
    frozen = list(spec.frozen_set)
    for m in messages:
        msg = np.asarray(m, dtype=np.uint8)
        x = codec.encode_systematic(msg, spec)
        if not np.array_equal(x[info], msg):
            return False
        u = codec.encode_nonsystematic(x)
        if frozen and u[frozen].any():
            return False
    return True


def to_spec_text(spec):
    """Serialize a CodeSpec to the plain-text exchange format.

    Line 1: "N K".  Line 2: space-separated frozen indices, ascending
    (empty line when nothing is frozen).
    """
    indices = " ".join(str(i) for i in spec.frozen_set)
    return f"{spec.block_len} {spec.info_len}\n{indices}\n"


def parse_spec_text(text):
    """Parse the plain-text format produced by to_spec_text."""
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty code spec")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"first line must be 'N K', got {lines[0]!r}")
    n, k = int(head[0]), int(head[1])
    frozen = tuple(int(t) for t in lines[1].split()) if len(lines) > 1 else ()
    info = tuple(sorted(set(range(n)) - set(frozen)))
    return CodeSpec(n, k, frozen, info)
