"""Amplitude sources: HCSS codec, Maxwell-Boltzmann sampler, uniform baseline."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codebook import ShaperCodebook
from .errors import FramingError, RankOutOfRange, TargetInfeasible
from .ranking import AmplitudeSequence, RankLut, rank, rank_batch, unrank, unrank_batch

# ---------------------------------------------------------------------------
# HCSS encoder / decoder
# ---------------------------------------------------------------------------


def hcss_encode(codebook: ShaperCodebook, lut: RankLut, bits) -> AmplitudeSequence:
    """Map one k-bit word (bit string or int) to a shaped amplitude sequence."""
    if isinstance(bits, str):
        if len(bits) != codebook.k:
            raise ValueError(f"expected exactly {codebook.k} bits")
        word = int(bits, 2)
    else:
        word = int(bits)
    entry, r = codebook.word_to_entry(word)
    return unrank(entry, r, lut)


def hcss_decode(codebook: ShaperCodebook, lut: RankLut, seq: AmplitudeSequence) -> str:
    """Recover the k-bit word of a shaped sequence (inverse of hcss_encode)."""
    r = rank(seq, lut)
    idx = {a: i for i, a in enumerate(codebook.alphabet.levels)}
    counts = [0] * codebook.alphabet.size
    for a in seq.amplitudes:
        counts[idx[a]] += 1
    entry = codebook.entry_for_composition(tuple(counts))
    if r >= entry.n_seq:
        raise RankOutOfRange(f"sequence rank {r} >= n_seq {entry.n_seq}")
    return format(codebook.entry_to_word(entry, r), f"0{codebook.k}b")


def hcss_encode_batch(codebook: ShaperCodebook, lut: RankLut, words: np.ndarray) -> np.ndarray:
    """Vectorized encode of many k-bit words (int64).  Requires k <= 62."""
    if codebook.k > 62:
        raise OverflowError("batch path needs k <= 62")
    bounds, order = codebook._parse_table
    bounds_arr = np.asarray(bounds, dtype=np.int64)
    words = np.asarray(words, dtype=np.int64)
    pos = np.searchsorted(bounds_arr, words, side="right") - 1
    entry_idx = np.asarray(order, dtype=np.int64)[pos]
    ranks = words - bounds_arr[pos]
    counts_per_entry = np.asarray(
        [e.composition.counts for e in codebook.entries], dtype=np.int64
    )
    return unrank_batch(counts_per_entry[entry_idx], ranks, lut)


def hcss_decode_batch(codebook: ShaperCodebook, lut: RankLut, seqs: np.ndarray) -> np.ndarray:
    """Vectorized decode; inverse of hcss_encode_batch."""
    if codebook.k > 62:
        raise OverflowError("batch path needs k <= 62")
    ranks = rank_batch(seqs, lut)
    levels = np.asarray(codebook.alphabet.levels, dtype=np.int64)
    idx = np.searchsorted(levels, np.asarray(seqs, dtype=np.int64))
    counts = np.stack([(idx == a).sum(axis=1) for a in range(codebook.alphabet.size)], axis=1)
    lj_by_comp = {}
    for e in codebook.entries:
        lj_by_comp[e.composition.counts] = codebook.entry_to_word(e, 0)
    lj = np.asarray([lj_by_comp[tuple(c)] for c in counts], dtype=np.int64)
    return lj + ranks


# ---------------------------------------------------------------------------
# File framing: the binary input is consumed k bits at a time, big-endian
# within each word; each output amplitude is one byte holding its level.
# ---------------------------------------------------------------------------


def encode_file_bytes(codebook: ShaperCodebook, lut: RankLut, data: bytes) -> bytes:
    nbits = 8 * len(data)
    if nbits % codebook.k:
        raise FramingError(f"{nbits} input bits do not tile into {codebook.k}-bit words")
    big = int.from_bytes(data, "big")
    n_words = nbits // codebook.k
    out = bytearray()
    mask = (1 << codebook.k) - 1
    for w in range(n_words):
        shift = (n_words - 1 - w) * codebook.k
        seq = hcss_encode(codebook, lut, (big >> shift) & mask)
        out.extend(seq.amplitudes)
    return bytes(out)


def decode_file_bytes(codebook: ShaperCodebook, lut: RankLut, amps: bytes) -> bytes:
    if len(amps) % codebook.L:
        raise FramingError(f"{len(amps)} amplitudes do not tile into length-{codebook.L} blocks")
    n_words = len(amps) // codebook.L
    big = 0
    for w in range(n_words):
        block = tuple(amps[w * codebook.L : (w + 1) * codebook.L])
        bits = hcss_decode(codebook, lut, AmplitudeSequence(block))
        big = (big << codebook.k) | int(bits, 2)
    nbits = n_words * codebook.k
    if nbits % 8:
        raise FramingError(f"{nbits} decoded bits do not tile into bytes")
    return big.to_bytes(nbits // 8, "big")


# ---------------------------------------------------------------------------
# Maxwell-Boltzmann distribution
# ---------------------------------------------------------------------------

_ENTROPY_TOL = 1e-9


@dataclass(frozen=True)
class MbDistribution:
    """P(a) proportional to exp(-lambda a^2) on a finite odd-amplitude support."""

    lam: float
    support: tuple[int, ...]
    probabilities: tuple[float, ...]
    entropy_bits: float

    def average_energy(self) -> float:
        return sum(p * a * a for p, a in zip(self.probabilities, self.support))


def _mb_probs(lam: float, support) -> np.ndarray:
    w = np.exp(-lam * np.asarray(support, dtype=float) ** 2)
    return w / w.sum()


def _entropy_bits(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


def fit_mb(target_entropy: float, support) -> MbDistribution:
    """Bisection on lambda; entropy is strictly decreasing in lambda."""
    support = tuple(support)
    if not 0 < target_entropy <= math.log2(len(support)):
        raise TargetInfeasible(
            f"entropy {target_entropy} outside (0, {math.log2(len(support)):.6f}]"
        )
    lo, hi = 0.0, 1.0
    while _entropy_bits(_mb_probs(hi, support)) > target_entropy:
        hi *= 2
        if hi > 1e9:
            raise TargetInfeasible("lambda search diverged")
    lam = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        h = _entropy_bits(_mb_probs(mid, support))
        if h > target_entropy:
            lo = mid
        else:
            hi = mid
        lam = mid
        if abs(h - target_entropy) < _ENTROPY_TOL:
            break
    p = _mb_probs(lam, support)
    return MbDistribution(
        lam=lam,
        support=support,
        probabilities=tuple(p.tolist()),
        entropy_bits=_entropy_bits(p),
    )


def fit_mb_unconstrained(target_entropy: float, tail_tol: float = 1e-12) -> MbDistribution:
    """MB distribution over odd integers with support extended until the tail
    probability falls below tail_tol."""
    n = 8
    while True:
        support = tuple(range(1, 2 * n, 2))
        dist = fit_mb(target_entropy, support)
        if dist.probabilities[-1] < tail_tol:
            return dist
        n *= 2
        if n > 4096:  # pragma: no cover - entropy targets here are small
            raise TargetInfeasible("unconstrained MB support did not converge")


def sample_mb(dist: MbDistribution, n: int, rng_seed) -> np.ndarray:
    rng = np.random.default_rng(rng_seed)
    return rng.choice(np.asarray(dist.support), size=n, p=np.asarray(dist.probabilities))


def sample_uniform(alphabet, n: int, rng_seed) -> np.ndarray:
    rng = np.random.default_rng(rng_seed)
    return rng.choice(np.asarray(alphabet.levels), size=n)
