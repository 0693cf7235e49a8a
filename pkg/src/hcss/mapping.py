"""Amplitude-to-symbol mapping for DP-64QAM and exact PMF analytics.

A 4D symbol is (XI, XQ, YI, YQ) with each component sign*amplitude.  The 1D
strategy feeds one quadrature per shaped sequence; 2D maps amplitude pairs of
two sequences onto the X and Y polarizations; 4D maps amplitude quadruples of
a single sequence onto all four quadratures.

PMFs are kept as exact rationals: mixture weights are dyadic and the
without-replacement draw probabilities are ratios of small integers, so every
table value has denominator 2^k * L*(L-1)*... and equality tests are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import log2

import numpy as np

from .alphabet import AmplitudeAlphabet
from .codebook import ShaperCodebook
from .errors import DegenerateLength, DivisibilityViolation, LengthMismatch

# Per-component bit labels: bit 1 is the sign (0 -> +), bits 2-3 the
# binary-reflected Gray label of the amplitude ordered 1,3,5,7 -> 00,01,11,10.
GRAY_AMPLITUDE_LABELS = {1: (0, 0), 3: (0, 1), 5: (1, 1), 7: (1, 0)}


@dataclass(frozen=True)
class FourDSymbolBlock:
    symbols: np.ndarray       # (n, 4) signed odd integers
    mapping_dim: int          # 1 | 2 | 4

    def __post_init__(self):
        assert self.symbols.ndim == 2 and self.symbols.shape[1] == 4


@dataclass(frozen=True)
class PmfTable:
    """Exact D-dimensional amplitude PMF (quadrant PMF, signs excluded)."""

    dim: int
    alphabet: AmplitudeAlphabet
    probs: dict[tuple[int, ...], Fraction]

    def total(self) -> Fraction:
        return sum(self.probs.values(), Fraction(0))

    def prob(self, amps: tuple[int, ...]) -> Fraction:
        return self.probs.get(tuple(amps), Fraction(0))

    def quadrant_prob_4d(self, a4) -> Fraction:
        """P_{A^4} of a 4D amplitude vector under this table's mapping."""
        a4 = tuple(a4)
        if self.dim == 1:
            p = Fraction(1)
            for a in a4:
                p *= self.prob((a,))
            return p
        if self.dim == 2:
            return self.prob(a4[:2]) * self.prob(a4[2:])
        return self.prob(a4)

    def symbol_prob(self, x4) -> Fraction:
        """P_X of a signed 4D symbol: uniform signs times the quadrant PMF."""
        return Fraction(1, 16) * self.quadrant_prob_4d(tuple(abs(v) for v in x4))

    def entropy_bits(self) -> float:
        h = 0.0
        for p in self.probs.values():
            if p:
                h -= float(p) * log2(float(p))
        return h

    def marginal_1d(self) -> "PmfTable":
        """Exact marginal over the first coordinate."""
        out: dict[tuple[int, ...], Fraction] = {}
        for key, p in self.probs.items():
            out[(key[0],)] = out.get((key[0],), Fraction(0)) + p
        return PmfTable(dim=1, alphabet=self.alphabet, probs=out)

    def average_energy(self) -> Fraction:
        """Average energy per amplitude (exact)."""
        e = Fraction(0)
        for key, p in self.probs.items():
            e += p * sum(a * a for a in key)
        return e / self.dim


def signal_entropy_b4d(pmf: PmfTable) -> float:
    """Entropy of the signed 4D signal X in b/4D: 4 sign bits plus the
    amplitude entropy scaled to four dimensions."""
    return 4.0 + (4.0 / pmf.dim) * pmf.entropy_bits()


# ---------------------------------------------------------------------------
# Analytic PMFs
# ---------------------------------------------------------------------------


def _components(codebook: ShaperCodebook):
    return [(e.composition.counts, e.n_seq) for e in codebook.entries], codebook.k


def pmf_1d_from_components(components, weight_log2_den: int, L: int,
                           alphabet: AmplitudeAlphabet) -> PmfTable:
    num = [0] * alphabet.size
    for counts, n_seq in components:
        for a, c in enumerate(counts):
            if c:
                num[a] += c * n_seq
    den = (1 << weight_log2_den) * L
    probs = {(alphabet.levels[a],): Fraction(num[a], den) for a in range(alphabet.size)}
    return PmfTable(dim=1, alphabet=alphabet, probs=probs)


def pmf_2d_from_components(components, weight_log2_den: int, L: int,
                           alphabet: AmplitudeAlphabet) -> PmfTable:
    if L < 2:
        raise DegenerateLength("2D mapping needs L >= 2")
    m = alphabet.size
    num = {key: 0 for key in product(range(m), repeat=2)}
    for counts, n_seq in components:
        for k1 in range(m):
            c1 = counts[k1]
            if not c1:
                continue
            for k2 in range(m):
                t = c1 * (counts[k2] - (1 if k1 == k2 else 0))
                if t > 0:
                    num[(k1, k2)] += t * n_seq
    den = (1 << weight_log2_den) * L * (L - 1)
    probs = {
        (alphabet.levels[k1], alphabet.levels[k2]): Fraction(v, den)
        for (k1, k2), v in num.items()
    }
    return PmfTable(dim=2, alphabet=alphabet, probs=probs)


def pmf_4d_from_components(components, weight_log2_den: int, L: int,
                           alphabet: AmplitudeAlphabet) -> PmfTable:
    if L < 4:
        raise DegenerateLength("4D mapping needs L >= 4")
    m = alphabet.size
    keys = list(product(range(m), repeat=4))
    num = {key: 0 for key in keys}
    for counts, n_seq in components:
        shift = n_seq.bit_length() - 1  # n_seq is a power of two
        for key in keys:
            # draws without replacement: c_k reduced by prior picks of the
            # same level (the delta_l indicator sums of the derivation)
            used = [0] * m
            t = 1
            for kl in key:
                t *= counts[kl] - used[kl]
                if t <= 0:
                    t = 0
                    break
                used[kl] += 1
            if t:
                num[key] += t << shift
    den = (1 << weight_log2_den) * L * (L - 1) * (L - 2) * (L - 3)
    probs = {
        tuple(alphabet.levels[k] for k in key): Fraction(v, den)
        for key, v in num.items()
    }
    return PmfTable(dim=4, alphabet=alphabet, probs=probs)


def pmf_1d(codebook: ShaperCodebook) -> PmfTable:
    comps, k = _components(codebook)
    return pmf_1d_from_components(comps, k, codebook.L, codebook.alphabet)


def pmf_2d(codebook: ShaperCodebook) -> PmfTable:
    comps, k = _components(codebook)
    return pmf_2d_from_components(comps, k, codebook.L, codebook.alphabet)


def pmf_4d(codebook: ShaperCodebook) -> PmfTable:
    comps, k = _components(codebook)
    return pmf_4d_from_components(comps, k, codebook.L, codebook.alphabet)


def pmf_for_dim(codebook: ShaperCodebook, dim: int) -> PmfTable:
    if dim == 1:
        return pmf_1d(codebook)
    if dim == 2:
        return pmf_2d(codebook)
    if dim == 4:
        return pmf_4d(codebook)
    raise ValueError(f"mapping dimension must be 1, 2 or 4, got {dim}")


def pmf_iid(probabilities, support, alphabet: AmplitudeAlphabet, dim: int = 1) -> PmfTable:
    """D-dimensional product PMF of an i.i.d. amplitude source (MB or uniform)."""
    base = {a: Fraction(p).limit_denominator(10**15)
            for a, p in zip(support, probabilities)}
    # renormalize the rational approximation exactly
    tot = sum(base.values(), Fraction(0))
    base = {a: p / tot for a, p in base.items()}
    probs: dict[tuple[int, ...], Fraction] = {}
    for key in product(sorted(base), repeat=dim):
        p = Fraction(1)
        for a in key:
            p *= base[a]
        probs[key] = p
    return PmfTable(dim=dim, alphabet=alphabet, probs=probs)


# ---------------------------------------------------------------------------
# Symbol mapping
# ---------------------------------------------------------------------------


def _as_array(seq) -> np.ndarray:
    if hasattr(seq, "amplitudes"):
        return np.asarray(seq.amplitudes, dtype=np.int64)
    return np.asarray(seq, dtype=np.int64)


def map_symbols(seqs, signs, dim: int) -> FourDSymbolBlock:
    """Interleave shaped amplitude sequences into signed 4D symbols.

    signs supplies one bit per component in (XI, XQ, YI, YQ) symbol order;
    bit 0 maps to +, bit 1 to -.
    """
    arrays = [_as_array(s) for s in seqs]
    lengths = {len(a) for a in arrays}
    if len(lengths) != 1:
        raise LengthMismatch(f"sequence lengths differ: {sorted(lengths)}")
    L = lengths.pop()
    if dim == 1:
        if len(arrays) != 4:
            raise LengthMismatch("1D mapping needs 4 sequences")
        quad = np.stack(arrays, axis=1)
    elif dim == 2:
        if len(arrays) != 2:
            raise LengthMismatch("2D mapping needs 2 sequences")
        if L % 2:
            raise DivisibilityViolation("2D mapping needs even L")
        quad = np.concatenate(
            [arrays[0].reshape(-1, 2), arrays[1].reshape(-1, 2)], axis=1
        )
    elif dim == 4:
        if len(arrays) != 1:
            raise LengthMismatch("4D mapping needs 1 sequence")
        if L % 4:
            raise DivisibilityViolation("4D mapping needs L divisible by 4")
        quad = arrays[0].reshape(-1, 4)
    else:
        raise ValueError(f"mapping dimension must be 1, 2 or 4, got {dim}")
    sign_bits = np.asarray(signs, dtype=np.int64).reshape(quad.shape)
    return FourDSymbolBlock(symbols=quad * (1 - 2 * sign_bits), mapping_dim=dim)


def empirical_pmf(blocks, dim: int, alphabet: AmplitudeAlphabet | None = None) -> PmfTable:
    """Frequency table of observed D-dimensional amplitude vectors."""
    groups = [np.abs(block.symbols).reshape(-1, dim) for block in blocks]
    if not groups:
        raise ValueError("no blocks given")
    amps = np.concatenate(groups, axis=0)
    if alphabet is None:
        alphabet = AmplitudeAlphabet()
    keys, counts = np.unique(amps, axis=0, return_counts=True)
    total = int(counts.sum())
    probs = {
        tuple(int(v) for v in key): Fraction(int(c), total)
        for key, c in zip(keys, counts)
    }
    return PmfTable(dim=dim, alphabet=alphabet, probs=probs)


def component_labels(levels=(1, 3, 5, 7)):
    """(level, sign) -> 3-bit label used by the soft demapper."""
    table = {}
    for a in levels:
        g = GRAY_AMPLITUDE_LABELS[a]
        table[(a, +1)] = (0,) + g
        table[(a, -1)] = (1,) + g
    return table
