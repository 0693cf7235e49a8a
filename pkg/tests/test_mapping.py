import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from hcss import (DivisibilityViolation, LengthMismatch, build_codebook,
                  empirical_pmf, map_symbols, pmf_1d, pmf_2d, pmf_4d,
                  pmf_for_dim, signal_entropy_b4d)
from hcss.codecs import hcss_encode_batch
from hcss.errors import DegenerateLength
from hcss.mapping import (FourDSymbolBlock, component_labels,
                          pmf_1d_from_components, pmf_2d_from_components,
                          pmf_4d_from_components, pmf_iid)
from hcss.ranking import build_lut


@pytest.fixture(scope="module")
def reference_tables(alphabet):
    """Single-composition shaper C={6,5,3,2}, L=16, p=1."""
    comps = [((6, 5, 3, 2), 1)]
    return (pmf_1d_from_components(comps, 0, 16, alphabet),
            pmf_2d_from_components(comps, 0, 16, alphabet),
            pmf_4d_from_components(comps, 0, 16, alphabet))


class TestMapSymbols:
    def test_1d_direct_lane_read(self):
        block = map_symbols([[1], [3], [5], [7]], [0, 0, 0, 0], dim=1)
        assert block.symbols.tolist() == [[1, 3, 5, 7]]
        assert block.mapping_dim == 1

    def test_4d_with_signs(self):
        block = map_symbols([[1, 3, 5, 7]], [0, 1, 0, 1], dim=4)
        assert block.symbols.tolist() == [[1, -3, 5, -7]]

    def test_2d_lane_order(self):
        block = map_symbols([[1, 3], [5, 7]], [0, 1, 1, 0], dim=2)
        assert block.symbols.tolist() == [[1, -3, -5, 7]]

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            map_symbols([[1, 3], [5]], [0, 0, 0, 0], dim=2)
        with pytest.raises(LengthMismatch):
            map_symbols([[1], [3], [5]], [0, 0, 0], dim=1)

    def test_divisibility(self):
        with pytest.raises(DivisibilityViolation):
            map_symbols([[1, 3, 5], [5, 7, 1]], [0] * 12, dim=2)
        with pytest.raises(DivisibilityViolation):
            map_symbols([[1, 3, 5]], [0] * 12, dim=4)


class TestReferencePmfValues:
    def test_high_peak_power_quadruple(self, reference_tables):
        pmf1, pmf2, pmf4 = reference_tables
        x1 = (7, 7, 7, 7)
        assert pmf1.symbol_prob(x1) == Fraction(1, 16) * Fraction(2, 16) ** 4
        assert float(pmf1.symbol_prob(x1)) == pytest.approx(0.000015, abs=5e-7)
        assert float(pmf2.symbol_prob(x1)) == pytest.approx(0.000004, abs=5e-7)
        assert pmf4.symbol_prob(x1) == 0

    def test_mixed_quadruple(self, reference_tables):
        pmf1, pmf2, pmf4 = reference_tables
        x2 = (1, 3, 5, 7)
        assert float(pmf1.symbol_prob(x2)) == pytest.approx(0.000172, abs=5e-7)
        assert float(pmf2.symbol_prob(x2)) == pytest.approx(0.000195, abs=5e-7)
        assert float(pmf4.symbol_prob(x2)) == pytest.approx(0.000258, abs=5e-7)


class TestPmfInvariants:
    @pytest.mark.parametrize("dim", [1, 2, 4])
    def test_normalization_exact(self, book_4_7, dim):
        assert pmf_for_dim(book_4_7, dim).total() == 1

    def test_signed_pmf_normalizes(self, book_4_7, alphabet):
        pmf = pmf_4d(book_4_7)
        total = sum(pmf.symbol_prob(x)
                    for x in product([-7, -5, -3, -1, 1, 3, 5, 7], repeat=4))
        assert total == 1

    def test_marginal_consistency_exact(self, alphabet):
        book = build_codebook(alphabet, 8, 14)
        p1 = pmf_1d(book)
        assert pmf_2d(book).marginal_1d().probs == p1.probs
        assert pmf_4d(book).marginal_1d().probs == p1.probs

    def test_entropy_ordering(self, alphabet):
        book = build_codebook(alphabet, 8, 14)
        h1 = pmf_1d(book).entropy_bits()
        h2 = pmf_2d(book).entropy_bits()
        h4 = pmf_4d(book).entropy_bits()
        assert h4 <= 2 * h2 + 1e-12 <= 4 * h1 + 1e-12
        assert signal_entropy_b4d(pmf_4d(book)) <= signal_entropy_b4d(pmf_2d(book)) + 1e-12

    def test_peak_probability_property(self, book_32_56, alphabet, reference_tables):
        # 4D mapping suppresses equal-amplitude (peak-power) quadruples
        p1, p4 = pmf_1d(book_32_56), pmf_4d(book_32_56)
        for a in alphabet.levels:
            assert p4.quadrant_prob_4d((a, a, a, a)) <= p1.quadrant_prob_4d((a, a, a, a))
        s1, _, s4 = reference_tables
        for a in alphabet.levels:
            assert s4.quadrant_prob_4d((a, a, a, a)) <= s1.quadrant_prob_4d((a, a, a, a))

    def test_no_negative_mass(self, book_32_56):
        for pmf in (pmf_2d(book_32_56), pmf_4d(book_32_56)):
            assert all(p >= 0 for p in pmf.probs.values())

    def test_degenerate_length(self, alphabet):
        book = build_codebook(alphabet, 2, 3)
        with pytest.raises(DegenerateLength):
            pmf_4d(book)

    def test_brute_force_ensemble_pmf(self, book_4_7, lut_4_7, alphabet):
        # mixture PMF equals the frequency over the full 128-word ensemble
        from hcss import hcss_encode
        counts = {}
        for w in range(128):
            seq = hcss_encode(book_4_7, lut_4_7, w).amplitudes
            for a in seq:
                counts[a] = counts.get(a, 0) + 1
        pmf = pmf_1d(book_4_7)
        for a in alphabet.levels:
            assert pmf.prob((a,)) == Fraction(counts.get(a, 0), 128 * 4)


class TestEmpiricalPmf:
    def test_point_mass(self):
        block = map_symbols([[1], [3], [5], [7]], [0, 0, 0, 0], dim=1)
        pmf = empirical_pmf([block], dim=4)
        assert pmf.prob((1, 3, 5, 7)) == 1

    def test_uniform_source_flat(self, alphabet):
        rng = np.random.default_rng(0)
        n = 10 ** 5
        seqs = [rng.choice(alphabet.levels, size=n) for _ in range(4)]
        block = map_symbols(seqs, rng.integers(0, 2, size=4 * n), dim=1)
        pmf = empirical_pmf([block], dim=1)
        for a in alphabet.levels:
            assert float(pmf.prob((a,))) == pytest.approx(0.25, abs=0.01)

    def test_tv_distance_to_analytic(self, alphabet):
        # 10^7 mapped 4D symbols from the shaper's composition ensemble:
        # compositions drawn per p_i, permutations uniform.  This is exactly
        # the ensemble the analytic tables describe; the codec's
        # lexicographic-first-half subset is checked separately below.
        book = build_codebook(alphabet, 16, 28)
        n_sym = 10 ** 7
        n_words = n_sym * 4 // book.L
        rng = np.random.default_rng(123)
        probs = np.asarray([float(e.probability) for e in book.entries])
        probs /= probs.sum()
        idx = rng.choice(len(book.entries), size=n_words, p=probs)
        multisets = np.asarray([
            sum(([a] * c for a, c in zip(alphabet.levels, e.composition.counts)), [])
            for e in book.entries
        ], dtype=np.int64)
        amps = rng.permuted(multisets[idx], axis=1).reshape(-1)
        block = map_symbols([amps], np.zeros(amps.size, dtype=np.int64), dim=4)
        emp = empirical_pmf([block], dim=4, alphabet=alphabet)
        ana = pmf_4d(book)
        keys = set(emp.probs) | set(ana.probs)
        tv = 0.5 * sum(abs(float(emp.prob(key)) - float(ana.prob(key)))
                       for key in keys)
        assert tv < 5e-3

    def test_codec_output_marginal_is_exact(self, alphabet):
        # the encoder's dyadic subset keeps the aggregate per-level counts of
        # every composition, so its 1D marginal matches the analytic table
        # exactly; consecutive-position joints carry a small subset bias
        book = build_codebook(alphabet, 16, 28)
        lut = build_lut(book)
        rng = np.random.default_rng(7)
        words = rng.integers(0, 1 << book.k, size=200_000, dtype=np.int64)
        amps = hcss_encode_batch(book, lut, words).reshape(-1)
        block = map_symbols([amps], np.zeros(amps.size, dtype=np.int64), dim=4)
        emp = empirical_pmf([block], dim=1, alphabet=alphabet)
        ana = pmf_1d(book)
        n = amps.size
        for a in alphabet.levels:
            p = float(ana.prob((a,)))
            bound = 4 * math.sqrt(p * (1 - p) / n)
            assert abs(float(emp.prob((a,))) - p) < bound


class TestLabels:
    def test_gray_adjacency(self):
        labels = component_labels()
        seq = [labels[(a, +1)][1:] for a in (1, 3, 5, 7)]
        for g1, g2 in zip(seq, seq[1:]):
            assert sum(b1 != b2 for b1, b2 in zip(g1, g2)) == 1

    def test_sign_bit(self):
        labels = component_labels()
        for a in (1, 3, 5, 7):
            assert labels[(a, +1)][0] == 0
            assert labels[(a, -1)][0] == 1
            assert labels[(a, +1)][1:] == labels[(a, -1)][1:]


class TestPmfIid:
    def test_uniform_product(self, alphabet):
        pmf = pmf_iid([0.25] * 4, alphabet.levels, alphabet, dim=2)
        assert pmf.total() == 1
        assert pmf.prob((1, 7)) == Fraction(1, 16)

    def test_entropy_matches(self, alphabet):
        from hcss import fit_mb
        dist = fit_mb(1.75, alphabet.levels)
        pmf = pmf_iid(dist.probabilities, dist.support, alphabet, dim=1)
        assert pmf.entropy_bits() == pytest.approx(1.75, abs=1e-6)
        assert math.isclose(signal_entropy_b4d(pmf), 4 + 4 * 1.75, rel_tol=1e-6)
