import math
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcss import (AmplitudeAlphabet, Composition, enumerate_compositions,
                  multinomial, sequences_for)
from oracles import all_sequences_sorted, count_vector, exact_multinomial


class TestAmplitudeAlphabet:
    def test_default(self, alphabet):
        assert alphabet.levels == (1, 3, 5, 7)
        assert alphabet.energies == (1, 9, 25, 49)
        assert alphabet.size == 4
        assert alphabet.index_of(5) == 2

    @pytest.mark.parametrize("levels", [(1,), (1, 2), (3, 1), (-1, 3), (1, 1)])
    def test_rejects_bad_levels(self, levels):
        with pytest.raises(ValueError):
            AmplitudeAlphabet(levels)


class TestComposition:
    def test_length_and_energy(self, alphabet):
        c = Composition((6, 5, 3, 2))
        assert c.length == 16
        assert c.energy(alphabet) == 6 * 1 + 5 * 9 + 3 * 25 + 2 * 49 == 224

    def test_rejects_invalid(self):
        with pytest.raises(ValueError):
            Composition((1, -1, 0, 0))
        with pytest.raises(ValueError):
            Composition((0, 0, 0, 0))


class TestEnumerateCompositions:
    def test_two_level_l1(self):
        two = AmplitudeAlphabet((1, 3))
        comps = enumerate_compositions(two, 1)
        assert [c.counts for c in comps] == [(1, 0), (0, 1)]
        assert [c.energy(two) for c in comps] == [1, 9]

    def test_l2_count_and_head(self, alphabet):
        comps = enumerate_compositions(alphabet, 2)
        assert len(comps) == 10
        assert comps[0].counts == (2, 0, 0, 0)
        assert comps[0].energy(alphabet) == 2

    def test_l16_contains_reference_composition(self, alphabet):
        comps = enumerate_compositions(alphabet, 16)
        assert Composition((6, 5, 3, 2)) in comps

    def test_sorted_and_unique(self, alphabet):
        comps = enumerate_compositions(alphabet, 5)
        keys = [(c.energy(alphabet), c.counts) for c in comps]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_rejects_nonpositive_length(self, alphabet):
        with pytest.raises(ValueError):
            enumerate_compositions(alphabet, 0)

    def test_permutation_free_cover(self, alphabet):
        # every length-L sequence realizes exactly one listed composition
        for L in range(1, 7):
            listed = {c.counts for c in enumerate_compositions(alphabet, L)}
            realized = {count_vector(alphabet.levels, s)
                        for s in all_sequences_sorted(alphabet.levels, L)}
            assert listed == realized


class TestMultinomial:
    def test_single_level(self):
        assert multinomial(Composition((9, 0, 0, 0))) == 1

    def test_two_orderings(self):
        assert multinomial(Composition((1, 1, 0, 0))) == 2

    def test_reference_composition(self):
        assert multinomial(Composition((6, 5, 3, 2))) == 20_180_160

    def test_exhaustive_permutation_count(self):
        bag = (1,) * 2 + (3,) * 1 + (7,) * 2
        assert multinomial(Composition((2, 1, 0, 2))) == len(set(permutations(bag)))

    def test_partition_identity(self, alphabet):
        for L in range(1, 11):
            total = sum(multinomial(c) for c in enumerate_compositions(alphabet, L))
            assert total == alphabet.size ** L

    @given(st.lists(st.integers(0, 12), min_size=4, max_size=4)
           .filter(lambda c: sum(c) > 0))
    @settings(max_examples=60, deadline=None)
    def test_exact_division(self, counts):
        comp = Composition(tuple(counts))
        m = multinomial(comp)
        prod = math.prod(math.factorial(c) for c in counts)
        assert m * prod == math.factorial(sum(counts))


class TestSequencesFor:
    def test_single_level(self):
        assert sequences_for(Composition((5, 0, 0, 0))) == 1

    def test_reference_composition(self):
        assert sequences_for(Composition((6, 5, 3, 2))) == 2 ** 24

    def test_all_distinct(self):
        assert multinomial(Composition((1, 1, 1, 1))) == 24
        assert sequences_for(Composition((1, 1, 1, 1))) == 16

    def test_dyadic_sandwich(self, alphabet):
        for L in range(1, 9):
            for comp in enumerate_compositions(alphabet, L):
                n_perm = multinomial(comp)
                n_seq = sequences_for(comp)
                assert 1 <= n_seq <= n_perm < 2 * n_seq
