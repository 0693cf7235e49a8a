"""Offline construction of the dyadic composition set and its prefix code.

The shaper addresses 2^k binary words.  Compositions are consumed in energy
order; each contributes a power-of-two number of sequences, so every
composition probability is dyadic and a canonical Huffman code over those
probabilities gives an exact, complete prefix code (Kraft equality).
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .alphabet import AmplitudeAlphabet, Composition, enumerate_compositions, multinomial
from .errors import RateInfeasible

_FORMAT_VERSION = 1


@dataclass(frozen=True)
class CodebookEntry:
    composition: Composition
    n_seq: int                # power of two, <= multinomial(composition)
    payload_bits: int         # log2(n_seq)
    prefix: str               # '0'/'1' string, len == k - payload_bits
    probability: Fraction     # n_seq / 2^k

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)


@dataclass(frozen=True)
class ShaperCodebook:
    alphabet: AmplitudeAlphabet
    L: int
    k: int
    entries: tuple[CodebookEntry, ...]   # energy ascending

    @property
    def shaping_rate(self) -> Fraction:
        """Shaping rate k/L in bits per amplitude."""
        return Fraction(self.k, self.L)

    @cached_property
    def _parse_table(self):
        # Left-justified code values: prefix padded with payload zeros to k
        # bits.  Canonical codewords left-justified are strictly increasing
        # and their [lj, lj + n_seq) intervals partition [0, 2^k), so prefix
        # parsing is an interval lookup.
        lj = []
        for i, e in enumerate(self.entries):
            lj.append((int(e.prefix, 2) << e.payload_bits if e.prefix else 0, i))
        lj.sort()
        return [v for v, _ in lj], [i for _, i in lj]

    def word_to_entry(self, word: int) -> tuple[CodebookEntry, int]:
        """Split a k-bit word into (entry, payload rank)."""
        if not 0 <= word < (1 << self.k):
            raise ValueError("word outside [0, 2^k)")
        bounds, order = self._parse_table
        pos = bisect_right(bounds, word) - 1
        entry = self.entries[order[pos]]
        rank = word - bounds[pos]
        assert rank < entry.n_seq
        return entry, rank

    def entry_to_word(self, entry: CodebookEntry, rank: int) -> int:
        lj = int(entry.prefix, 2) << entry.payload_bits if entry.prefix else 0
        return lj + rank

    def entry_for_composition(self, counts: tuple[int, ...]) -> CodebookEntry | None:
        return self._comp_index.get(counts)

    @cached_property
    def _comp_index(self):
        return {e.composition.counts: e for e in self.entries}


def _greedy_fill(alphabet: AmplitudeAlphabet, L: int, k: int):
    """Energy-ascending dyadic fill of the 2^k word budget."""
    budget = 1 << k
    selected = []
    for comp in enumerate_compositions(alphabet, L):
        if budget == 0:
            break
        n_perm = multinomial(comp)
        cap = 1 << (n_perm.bit_length() - 1)
        take = min(cap, 1 << (budget.bit_length() - 1))
        selected.append((comp, take))
        budget -= take
    if budget != 0:
        raise RateInfeasible(
            f"dyadic fill exhausted all compositions with budget remaining (L={L}, k={k})"
        )
    return selected


def _canonical_codes(lengths: list[int]) -> list[str]:
    """Canonical prefix code for the given codeword lengths.

    Codewords are assigned in (length asc, position asc) order; Kraft
    equality of the dyadic distribution guarantees the construction fits
    exactly.
    """
    order = sorted(range(len(lengths)), key=lambda i: (lengths[i], i))
    codes = [""] * len(lengths)
    code = 0
    prev_len = lengths[order[0]] if order else 0
    for j, i in enumerate(order):
        if j > 0:
            code = (code + 1) << (lengths[i] - prev_len)
        prev_len = lengths[i]
        codes[i] = format(code, f"0{lengths[i]}b") if lengths[i] else ""
    return codes


def build_codebook(alphabet: AmplitudeAlphabet, L: int, k: int) -> ShaperCodebook:
    """Build the HCSS codebook for a target (L, k).

    Raises RateInfeasible when 2^k binary words cannot be covered by the
    dyadic composition counts of length-L sequences.
    """
    if L < 1 or k < 1:
        raise ValueError("L and k must be positive")
    if (1 << k) > alphabet.size ** L:
        raise RateInfeasible(f"2^{k} words exceed {alphabet.size}^{L} sequences")
    selected = _greedy_fill(alphabet, L, k)
    lengths = [k - n.bit_length() + 1 for _, n in selected]
    codes = _canonical_codes(lengths)
    entries = tuple(
        CodebookEntry(
            composition=comp,
            n_seq=n_seq,
            payload_bits=n_seq.bit_length() - 1,
            prefix=code,
            probability=Fraction(n_seq, 1 << k),
        )
        for (comp, n_seq), code in zip(selected, codes)
    )
    assert sum(e.n_seq for e in entries) == 1 << k
    return ShaperCodebook(alphabet=alphabet, L=L, k=k, entries=entries)


def parse_prefix(codebook: ShaperCodebook, bits: str) -> tuple[CodebookEntry, str]:
    """Consume exactly k bits from a bit string; return (entry, payload bits)."""
    if len(bits) < codebook.k:
        raise ValueError(f"need at least {codebook.k} bits")
    word = int(bits[: codebook.k], 2)
    entry, rank = codebook.word_to_entry(word)
    payload = format(rank, f"0{entry.payload_bits}b") if entry.payload_bits else ""
    return entry, payload


def save_codebook(codebook: ShaperCodebook, path) -> None:
    doc = {
        "format_version": _FORMAT_VERSION,
        "alphabet": list(codebook.alphabet.levels),
        "L": codebook.L,
        "k": codebook.k,
        "entries": [
            {"counts": list(e.composition.counts), "n_seq": e.n_seq, "prefix": e.prefix}
            for e in codebook.entries
        ],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def load_codebook(path) -> ShaperCodebook:
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    if doc.get("format_version") != _FORMAT_VERSION:
        raise ValueError(f"unsupported codebook format: {doc.get('format_version')}")
    alphabet = AmplitudeAlphabet(tuple(doc["alphabet"]))
    k = doc["k"]
    entries = tuple(
        CodebookEntry(
            composition=Composition(tuple(e["counts"])),
            n_seq=e["n_seq"],
            payload_bits=e["n_seq"].bit_length() - 1,
            prefix=e["prefix"],
            probability=Fraction(e["n_seq"], 1 << k),
        )
        for e in doc["entries"]
    )
    return ShaperCodebook(alphabet=alphabet, L=doc["L"], k=k, entries=entries)
