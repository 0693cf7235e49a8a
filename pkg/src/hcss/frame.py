"""PAS frame assembly: shaped amplitude lanes plus uniform sign bits.

FEC is a pass-through stub: the amplitude bits are carried systematically
and the sign bits come from a uniform source standing in for parity.  The
receive side presumes error-free amplitudes, so disassembly is exact.
"""

from __future__ import annotations

import numpy as np

from .codebook import ShaperCodebook
from .codecs import hcss_decode, hcss_encode
from .errors import FrameCorrupt, FramingError, HcssError
from .mapping import FourDSymbolBlock, map_symbols
from .ranking import AmplitudeSequence, RankLut


def _lanes_for(dim: int) -> int:
    return {1: 4, 2: 2, 4: 1}[dim]


def pas_assemble(info_bits: str, codebook: ShaperCodebook, lut: RankLut,
                 dim: int, sign_source) -> FourDSymbolBlock:
    """Map info bits to signed 4D symbols.

    Consecutive k-bit words are dealt round-robin across the lanes of the
    chosen mapping dimensionality; sign bits are drawn from sign_source
    (a numpy Generator, standing in for FEC parity).
    """
    lanes = _lanes_for(dim)
    k = codebook.k
    if len(info_bits) % (k * lanes):
        raise FramingError(
            f"{len(info_bits)} info bits do not tile into {lanes} lanes of {k}-bit words"
        )
    words = [info_bits[i * k:(i + 1) * k] for i in range(len(info_bits) // k)]
    lane_amps = [[] for _ in range(lanes)]
    for i, w in enumerate(words):
        lane_amps[i % lanes].extend(hcss_encode(codebook, lut, w).amplitudes)
    n_sym = (len(words) // lanes) * codebook.L // dim
    signs = sign_source.integers(0, 2, size=4 * n_sym)
    return map_symbols([np.asarray(a) for a in lane_amps], signs, dim)


def pas_disassemble(block: FourDSymbolBlock, codebook: ShaperCodebook,
                    lut: RankLut, dim: int) -> str:
    """Strip signs, re-segment lanes and decode every shaping word."""
    lanes = _lanes_for(dim)
    amps = np.abs(block.symbols)
    if dim == 1:
        lane_seqs = [amps[:, j] for j in range(4)]
    elif dim == 2:
        lane_seqs = [amps[:, :2].reshape(-1), amps[:, 2:].reshape(-1)]
    else:
        lane_seqs = [amps.reshape(-1)]
    L = codebook.L
    n_words_per_lane = len(lane_seqs[0]) // L
    if any(len(s) % L for s in lane_seqs):
        raise FramingError("lane length is not a whole number of shaping blocks")
    lane_words = []
    for seq in lane_seqs:
        words = []
        for w in range(n_words_per_lane):
            chunk = tuple(int(a) for a in seq[w * L:(w + 1) * L])
            try:
                words.append(hcss_decode(codebook, lut, AmplitudeSequence(chunk)))
            except HcssError as exc:
                raise FrameCorrupt(f"block outside the shaping sphere: {exc}") from exc
        lane_words.append(words)
    out = []
    for w in range(n_words_per_lane):
        for lane in lane_words:
            out.append(lane[w])
    return "".join(out)
