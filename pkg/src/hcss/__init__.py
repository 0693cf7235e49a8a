"""Huffman-coded sphere shaping for DP-64QAM.

Library layout:

- alphabet:  amplitude alphabet, compositions, exact multinomial counting
- codebook:  dyadic composition set + canonical prefix code construction
- ranking:   LUT-based lexicographic multiset ranking/unranking
- codecs:    HCSS encoder/decoder, Maxwell-Boltzmann and uniform sources
- mapping:   1D/2D/4D amplitude-to-symbol mapping and exact PMF analytics
- metrics:   rate loss, power penalty, effective SNR, LLRs, AIR, nGMI
- awgn:      AWGN Monte-Carlo sweep harness
- gnfit:     GN-model launch-power-sweep fitting
- frame:     PAS frame assembly/disassembly
- cli:       operator command line (`hcss`)
"""

from .alphabet import (AmplitudeAlphabet, Composition, enumerate_compositions,
                       multinomial, sequences_for)
from .codebook import (CodebookEntry, ShaperCodebook, build_codebook,
                       load_codebook, parse_prefix, save_codebook)
from .codecs import (MbDistribution, fit_mb, fit_mb_unconstrained, hcss_decode,
                     hcss_encode, sample_mb, sample_uniform)
from .errors import (ConfigInvalid, DegenerateLength, DivisibilityViolation,
                     FrameCorrupt, FramingError, HcssError, InsufficientData,
                     LengthMismatch, NonConvergence, RankOutOfRange,
                     RateInfeasible, SchemaMismatch, TargetInfeasible,
                     UnknownComposition)
from .gnfit import BtbPoint, GnFit, SweepRecord, fit_air, fit_snr, initial_guess, optimal_power
from .mapping import (FourDSymbolBlock, PmfTable, empirical_pmf, map_symbols,
                      pmf_1d, pmf_2d, pmf_4d, pmf_for_dim, signal_entropy_b4d)
from .metrics import (MetricReport, air_bmd, adjust_centroids, build_demapper,
                      effective_snr, llr, net_rate_gbps, ngmi, power_penalty_db,
                      predict_post_fec, rate_loss)
from .awgn import SimConfig, osnr_to_snr, run_awgn_sweep, snr_to_osnr
from .frame import pas_assemble, pas_disassemble
from .ranking import (AmplitudeSequence, RankLut, build_lut, rank, unrank)

__version__ = "0.1.0"
