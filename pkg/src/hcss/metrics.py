"""Information-theoretic and power metrics.

Covers entropy/rate-loss accounting, power penalty against the
unconstrained-support Maxwell-Boltzmann reference, centroid adjustment,
effective SNR, soft demapping with a circularly symmetric Gaussian auxiliary
channel, the bit-metric-decoding achievable rate, normalized GMI, post-FEC
BER prediction from an LDPC characterization curve, and net-rate accounting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import logsumexp

from .codecs import fit_mb_unconstrained
from .mapping import PmfTable, component_labels, signal_entropy_b4d

LLR_CLIP = 50.0
SNR_CAP_DB = 60.0
BITS_PER_4D = 12  # DP-64QAM: 8 amplitude bits + 4 sign bits
_LN2 = math.log(2.0)


@dataclass
class MetricReport:
    entropy_b4d: float
    rate_loss_b4d: float
    air_b4d: float
    ngmi: float
    effective_snr_db: float
    avg_energy: float            # per amplitude, amplitude^2 units
    power_penalty_db: float


# ---------------------------------------------------------------------------
# Rate loss and power penalty
# ---------------------------------------------------------------------------


def rate_loss(pmf: PmfTable, shaping_rate) -> float:
    """Entropy shortfall of the finite-length shaper in b/4D:
    H(X) - 4*(R_S + 1)."""
    return signal_entropy_b4d(pmf) - 4.0 * (float(shaping_rate) + 1.0)


def power_penalty_db(scheme_avg_energy, shaping_rate) -> float:
    """Average-energy penalty versus the unconstrained-cardinality MB
    distribution of the same per-amplitude entropy."""
    ref = fit_mb_unconstrained(float(shaping_rate)).average_energy()
    return 10.0 * math.log10(float(scheme_avg_energy) / ref)


# ---------------------------------------------------------------------------
# Soft demapper
# ---------------------------------------------------------------------------


@dataclass
class Demapper:
    """D-dimensional signed constellation with priors and bit labels."""

    dim: int
    points: np.ndarray        # (M, D) nominal signed points
    priors: np.ndarray        # (M,) probabilities, sum 1
    labels: np.ndarray        # (M, 3*D) bits, component-major
    adjusted: np.ndarray | None = None   # centroid-adjusted points

    @property
    def bits_per_unit(self) -> int:
        return 3 * self.dim

    @property
    def constellation(self) -> np.ndarray:
        return self.points if self.adjusted is None else self.adjusted

    def point_index(self, symbols: np.ndarray) -> np.ndarray:
        """Index of each D-dim signed symbol row in the nominal grid."""
        key = self._pack(symbols)
        order = np.argsort(self._point_keys)
        pos = np.searchsorted(self._point_keys[order], key)
        return order[pos]

    def _pack(self, symbols: np.ndarray) -> np.ndarray:
        sym = np.asarray(symbols, dtype=np.int64)
        key = np.zeros(sym.shape[0], dtype=np.int64)
        for d in range(self.dim):
            key = key * 16 + (sym[:, d] + 8)
        return key

    @property
    def _point_keys(self) -> np.ndarray:
        if not hasattr(self, "_keys_cache"):
            object.__setattr__(self, "_keys_cache", self._pack(self.points))
        return self._keys_cache

    def bits_for(self, symbols: np.ndarray) -> np.ndarray:
        return self.labels[self.point_index(symbols)]


def build_demapper(pmf: PmfTable) -> Demapper:
    """Signed D-dim constellation from a quadrant PMF with uniform signs."""
    labels_1d = component_labels(pmf.alphabet.levels)
    D = pmf.dim
    points, priors, labels = [], [], []
    sign_patterns = [
        tuple(1 - 2 * ((s >> d) & 1) for d in range(D)) for s in range(1 << D)
    ]
    for amps, p in sorted(pmf.probs.items()):
        if p == 0:
            continue
        for signs in sign_patterns:
            pt = tuple(s * a for s, a in zip(signs, amps))
            bits = []
            for a, s in zip(amps, signs):
                bits.extend(labels_1d[(a, s)])
            points.append(pt)
            priors.append(float(p) / (1 << D))
            labels.append(bits)
    return Demapper(
        dim=D,
        points=np.asarray(points, dtype=float),
        priors=np.asarray(priors, dtype=float),
        labels=np.asarray(labels, dtype=np.uint8),
    )


def adjust_centroids(tx_symbols: np.ndarray, rx: np.ndarray, demapper: Demapper) -> np.ndarray:
    """Per-constellation-point receive centroids; unobserved points keep
    their nominal position.  Returns the adjusted (M, D) constellation."""
    idx = demapper.point_index(tx_symbols)
    M = demapper.points.shape[0]
    sums = np.zeros((M, demapper.dim))
    counts = np.zeros(M)
    np.add.at(sums, idx, rx)
    np.add.at(counts, idx, 1.0)
    adjusted = demapper.points.copy()
    seen = counts > 0
    adjusted[seen] = sums[seen] / counts[seen, None]
    return adjusted


def effective_snr(tx_adjusted: np.ndarray, rx: np.ndarray) -> float:
    """Var[X'] / Var[Y - X'] pooled over all real dimensions (linear ratio,
    capped at 60 dB for degenerate noiseless input)."""
    sig = np.var(tx_adjusted)
    noise = np.var(rx - tx_adjusted)
    cap = 10.0 ** (SNR_CAP_DB / 10.0)
    if noise <= 0 or sig / noise > cap:
        return cap
    return float(sig / noise)


def llr(rx: np.ndarray, demapper: Demapper, noise_var_per_dim: float,
        chunk: int = 32768) -> np.ndarray:
    """Exact max-log-free LLRs, log-sum-exp stabilized, clipped to +/-50.

    noise_var_per_dim is the Gaussian noise variance per real dimension of
    the auxiliary channel.
    """
    if noise_var_per_dim <= 0:
        raise ValueError("noise variance must be positive")
    pts = demapper.constellation
    logp = np.where(demapper.priors > 0, np.log(demapper.priors,
                    where=demapper.priors > 0, out=np.full_like(demapper.priors, -np.inf)),
                    -np.inf)
    nbits = demapper.bits_per_unit
    one_masks = [demapper.labels[:, i] == 1 for i in range(nbits)]
    out = np.empty((rx.shape[0], nbits))
    inv = 1.0 / (2.0 * noise_var_per_dim)
    for start in range(0, rx.shape[0], chunk):
        y = rx[start:start + chunk]
        d2 = ((y[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        metric = logp[None, :] - d2 * inv
        for i in range(nbits):
            num = logsumexp(metric[:, one_masks[i]], axis=1)
            den = logsumexp(metric[:, ~one_masks[i]], axis=1)
            out[start:start + chunk, i] = num - den
    return np.clip(out, -LLR_CLIP, LLR_CLIP)


# ---------------------------------------------------------------------------
# AIR / nGMI / FEC prediction / net rate
# ---------------------------------------------------------------------------


def bitwise_equivocation(llrs: np.ndarray, tx_bits: np.ndarray) -> float:
    """Sum over bit positions of the mismatched-decoding estimate of
    H(B_i|Y), in bits per demapped unit."""
    signed = (2.0 * tx_bits - 1.0) * llrs
    terms = np.logaddexp(0.0, -signed) / _LN2
    return float(terms.sum(axis=1).mean())


def air_bmd(llrs: np.ndarray, tx_bits: np.ndarray, entropy_b4d: float,
            rate_loss_b4d: float, dim: int) -> float:
    """AIR for bit-metric decoding in b/4D:
    [H(X) - sum_i H(B_i|Y)] - R_loss."""
    h_cond = bitwise_equivocation(llrs, tx_bits) * (4.0 / dim)
    return entropy_b4d - h_cond - rate_loss_b4d


def ngmi(air_b4d: float, shaped: bool, shaping_rate=None, m: int = BITS_PER_4D) -> float:
    """Normalized GMI: AIR/m for uniform input, or
    1 - (4*(R_S+1) - AIR)/m for shaped input."""
    if not shaped:
        return air_b4d / m
    if shaping_rate is None:
        raise ValueError("shaped nGMI needs the shaping rate")
    return 1.0 - (4.0 * (float(shaping_rate) + 1.0) - air_b4d) / m


@dataclass
class FecPrediction:
    ber_estimate: float
    passed: bool
    extrapolated: bool


_LOG_BER_FLOOR = -18.0


def predict_post_fec(ngmi_value: float, ldpc_curve, bch_threshold: float = 5e-5) -> FecPrediction:
    """Monotone interpolation of an (nGMI, post-LDPC BER) characterization
    curve; passes when the predicted BER is below the BCH threshold."""
    pts = sorted((float(g), float(b)) for g, b in ldpc_curve)
    if len(pts) < 2:
        raise ValueError("LDPC curve needs at least 2 points")
    gs = np.asarray([g for g, _ in pts])
    if np.any(np.diff(gs) <= 0):
        raise ValueError("LDPC curve nGMI values must be strictly increasing")
    logb = np.asarray([
        math.log10(b) if b > 0 else _LOG_BER_FLOOR for _, b in pts
    ])
    extrapolated = ngmi_value < gs[0] or ngmi_value > gs[-1]
    lb = float(np.interp(ngmi_value, gs, logb))
    ber = 0.0 if lb <= _LOG_BER_FLOOR else 10.0 ** lb
    return FecPrediction(ber_estimate=ber, passed=ber < bch_threshold,
                         extrapolated=extrapolated)


def net_rate_gbps(symbol_rate_gbd: float, shaping_rate=None, ldpc_rate: float = 0.72,
                  bch_rate: float = 0.9922, m: int = BITS_PER_4D) -> float:
    """Net information rate after shaping and FEC overheads.

    Shaped: the 8 amplitude bits carry 4*R_S information bits, and the 4
    sign bits carry whatever parity does not consume.  Uniform: all m bits
    scaled by the LDPC rate.
    """
    if shaping_rate is None:
        bits_per_4d = m * ldpc_rate
    else:
        bits_per_4d = 4.0 * float(shaping_rate) + (4.0 - m * (1.0 - ldpc_rate))
    return bits_per_4d * symbol_rate_gbd * bch_rate


def snr_db(linear: float) -> float:
    return 10.0 * math.log10(linear)


def snr_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)
