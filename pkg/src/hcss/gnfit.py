"""GN-model fitting of launch-power-sweep data.

Effective SNR is modeled as P / (a + c*P + b*P^3): an ASE term, a constant
transceiver term and a nonlinear-interference term whose noise power grows
cubically with launch power.  AIR is fitted as an affine function of SNR in
dB (slope reported per decade of linear SNR).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import InsufficientData, NonConvergence

_A_FLOOR = 1e-15


@dataclass(frozen=True)
class SweepRecord:
    launch_power_mw: float
    eff_snr: float                 # linear ratio
    air_b4d: float | None = None

    def __post_init__(self):
        if self.launch_power_mw <= 0 or self.eff_snr <= 0:
            raise ValueError("power and SNR must be positive")


@dataclass(frozen=True)
class BtbPoint:
    osnr_db: float
    eff_snr_db: float
    bw_ghz: float


@dataclass
class GnFit:
    a: float                       # ASE coefficient, mW
    b: float                       # nonlinear coefficient, mW^-2
    c: float                       # transceiver coefficient, unitless
    k_air: float = math.nan        # AIR slope, b/4D per decade of SNR
    air_intercept: float = math.nan
    air_residual: float = math.nan
    guess_clamped: bool = False
    converged: bool = True

    def model_snr(self, power_mw):
        p = np.asarray(power_mw, dtype=float)
        return p / (self.a + self.c * p + self.b * p**3)

    def model_air(self, power_mw):
        return self.k_air * np.log10(self.model_snr(power_mw)) + self.air_intercept


def initial_guess(records, btb_point: BtbPoint | None = None) -> GnFit:
    """Closed-form parameter seeds: c from the back-to-back point, a from the
    lowest-power record, b from the highest-power record."""
    recs = sorted(records, key=lambda r: r.launch_power_mw)
    if len(recs) < 3:
        raise InsufficientData("need at least 3 sweep records")
    clamped = False
    if btb_point is not None:
        osnr = 10.0 ** (btb_point.osnr_db / 10.0)
        snr_btb = 10.0 ** (btb_point.eff_snr_db / 10.0)
        c = 1.0 / snr_btb - btb_point.bw_ghz / (osnr * 12.5)
    else:
        c = 0.0
    if c < 0:
        c, clamped = 0.0, True
    lo = recs[0]
    a = lo.launch_power_mw / lo.eff_snr - c * lo.launch_power_mw
    if a <= 0:
        a, clamped = _A_FLOOR, True
    hi = recs[-1]
    p = hi.launch_power_mw
    b = 1.0 / (hi.eff_snr * p**2) - a / p**3 - c / p**2
    if b < 0:
        b, clamped = 0.0, True
    return GnFit(a=a, b=b, c=c, guess_clamped=clamped)


def fit_snr(records, guess: GnFit | None = None) -> GnFit:
    """Least-squares refinement minimizing dB-domain SNR residuals."""
    recs = sorted(records, key=lambda r: r.launch_power_mw)
    if len(recs) < 3:
        raise InsufficientData("need at least 3 sweep records")
    if guess is None:
        guess = initial_guess(recs)
    p = np.asarray([r.launch_power_mw for r in recs])
    snr_db_data = 10.0 * np.log10([r.eff_snr for r in recs])

    def residuals(x):
        a, b, c = x
        denom = a + c * p + b * p**3
        return 10.0 * np.log10(p / denom) - snr_db_data

    x0 = np.asarray([max(guess.a, _A_FLOOR), max(guess.b, 0.0), max(guess.c, 0.0)])
    sol = least_squares(
        residuals, x0,
        bounds=([_A_FLOOR, 0.0, 0.0], [np.inf, np.inf, np.inf]),
        xtol=1e-12, ftol=1e-12, gtol=1e-12, max_nfev=200 * 10,
    )
    fit = GnFit(a=float(sol.x[0]), b=float(sol.x[1]), c=float(sol.x[2]),
                guess_clamped=guess.guess_clamped, converged=bool(sol.success))
    if not sol.success:
        raise NonConvergence("SNR fit did not converge", best=fit)
    return fit


def optimal_power(fit: GnFit) -> tuple[float, float]:
    """Launch power maximizing the modeled SNR.

    d/dP [P/(a+cP+bP^3)] = 0 gives a = 2*b*P^3, i.e. P_opt = (a/(2b))^(1/3);
    the optimum is independent of c.  b = 0 means the model has no finite
    optimum: returns (inf, limiting SNR).
    """
    if fit.b <= 0:
        return math.inf, (1.0 / fit.c if fit.c > 0 else math.inf)
    p_opt = (fit.a / (2.0 * fit.b)) ** (1.0 / 3.0)
    return p_opt, float(fit.model_snr(p_opt))


def fit_air(records, snr_fit: GnFit) -> GnFit:
    """Affine least-squares fit of AIR versus log10(effective SNR).

    Returns the snr_fit with (k_air, air_intercept, air_residual) filled in;
    residual is the RMS misfit in b/4D.
    """
    pts = [(r.eff_snr, r.air_b4d) for r in records if r.air_b4d is not None]
    if len(pts) < 2:
        raise InsufficientData("need at least 2 records with AIR values")
    x = np.log10([s for s, _ in pts])
    y = np.asarray([a for _, a in pts])
    A = np.stack([x, np.ones_like(x)], axis=1)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sqrt(np.mean((A @ coef - y) ** 2)))
    return GnFit(a=snr_fit.a, b=snr_fit.b, c=snr_fit.c,
                 k_air=float(coef[0]), air_intercept=float(coef[1]),
                 air_residual=resid, guess_clamped=snr_fit.guess_clamped,
                 converged=snr_fit.converged)


# ---------------------------------------------------------------------------
# CSV I/O (power in dBm, SNR in dB on disk; linear mW / ratios internally)
# ---------------------------------------------------------------------------


def load_sweep_csv(path) -> list[SweepRecord]:
    records = []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or "power_dbm" not in reader.fieldnames \
                or "eff_snr_db" not in reader.fieldnames:
            raise ValueError("sweep CSV needs power_dbm and eff_snr_db columns")
        for row in reader:
            air = row.get("air_b4D")
            records.append(SweepRecord(
                launch_power_mw=10.0 ** (float(row["power_dbm"]) / 10.0),
                eff_snr=10.0 ** (float(row["eff_snr_db"]) / 10.0),
                air_b4d=float(air) if air not in (None, "") else None,
            ))
    return records


def write_curve_csv(fit: GnFit, power_grid_dbm, path) -> None:
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        has_air = not math.isnan(fit.k_air)
        header = ["power_dbm", "eff_snr_db"] + (["air_b4D"] if has_air else [])
        writer.writerow(header)
        for p_dbm in power_grid_dbm:
            p_mw = 10.0 ** (p_dbm / 10.0)
            snr = fit.model_snr(p_mw)
            row = [f"{p_dbm:.6g}", f"{10.0 * math.log10(snr):.6f}"]
            if has_air:
                row.append(f"{fit.model_air(p_mw):.6f}")
            writer.writerow(row)
