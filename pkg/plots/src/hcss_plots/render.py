"""Render figure kinds from hcss CSV files.

Each kind names a CSV schema and a layout.  Measured points are drawn as
scatter markers; fitted series are drawn as smooth lines.  Nothing is
recomputed here: axes carry exactly the columns of the input file.
"""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import SchemaMismatch

FIGURE_KINDS = ("rate_loss", "power_penalty", "power_sweep", "length_sweep", "coded")

_DIM_STYLE = {1: "o-", 2: "s-", 4: "^-"}


def _read_rows(csv_path, required: tuple[str, ...]) -> list[dict]:
    with open(csv_path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        fields = reader.fieldnames or ()
        missing = [c for c in required if c not in fields]
        if missing:
            raise SchemaMismatch(
                f"{csv_path}: missing column(s) {', '.join(missing)}"
            )
        rows = list(reader)
    if not rows:
        raise SchemaMismatch(f"{csv_path}: no data rows")
    return rows


def _grid_column(rows: list[dict]) -> str:
    for name in ("osnr_db", "snr_db", "power_dbm"):
        if name in rows[0]:
            return name
    raise SchemaMismatch("no osnr_db / snr_db / power_dbm column")


def _series_label(row: dict) -> str:
    label = row.get("scheme", "")
    if row.get("L"):
        label += f" L={row['L']}"
    return label or "data"


def _fig_rate_loss(rows: list[dict]):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax2 = ax.twinx()
    dims = sorted({int(r["dim"]) for r in rows})
    for dim in dims:
        sub = sorted((r for r in rows if int(r["dim"]) == dim),
                     key=lambda r: int(r["L"]))
        ls = [int(r["L"]) for r in sub]
        style = _DIM_STYLE.get(dim, "o-")
        ax.plot(ls, [float(r["rate_loss_b4D"]) for r in sub], style,
                label=f"rate loss, {dim}D")
        ax2.plot(ls, [float(r["entropy_b4D"]) for r in sub],
                 marker=style[0], linestyle="--", fillstyle="none",
                 label=f"entropy, {dim}D")
    ax.set_xlabel("shaping length L (amplitudes)")
    ax.set_ylabel("rate loss (b/4D)")
    ax2.set_ylabel("signal entropy (b/4D)")
    ax.legend(loc="upper right", fontsize=8)
    ax2.legend(loc="center right", fontsize=8)
    return fig


def _fig_power_penalty(rows: list[dict]):
    # the penalty is a 1D quantity, so rows repeated per dim collapse by L
    by_l = {}
    for r in rows:
        by_l[int(r["L"])] = float(r["power_penalty_db"])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ls = sorted(by_l)
    ax.plot(ls, [by_l[l] for l in ls], "o-", label="power penalty")
    ax.set_xlabel("shaping length L (amplitudes)")
    ax.set_ylabel("power penalty (dB)")
    ax.legend(loc="upper right", fontsize=8)
    return fig


def _fig_power_sweep(rows: list[dict], curve_rows: list[dict] | None):
    has_air = bool(rows[0].get("air_b4D"))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax2 = ax.twinx() if has_air else None
    p = [float(r["power_dbm"]) for r in rows]
    ax.scatter(p, [float(r["eff_snr_db"]) for r in rows], marker="o",
               label="effective SNR (measured)")
    if has_air:
        ax2.scatter(p, [float(r["air_b4D"]) for r in rows], marker="s",
                    color="tab:orange", label="AIR (measured)")
    if curve_rows:
        pc = [float(r["power_dbm"]) for r in curve_rows]
        ax.plot(pc, [float(r["eff_snr_db"]) for r in curve_rows], "-",
                color="tab:blue", label="effective SNR (fit)")
        if has_air and curve_rows[0].get("air_b4D"):
            ax2.plot(pc, [float(r["air_b4D"]) for r in curve_rows], "-",
                     color="tab:orange", label="AIR (fit)")
    ax.set_xlabel("launch power (dBm)")
    ax.set_ylabel("effective SNR (dB)")
    ax.legend(loc="upper left", fontsize=8)
    if has_air:
        ax2.set_ylabel("AIR (b/4D)")
        ax2.legend(loc="lower right", fontsize=8)
    return fig


def _fig_length_sweep(rows: list[dict]):
    if not all(r.get("L") for r in rows):
        raise SchemaMismatch("length_sweep needs an L value in every row")
    grid = _grid_column(rows)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    keys = sorted({(r.get("scheme", ""), float(r[grid])) for r in rows},
                  key=lambda t: (t[0], t[1]))
    for scheme, g in keys:
        sub = sorted((r for r in rows
                      if r.get("scheme", "") == scheme and float(r[grid]) == g),
                     key=lambda r: int(r["L"]))
        label = f"{scheme} @ {g:g} dB".strip()
        ax.plot([int(r["L"]) for r in sub],
                [float(r["air_b4D"]) for r in sub], "o-", label=label)
    ax.set_xlabel("shaping length L (amplitudes)")
    ax.set_ylabel("AIR (b/4D)")
    ax.legend(loc="lower right", fontsize=8)
    return fig


def _fig_coded(rows: list[dict]):
    grid = _grid_column(rows)
    if "ngmi" not in rows[0]:
        raise SchemaMismatch("coded figure needs an ngmi column")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    labels = sorted({_series_label(r) for r in rows})
    for label in labels:
        sub = sorted((r for r in rows if _series_label(r) == label),
                     key=lambda r: float(r[grid]))
        ax.plot([float(r[grid]) for r in sub],
                [float(r["ngmi"]) for r in sub], "o-", label=label)
    ax.set_xlabel(grid.replace("_db", " (dB)").replace("_dbm", " (dBm)"))
    ax.set_ylabel("nGMI")
    ax.legend(loc="lower right", fontsize=8)
    return fig


_ANALYZE_COLS = ("L", "dim", "rate_loss_b4D", "entropy_b4D", "power_penalty_db")


def render_figure(kind: str, csv_path, out_path, curve_csv=None):
    """Render one figure kind from a CSV to a vector-graphic file.

    Returns the matplotlib Figure (also saved to out_path) so callers and
    tests can inspect the drawn series.  curve_csv overlays a fitted-curve
    file on the power_sweep kind.
    """
    if kind not in FIGURE_KINDS:
        raise ValueError(f"unknown figure kind {kind!r}; choose from {FIGURE_KINDS}")
    if kind == "rate_loss":
        fig = _fig_rate_loss(_read_rows(csv_path, _ANALYZE_COLS))
    elif kind == "power_penalty":
        fig = _fig_power_penalty(_read_rows(csv_path, _ANALYZE_COLS))
    elif kind == "power_sweep":
        rows = _read_rows(csv_path, ("power_dbm", "eff_snr_db"))
        curve = _read_rows(curve_csv, ("power_dbm", "eff_snr_db")) if curve_csv else None
        fig = _fig_power_sweep(rows, curve)
    elif kind == "length_sweep":
        fig = _fig_length_sweep(_read_rows(csv_path, ("air_b4D",)))
    else:
        fig = _fig_coded(_read_rows(csv_path, ("ngmi",)))
    fig.tight_layout()
    fig.savefig(out_path)
    return fig
