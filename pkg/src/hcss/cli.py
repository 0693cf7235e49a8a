"""Operator command line.

Subcommands: build, analyze, encode, decode, simulate, fit.  All tabular
output is CSV (header row, '.' decimal separator, UTF-8, LF endings) so the
plotting component can consume it byte-exactly.  Exit codes: 0 ok, 1 runtime
error, 2 usage/configuration error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .alphabet import AmplitudeAlphabet
from .awgn import SimConfig, run_awgn_sweep
from .codebook import build_codebook, load_codebook, save_codebook
from .codecs import decode_file_bytes, encode_file_bytes
from .errors import (ConfigInvalid, HcssError, InsufficientData, RateInfeasible)
from .gnfit import (BtbPoint, fit_air, fit_snr, initial_guess, load_sweep_csv,
                    optimal_power, write_curve_csv)
from .mapping import pmf_for_dim, signal_entropy_b4d
from .metrics import power_penalty_db, rate_loss
from .ranking import build_lut

USAGE_ERRORS = (RateInfeasible, ConfigInvalid, InsufficientData, ValueError)


def _alphabet_arg(text: str) -> AmplitudeAlphabet:
    return AmplitudeAlphabet(tuple(int(x) for x in text.split(",")))


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(","))


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _open_csv(path):
    return open(path, "w", newline="\n", encoding="utf-8")


def cmd_build(args) -> int:
    if args.bits is None and args.rate is None:
        raise ValueError("give either --bits or --rate")
    k = args.bits if args.bits is not None else int(args.rate * args.length)
    codebook = build_codebook(args.alphabet, args.length, k)
    save_codebook(codebook, args.out)
    print(f"codebook L={codebook.L} k={codebook.k} "
          f"R_S={float(codebook.shaping_rate):.6g} b/Amp "
          f"entries={len(codebook.entries)} -> {args.out}")
    return 0


def cmd_analyze(args) -> int:
    rows = []
    for L in args.lengths:
        k = int(args.rate * L)
        codebook = build_codebook(args.alphabet, L, k)
        pmf1 = pmf_for_dim(codebook, 1)
        avg_energy = float(pmf1.average_energy())
        penalty = power_penalty_db(avg_energy, codebook.shaping_rate)
        for dim in args.dims:
            pmf = pmf1 if dim == 1 else pmf_for_dim(codebook, dim)
            rows.append({
                "L": L,
                "k": k,
                "dim": dim,
                "R_S": f"{float(codebook.shaping_rate):.6f}",
                "entropy_b4D": f"{signal_entropy_b4d(pmf):.9f}",
                "rate_loss_b4D": f"{rate_loss(pmf, codebook.shaping_rate):.9f}",
                "avg_energy": f"{avg_energy:.9f}",
                "power_penalty_db": f"{penalty:.9f}",
            })
    with _open_csv(args.out) as f:
        writer = csv.DictWriter(f, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    print(f"{len(rows)} rows -> {args.out}")
    if args.plot:
        _render(args.plot_kind or "rate_loss", args.out, args.plot)
    return 0


def cmd_encode(args) -> int:
    codebook = load_codebook(args.codebook)
    lut = build_lut(codebook)
    with open(args.infile, "rb") as f:
        data = f.read()
    out = encode_file_bytes(codebook, lut, data)
    with open(args.out, "wb") as f:
        f.write(out)
    print(f"{len(data)} bytes -> {len(out)} amplitudes -> {args.out}")
    return 0


def cmd_decode(args) -> int:
    codebook = load_codebook(args.codebook)
    lut = build_lut(codebook)
    with open(args.infile, "rb") as f:
        amps = f.read()
    out = decode_file_bytes(codebook, lut, amps)
    with open(args.out, "wb") as f:
        f.write(out)
    print(f"{len(amps)} amplitudes -> {len(out)} bytes -> {args.out}")
    return 0


def cmd_simulate(args) -> int:
    grid = args.osnr if args.osnr else args.snr
    if grid is None:
        raise ValueError("give either --snr or --osnr")
    cfg = SimConfig(
        scheme=args.scheme,
        snr_grid_db=grid,
        n_symbols=args.n_symbols,
        rng_seed=args.seed,
        shaping_rate=args.rate,
        L=args.length,
        k=args.bits,
        dim=args.dim,
        osnr_mode=bool(args.osnr),
        bw_ghz=args.bw,
    )
    points = run_awgn_sweep(cfg)
    grid_col = "osnr_db" if cfg.osnr_mode else "snr_db"
    with _open_csv(args.out) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["scheme", "L", "dim", "R_S", grid_col,
                         "eff_snr_db", "air_b4D", "ngmi"])
        for pt in points:
            writer.writerow([
                cfg.scheme,
                cfg.L if cfg.scheme == "hcss" else "",
                cfg.dim,
                f"{cfg.shaping_rate:.6f}",
                f"{pt.grid_db:.6f}",
                f"{pt.report.effective_snr_db:.6f}",
                f"{pt.report.air_b4d:.6f}",
                f"{pt.report.ngmi:.6f}",
            ])
    print(f"{len(points)} sweep points -> {args.out}")
    return 0


def cmd_fit(args) -> int:
    records = load_sweep_csv(args.input)
    btb = None
    if args.btb:
        osnr, snr, bw = args.btb
        btb = BtbPoint(osnr_db=osnr, eff_snr_db=snr, bw_ghz=bw)
    guess = initial_guess(records, btb)
    fit = fit_snr(records, guess)
    if any(r.air_b4d is not None for r in records):
        fit = fit_air(records, fit)
    p_opt, snr_opt = optimal_power(fit)
    print(f"a={fit.a:.9g} mW  b={fit.b:.9g} mW^-2  c={fit.c:.9g}")
    if fit.k_air == fit.k_air:  # not NaN
        print(f"k_air={fit.k_air:.9g} b/4D per decade  "
              f"intercept={fit.air_intercept:.9g}  rms={fit.air_residual:.3g}")
    import math
    if math.isfinite(p_opt):
        print(f"P_opt={10.0 * math.log10(p_opt):.4f} dBm  "
              f"SNR_opt={10.0 * math.log10(snr_opt):.4f} dB")
    else:
        print("P_opt=inf (no nonlinear term fitted)")
    if args.out_curve:
        lo, hi, n = args.grid
        grid = [lo + i * (hi - lo) / (int(n) - 1) for i in range(int(n))]
        write_curve_csv(fit, grid, args.out_curve)
        print(f"fitted curve -> {args.out_curve}")
    return 0


def _render(kind, csv_path, out_path):
    try:
        from hcss_plots import render_figure
    except ImportError as exc:  # pragma: no cover - optional component
        raise HcssError("plot output requires the hcss-plots package") from exc
    render_figure(kind, csv_path, out_path)
    print(f"figure -> {out_path}")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcss",
        description="Huffman-coded sphere shaping: build shapers, run codecs, "
                    "analytic and Monte-Carlo sweeps, GN-model fitting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build and save a shaper codebook")
    p.add_argument("--alphabet", type=_alphabet_arg, default=AmplitudeAlphabet(),
                   help="comma-separated odd amplitude levels (default 1,3,5,7)")
    p.add_argument("--length", type=int, required=True, help="shaping length L (amplitudes)")
    p.add_argument("--bits", type=int, help="input word size k (bits)")
    p.add_argument("--rate", type=float, help="shaping rate R_S in b/Amp; k = floor(R_S*L)")
    p.add_argument("--out", required=True, help="output codebook file (JSON)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze",
                       help="rate loss / entropy / power penalty over an L grid")
    p.add_argument("--alphabet", type=_alphabet_arg, default=AmplitudeAlphabet())
    p.add_argument("--rate", type=float, required=True, help="shaping rate R_S (b/Amp)")
    p.add_argument("--lengths", type=_int_list, required=True,
                   help="comma-separated L grid, e.g. 8,16,32,64")
    p.add_argument("--dims", type=_int_list, default=(1, 2, 4),
                   help="mapping dimensionalities (subset of 1,2,4)")
    p.add_argument("--out", required=True, help="output CSV")
    p.add_argument("--plot", help="also render a figure (SVG/PDF) to this path")
    p.add_argument("--plot-kind", help="figure kind for --plot (default rate_loss)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("encode", help="shape a binary file into amplitude bytes")
    p.add_argument("--codebook", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="recover a binary file from amplitude bytes")
    p.add_argument("--codebook", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="AWGN Monte-Carlo sweep (AIR/nGMI vs SNR or OSNR)")
    p.add_argument("--scheme", choices=["uniform", "mb", "hcss"], required=True)
    p.add_argument("--rate", type=float, default=1.75, help="shaping rate R_S (b/Amp)")
    p.add_argument("--length", type=int, default=32, help="HCSS shaping length L")
    p.add_argument("--bits", type=int, help="HCSS word size k (default floor(R_S*L))")
    p.add_argument("--dim", type=int, default=1, choices=[1, 2, 4],
                   help="symbol-mapping dimensionality")
    p.add_argument("--snr", type=_float_list, help="SNR grid in dB, comma-separated")
    p.add_argument("--osnr", type=_float_list, help="OSNR grid in dB (uses --bw)")
    p.add_argument("--bw", type=float, default=56.0, help="signal bandwidth in GHz")
    p.add_argument("--n-symbols", type=int, default=10**5, help="4D symbols per grid point")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="GN-model fit of a launch-power sweep CSV")
    p.add_argument("--input", required=True,
                   help="CSV with power_dbm, eff_snr_db[, air_b4D] columns")
    p.add_argument("--btb", type=_float_list,
                   help="back-to-back point: osnr_db,eff_snr_db,bw_ghz")
    p.add_argument("--grid", type=_float_list, default=(0.0, 14.0, 57),
                   help="fitted-curve power grid: start_dbm,stop_dbm,points")
    p.add_argument("--out-curve", help="fitted-curve CSV output path")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HcssError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
