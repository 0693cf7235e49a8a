"""Structural golden tests: series counts and data extents, never pixels."""

import csv

import pytest

from hcss_plots import SchemaMismatch, render_figure


def _column(path, name):
    with open(path, newline="", encoding="utf-8") as f:
        return [float(r[name]) for r in csv.DictReader(f) if r[name] != ""]


def _line_extents(lines):
    xs = [x for ln in lines for x in ln.get_xdata()]
    ys = [y for ln in lines for y in ln.get_ydata()]
    return (min(xs), max(xs)), (min(ys), max(ys))


class TestRateLoss:
    def test_two_axis_layout(self, data_dir, tmp_path):
        out = tmp_path / "rl.svg"
        fig = render_figure("rate_loss", data_dir / "analyze.csv", out)
        assert out.exists() and out.read_bytes().lstrip().startswith(b"<?xml")
        assert len(fig.axes) == 2

    def test_series_and_extents(self, data_dir, tmp_path):
        fig = render_figure("rate_loss", data_dir / "analyze.csv",
                            tmp_path / "rl.svg")
        left, right = fig.axes
        assert len(left.lines) == 3  # one rate-loss series per dim
        assert len(right.lines) == 3
        (x_lo, x_hi), (y_lo, y_hi) = _line_extents(left.lines)
        ls = _column(data_dir / "analyze.csv", "L")
        loss = _column(data_dir / "analyze.csv", "rate_loss_b4D")
        assert (x_lo, x_hi) == (min(ls), max(ls))
        assert (y_lo, y_hi) == (min(loss), max(loss))
        _, (h_lo, h_hi) = _line_extents(right.lines)
        ent = _column(data_dir / "analyze.csv", "entropy_b4D")
        assert (h_lo, h_hi) == (min(ent), max(ent))

    def test_points_per_series(self, data_dir, tmp_path):
        fig = render_figure("rate_loss", data_dir / "analyze.csv",
                            tmp_path / "rl.svg")
        for ln in fig.axes[0].lines:
            assert len(ln.get_xdata()) == 4  # L in {8, 16, 32, 64}


class TestPowerPenalty:
    def test_single_deduped_series(self, data_dir, tmp_path):
        out = tmp_path / "pp.pdf"
        fig = render_figure("power_penalty", data_dir / "analyze.csv", out)
        assert out.exists() and out.read_bytes().startswith(b"%PDF")
        (ax,) = fig.axes
        assert len(ax.lines) == 1
        (ln,) = ax.lines
        assert len(ln.get_xdata()) == 4  # 12 rows collapse to 4 lengths
        pens = _column(data_dir / "analyze.csv", "power_penalty_db")
        assert min(ln.get_ydata()) == min(pens)
        assert max(ln.get_ydata()) == max(pens)


class TestPowerSweep:
    def test_points_plus_curve_overlay(self, data_dir, tmp_path):
        fig = render_figure("power_sweep", data_dir / "power_sweep.csv",
                            tmp_path / "ps.svg",
                            curve_csv=data_dir / "power_curve.csv")
        left, right = fig.axes
        # measured data is scattered, the fit is the only line
        assert len(left.collections) == 1 and len(left.lines) == 1
        assert len(right.collections) == 1 and len(right.lines) == 1
        assert len(left.collections[0].get_offsets()) == 13
        assert len(left.lines[0].get_xdata()) == 49
        (x_lo, x_hi), (y_lo, y_hi) = _line_extents(left.lines)
        snr = _column(data_dir / "power_curve.csv", "eff_snr_db")
        assert (x_lo, x_hi) == (0.0, 12.0)
        assert (y_lo, y_hi) == (min(snr), max(snr))

    def test_points_only_no_air(self, data_dir, tmp_path):
        rows = (data_dir / "power_sweep.csv").read_text().splitlines()
        slim = tmp_path / "slim.csv"
        slim.write_text("\n".join(",".join(r.split(",")[:2]) for r in rows) + "\n")
        fig = render_figure("power_sweep", slim, tmp_path / "ps.svg")
        (ax,) = fig.axes
        assert len(ax.collections) == 1 and len(ax.lines) == 0


class TestLengthSweep:
    def test_series_per_scheme_and_grid(self, data_dir, tmp_path):
        fig = render_figure("length_sweep", data_dir / "length_sweep.csv",
                            tmp_path / "ls.svg")
        (ax,) = fig.axes
        assert len(ax.lines) == 2  # hcss @ 11 dB and @ 13 dB
        for ln in ax.lines:
            assert list(ln.get_xdata()) == [16, 32]
        _, (y_lo, y_hi) = _line_extents(ax.lines)
        air = _column(data_dir / "length_sweep.csv", "air_b4D")
        assert (y_lo, y_hi) == (min(air), max(air))

    def test_rejects_rows_without_l(self, data_dir, tmp_path):
        with pytest.raises(SchemaMismatch):
            render_figure("length_sweep", data_dir / "coded.csv",
                          tmp_path / "ls.svg")


class TestCoded:
    def test_series_per_scheme(self, data_dir, tmp_path):
        fig = render_figure("coded", data_dir / "coded.csv", tmp_path / "c.svg")
        (ax,) = fig.axes
        assert len(ax.lines) == 2  # mb and uniform
        (x_lo, x_hi), (y_lo, y_hi) = _line_extents(ax.lines)
        assert (x_lo, x_hi) == (11.0, 13.0)
        ngmi = _column(data_dir / "coded.csv", "ngmi")
        assert (y_lo, y_hi) == (min(ngmi), max(ngmi))
        labels = sorted(ln.get_label() for ln in ax.lines)
        assert labels == ["mb", "uniform"]


class TestSchemaErrors:
    def test_wrong_schema(self, data_dir, tmp_path):
        with pytest.raises(SchemaMismatch):
            render_figure("rate_loss", data_dir / "coded.csv", tmp_path / "x.svg")
        with pytest.raises(SchemaMismatch):
            render_figure("power_sweep", data_dir / "analyze.csv",
                          tmp_path / "x.svg")

    def test_empty_csv(self, data_dir, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("L,k,dim,R_S,entropy_b4D,rate_loss_b4D,"
                         "avg_energy,power_penalty_db\n")
        with pytest.raises(SchemaMismatch):
            render_figure("rate_loss", empty, tmp_path / "x.svg")

    def test_unknown_kind(self, data_dir, tmp_path):
        with pytest.raises(ValueError):
            render_figure("heatmap", data_dir / "analyze.csv", tmp_path / "x.svg")
