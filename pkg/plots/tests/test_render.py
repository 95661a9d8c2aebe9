"""Rendering: every kind from fixtures, idempotency, and error reporting."""

import pytest

from boplots import FigureSpec, PlotDataError, render
from boplots.cli import main


def out_path(tmp_path, name="fig.png"):
    return tmp_path / name


class TestKinds:
    def test_drift_renders(self, tmp_path, drift_csv):
        out = render(FigureSpec(drift_csv, "drift", out_path(tmp_path)))
        assert out.exists() and out.stat().st_size > 0

    def test_constant_drift_renders_flat_line(self, tmp_path, constant_drift_csv):
        out = render(FigureSpec(constant_drift_csv, "drift", out_path(tmp_path)))
        assert out.exists()

    def test_residual_renders_loglog(self, tmp_path, residual_csv):
        out = render(FigureSpec(residual_csv, "residual", out_path(tmp_path)))
        assert out.exists()

    def test_separation_renders_bars(self, tmp_path, separation_csv):
        out = render(FigureSpec(separation_csv, "separation", out_path(tmp_path)))
        assert out.exists()

    def test_histogram_renders(self, tmp_path, histogram_csv):
        out = render(FigureSpec(histogram_csv, "histogram", out_path(tmp_path)))
        assert out.exists()

    def test_svg_output(self, tmp_path, histogram_csv):
        out = render(FigureSpec(histogram_csv, "histogram",
                                out_path(tmp_path, "fig.svg")))
        assert out.exists()
        assert b"<svg" in out.read_bytes()[:200]


class TestIdempotency:
    @pytest.mark.parametrize("suffix", ["png", "svg"])
    def test_regeneration_is_byte_identical(self, tmp_path, drift_csv, suffix):
        a = render(FigureSpec(drift_csv, "drift", out_path(tmp_path, f"a.{suffix}")))
        b = render(FigureSpec(drift_csv, "drift", out_path(tmp_path, f"b.{suffix}")))
        assert a.read_bytes() == b.read_bytes()

    def test_input_not_mutated(self, tmp_path, separation_csv):
        before = separation_csv.read_bytes()
        render(FigureSpec(separation_csv, "separation", out_path(tmp_path)))
        assert separation_csv.read_bytes() == before


class TestErrors:
    def test_missing_file_named(self, tmp_path):
        with pytest.raises(PlotDataError) as err:
            render(FigureSpec(tmp_path / "nope.csv", "drift", out_path(tmp_path)))
        assert "nope.csv" in str(err.value)

    def test_empty_csv_named(self, tmp_path, empty_csv):
        with pytest.raises(PlotDataError) as err:
            render(FigureSpec(empty_csv, "drift", out_path(tmp_path)))
        assert "empty" in str(err.value)
        assert "empty.csv" in str(err.value)

    def test_wrong_schema_names_column(self, tmp_path, histogram_csv):
        with pytest.raises(PlotDataError) as err:
            render(FigureSpec(histogram_csv, "separation", out_path(tmp_path)))
        assert "separation_hs" in str(err.value) or "lambda" in str(err.value)

    def test_unknown_kind_rejected(self, tmp_path, drift_csv):
        with pytest.raises(PlotDataError):
            FigureSpec(drift_csv, "pie", out_path(tmp_path))

    def test_bad_extension_rejected(self, tmp_path, drift_csv):
        with pytest.raises(PlotDataError):
            render(FigureSpec(drift_csv, "drift", out_path(tmp_path, "fig.pdf")))


class TestCli:
    def test_happy_path(self, tmp_path, histogram_csv, capsys):
        code = main(["histogram", str(histogram_csv),
                     "-o", str(out_path(tmp_path))])
        assert code == 0
        assert out_path(tmp_path).exists()

    def test_error_exit_nonzero(self, tmp_path, capsys):
        code = main(["drift", str(tmp_path / "missing.csv"),
                     "-o", str(out_path(tmp_path))])
        assert code == 1
        assert "missing.csv" in capsys.readouterr().err
