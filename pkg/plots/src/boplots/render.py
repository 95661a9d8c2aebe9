"""CSV -> static figure rendering.

Figures are deterministic: fixed style, fixed size, scrubbed metadata, no
timestamps, so regenerating a figure from the same CSV is byte-identical.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

KINDS = ("drift", "residual", "separation", "histogram")

_STYLE = {
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "boplots",
}

_METADATA = {
    ".png": {"Software": "boplots"},
    ".svg": {"Date": None},
}


class PlotDataError(Exception):
    """Missing file, empty table, or a column the figure kind needs."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: Path
    kind: str
    output: Path

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PlotDataError(f"unknown figure kind {self.kind!r}; expected one of {KINDS}")


def read_table(path):
    path = Path(path)
    if not path.exists():
        raise PlotDataError(f"input CSV not found: {path}")
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
        fields = reader.fieldnames
    if fields is None or not rows:
        raise PlotDataError(f"empty CSV: {path}")
    return fields, rows


def column(rows, name, path, cast=float):
    try:
        return [cast(r[name]) for r in rows]
    except KeyError:
        raise PlotDataError(f"{path}: missing column {name!r}") from None
    except (TypeError, ValueError):
        raise PlotDataError(f"{path}: column {name!r} is not numeric") from None


def _groups(rows, key):
    seen = {}
    for r in rows:
        seen.setdefault(r[key], []).append(r)
    return seen


def _draw_drift(ax, fields, rows, path):
    series = _groups(rows, "quantity") if "quantity" in fields else {"value": rows}
    for name, rs in sorted(series.items()):
        ts = column(rs, "t", path)
        ds = column(rs, "relative_drift", path)
        ax.plot(ts, ds, marker=".", label=name)
    ax.set_xlabel("t")
    ax.set_ylabel("relative drift")
    ax.set_yscale("symlog", linthresh=1e-16)
    ax.legend(loc="best")


def _draw_residual(ax, fields, rows, path):
    if "equation" in fields:
        series = _groups(rows, "equation")
        if "mode" in fields:
            split = {}
            for name, rs in series.items():
                for mode, sub in _groups(rs, "mode").items():
                    split[f"{name}/{mode}"] = sub
            series = split
    else:
        series = {"residual": rows}
    for name, rs in sorted(series.items()):
        ts = column(rs, "t", path)
        vals = column(rs, "residual_l2", path)
        pairs = [(t, v) for t, v in zip(ts, vals) if t > 0 and v > 0]
        if not pairs:
            raise PlotDataError(f"{path}: no positive (t, residual_l2) pairs to draw")
        ax.loglog(*zip(*pairs), marker="o", label=name)
    ax.set_xlabel("t")
    ax.set_ylabel("residual (L2)")
    ax.legend(loc="best")


def _draw_separation(ax, fields, rows, path):
    lams = column(rows, "lambda", path)
    sep = column(rows, "separation_hs", path)
    init = column(rows, "initial_distance_hs", path)
    pred = column(rows, "prediction_hs", path)
    xs = range(len(lams))
    width = 0.27
    ax.bar([x - width for x in xs], init, width, label="initial distance")
    ax.bar(list(xs), sep, width, label="separation")
    ax.bar([x + width for x in xs], pred, width, label="prediction")
    ax.set_xticks(list(xs), [f"{int(l)}" for l in lams])
    ax.set_xlabel("wavenumber")
    ax.set_ylabel("H^s distance")
    ax.set_yscale("log")
    ax.legend(loc="best")


def _draw_histogram(ax, fields, rows, path):
    ratios = column(rows, "ratio", path)
    ax.hist(ratios, bins=min(40, max(5, len(ratios) // 10 + 5)), color="#4878d0")
    ax.set_xlabel("ratio")
    ax.set_ylabel("count")


_DRAWERS = {
    "drift": _draw_drift,
    "residual": _draw_residual,
    "separation": _draw_separation,
    "histogram": _draw_histogram,
}


def render(spec):
    """Draw the figure and write it; returns the output path."""
    fields, rows = read_table(spec.input_csv)
    out = Path(spec.output)
    suffix = out.suffix.lower()
    if suffix not in (".png", ".svg"):
        raise PlotDataError(f"unsupported output format {suffix!r}; use .png or .svg")
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        try:
            _DRAWERS[spec.kind](ax, fields, rows, spec.input_csv)
            ax.set_title(f"{spec.kind}: {Path(spec.input_csv).name}")
            fig.tight_layout()
            fig.savefig(out, metadata=_METADATA[suffix])
        finally:
            plt.close(fig)
    return out
