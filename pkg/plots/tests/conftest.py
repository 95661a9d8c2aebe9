"""Hand-written fixture CSVs mirroring the documented report schemas.

The fixtures are independent of the solver package on purpose: the figure
component must build and test with only these files present.
"""

import pytest

CRLF = "\r\n"


def _write(path, header, rows):
    lines = [",".join(header)] + [",".join(str(v) for v in r) for r in rows]
    path.write_text(CRLF.join(lines) + CRLF, encoding="utf-8")
    return path


@pytest.fixture
def drift_csv(tmp_path):
    rows = []
    for q, base in (("mean", 0.0), ("momentum", 1e-14), ("energy", 1e-12)):
        for i in range(6):
            rows.append([q, 0.1 * i, 3.14159 + base * i, base * i])
    return _write(tmp_path / "drift.csv",
                  ["quantity", "t", "value", "relative_drift"], rows)


@pytest.fixture
def constant_drift_csv(tmp_path):
    rows = [["momentum", 0.1 * i, 2.71828, 0.0] for i in range(5)]
    return _write(tmp_path / "flat.csv",
                  ["quantity", "t", "value", "relative_drift"], rows)


@pytest.fixture
def residual_csv(tmp_path):
    rows = []
    for eq in ("potential", "wave"):
        for mode, scale in (("exact", 1e-12), ("fd", 1e-5)):
            for i in range(1, 6):
                rows.append([eq, mode, 0.01 * i, scale * i * i])
    return _write(tmp_path / "residuals.csv",
                  ["equation", "mode", "t", "residual_l2"], rows)


@pytest.fixture
def separation_csv(tmp_path):
    rows = [
        [8, 0.21, 4.68, 5.89, 3.57],
        [16, 0.125, 3.94, 5.30, 3.55],
        [32, 0.074, 3.31, 4.85, 3.55],
    ]
    return _write(tmp_path / "illposed.csv",
                  ["lambda", "t_lambda", "initial_distance_hs",
                   "separation_hs", "prediction_hs"], rows)


@pytest.fixture
def histogram_csv(tmp_path):
    rows = [[i, 64, 1.0, 0.3 + 0.01 * (i % 37), 0.5, (0.3 + 0.01 * (i % 37)) / 0.5]
            for i in range(120)]
    return _write(tmp_path / "strichartz.csv",
                  ["sample_id", "N", "T", "ratio", "bound", "ratio_over_bound"], rows)


@pytest.fixture
def empty_csv(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    return path
