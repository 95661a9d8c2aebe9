"""Trajectory export: CSV coefficient tables and the binary snapshot format.

Binary layout (all little-endian):

    bytes 0-5   magic b"BOLAB1"
    float64     grid period scale lambda
    uint32      n_modes
    uint32      n_snapshots
    then per snapshot:
        float64     time
        complex64 * n_modes   coefficients in FFT order

Coefficients are stored single-precision; the format is a compact archive,
not a restart file.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import BolabError
from .evolution import EvolutionConfig, Trajectory
from .spectral import PeriodicGrid, SpectralField

MAGIC = b"BOLAB1"


def save_trajectory(path, traj):
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<d", traj.grid.lam))
        fh.write(struct.pack("<II", traj.grid.n_modes, len(traj.states)))
        for t, state in zip(traj.times, traj.states):
            fh.write(struct.pack("<d", float(t)))
            fh.write(np.asarray(state.coeffs, dtype="<c8").tobytes())


def load_trajectory(path, config=None):
    """Read a snapshot file; if config is None a matching stub config is built."""
    with open(path, "rb") as fh:
        magic = fh.read(6)
        if magic != MAGIC:
            raise BolabError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
        (lam,) = struct.unpack("<d", fh.read(8))
        n_modes, n_snap = struct.unpack("<II", fh.read(8))
        grid = PeriodicGrid(lam, n_modes)
        times, states = [], []
        for _ in range(n_snap):
            (t,) = struct.unpack("<d", fh.read(8))
            raw = fh.read(8 * n_modes)
            coeffs = np.frombuffer(raw, dtype="<c8").astype(complex)
            times.append(t)
            states.append(SpectralField(grid, coeffs))
    if config is None:
        dt = times[1] - times[0] if len(times) > 1 else 1e-3
        config = EvolutionConfig(grid=grid, dt=dt, t_final=times[-1])
    return Trajectory(np.array(times), states, config)


def trajectory_rows(traj):
    """Header + rows for the CSV coefficient table (time, re_k, im_k, ...)."""
    n = traj.grid.n_modes
    ks = [int(k) for k in np.fft.fftfreq(n, d=1.0 / n)]
    order = np.argsort(ks)  # ascending wavenumber for readability
    header = ["time"]
    for j in order:
        header += [f"re_{ks[j]}", f"im_{ks[j]}"]
    rows = []
    for t, state in zip(traj.times, traj.states):
        row = [float(t)]
        c = state.coeffs
        for j in order:
            row += [float(c[j].real), float(c[j].imag)]
        rows.append(row)
    return header, rows
