"""Figures for bolab CSV reports.

The package reads only CSV files (never binary snapshots), so it installs
and runs with the solver package absent.  Four figure kinds:

* drift      - relative drift of conserved quantities over time
* residual   - residual magnitudes on log-log axes
* separation - per-wavenumber bars for the flow-map separation demo
* histogram  - distribution of survey ratios
"""

from .render import FigureSpec, PlotDataError, render

__version__ = "0.1.0"
