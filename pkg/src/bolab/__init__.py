"""bolab: a pseudospectral laboratory for the periodic Benjamin-Ono family.

Core layers:

* spectral   - grids, Fourier fields, projections, multiplier calculus
* evolution  - exponential integrators for u_t + dx D^(2a) u = u u_x,
               free propagators, and the exact symmetries
* gauge      - the u -> F -> W -> w transform chain and its identity checks
* invariants - mean / momentum / energy and Sobolev norms with drift reports
* bourgain   - windowed space-time norms, dyadic decompositions, and the
               block-product survey machinery
* counting   - exhaustive lattice-pair counting behind the L4 embedding
* experiments- scripted reproductions (free-wave approximation window,
               non-uniform-continuity demo, symmetry commutation checks)
* cli        - batch front door writing CSV/JSON reports
"""

from .spectral import (
    PeriodicGrid,
    SpectralField,
    antiderivative,
    dx,
    frac_deriv,
    from_harmonics,
    from_spectral,
    gauge_exponential,
    hilbert,
    multiply,
    physical_real,
    project,
    to_spectral,
)
from .evolution import (
    EvolutionConfig,
    Trajectory,
    dilate,
    dilate_field,
    evolve,
    free_propagate,
    galilean_shift,
    mean_shift,
    unshift,
)
from .gauge import (
    GaugeState,
    build_gauge,
    f_equation_residual,
    reconstruct_high_modes,
    reconstruct_u,
    w_equation_residual,
)
from .invariants import DriftReport, drift, energy, momentum, sobolev_norm

__version__ = "0.1.0"
