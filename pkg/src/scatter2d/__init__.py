"""Pseudospectral solver for 2D scattering on an angular grid.

The wavefunction is sampled on equispaced angles phi_j = 2 pi j/(2M+1) and
a uniform radial mesh; the azimuthal kinetic term couples the angular
samples through a dense spectral matrix while high-order finite differences
handle the radial direction.  The resulting block-banded linear system is
closed by matching to the scattering form at the outer radius, and channel
amplitudes f_m come out of a Fourier transform of the boundary solution.
"""

from .amplitudes import (
    AmplitudeSet,
    amplitude_at,
    differential_cs,
    eikonal_sigma,
    extract_amplitudes,
    optical_residual,
    scattering_length,
    sigma_total,
    symmetrize,
    threshold_amplitude,
    total_cs,
)
from .errors import ConfigError, OutputError, RemoteError, Scatter2dError, SolverError
from .grids import (
    AngularGrid,
    FourierCoefficients,
    RadialGrid,
    fourier_to_grid,
    grid_to_fourier,
    interpolate,
    kinetic_matrix,
    make_angular_grid,
)
from .oracle import (
    PhaseShiftTable,
    barrier_phase_shifts,
    oracle_amplitude,
    oracle_amplitude_set,
    oracle_sigma,
    radial_phase_shifts,
)
from .potentials import (
    DipoleGeneral,
    DipoleIsotropic,
    DipoleTiltedPolarized,
    EllipticBarrier,
    GaussianBarrier,
    Potential,
    elliptic_radius,
)
from .solver import (
    BlockBandSystem,
    ProblemSetup,
    RadialSolution,
    assemble,
    plane_wave_samples,
    solve_band,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeSet",
    "AngularGrid",
    "BlockBandSystem",
    "ConfigError",
    "DipoleGeneral",
    "DipoleIsotropic",
    "DipoleTiltedPolarized",
    "EllipticBarrier",
    "FourierCoefficients",
    "GaussianBarrier",
    "OutputError",
    "PhaseShiftTable",
    "Potential",
    "ProblemSetup",
    "RadialGrid",
    "RadialSolution",
    "RemoteError",
    "Scatter2dError",
    "SolverError",
    "amplitude_at",
    "assemble",
    "barrier_phase_shifts",
    "differential_cs",
    "eikonal_sigma",
    "elliptic_radius",
    "extract_amplitudes",
    "fourier_to_grid",
    "grid_to_fourier",
    "interpolate",
    "kinetic_matrix",
    "make_angular_grid",
    "optical_residual",
    "oracle_amplitude",
    "oracle_amplitude_set",
    "oracle_sigma",
    "plane_wave_samples",
    "radial_phase_shifts",
    "scattering_length",
    "sigma_total",
    "solve_band",
    "symmetrize",
    "threshold_amplitude",
    "total_cs",
    "__version__",
]
