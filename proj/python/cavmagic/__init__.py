"""Scattering of a laser-driven multilevel atomic ensemble into a two-mode cavity.

Exact Wigner/Clebsch-Gordan algebra, polarization-resolved perturbative
scattering rates, the collective polariton model with its interference magic
frequency, Monte Carlo ensemble geometry, and least-squares spectrum fits.
"""

from ._core import (
    OBSERVED_DIP_MHZ,
    AtomCloud,
    AveragedStrengths,
    CavityDriveParams,
    FitResult,
    LevelScheme,
    MagicFrequency,
    Map2d,
    MapTracePoint,
    Spectrum,
    TransitionTable,
    ZeemanDistribution,
    __version__,
    averaged_spectrum,
    coherent_photon_number,
    coupling_table,
    default_level_scheme_text,
    dip_shape_approx,
    effective_atom_number,
    explicit_cloud,
    find_magic_frequency,
    fit_dip,
    fit_maxima_trace,
    fit_prefactor,
    make_grid,
    map_2d,
    polarizability,
    polarizability_minimum,
    read_spectrum_csv,
    sample_cloud,
    scattering_amplitude,
    scattering_rate,
    spatial_factor,
    wigner3j,
    wigner6j,
    write_spectrum_csv,
    zeeman_average,
)

__all__ = [
    "OBSERVED_DIP_MHZ",
    "AtomCloud",
    "AveragedStrengths",
    "CavityDriveParams",
    "FitResult",
    "LevelScheme",
    "MagicFrequency",
    "Map2d",
    "MapTracePoint",
    "Spectrum",
    "TransitionTable",
    "ZeemanDistribution",
    "__version__",
    "averaged_spectrum",
    "coherent_photon_number",
    "coupling_table",
    "default_level_scheme_text",
    "dip_shape_approx",
    "effective_atom_number",
    "explicit_cloud",
    "find_magic_frequency",
    "fit_dip",
    "fit_maxima_trace",
    "fit_prefactor",
    "make_grid",
    "map_2d",
    "polarizability",
    "polarizability_minimum",
    "read_spectrum_csv",
    "sample_cloud",
    "scattering_amplitude",
    "scattering_rate",
    "spatial_factor",
    "wigner3j",
    "wigner6j",
    "write_spectrum_csv",
    "zeeman_average",
]
