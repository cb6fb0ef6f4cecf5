"""Dark states of laser-driven atoms and their destabilization.

Thin wrapper over the compiled extension module.  The heavy lifting (master
equation assembly, stationary and periodically driven solvers, parameter
sweeps) lives in C++; this package re-exports the bound surface.
"""

from ._darksim import (
    Experiment,
    SphericalField,
    __version__,
    apply_parameter,
    dark_space,
    dark_state_count,
    j10_population,
    j10_width,
    lambda_incoherent_population,
    lambda_photon_rate,
    lambda_rate_population,
    linear_polarization_at_angle,
    make_preset,
    preset_names,
    rabi_matrix,
    run_scan,
    solve_point,
    spherical_components,
    two_level_population,
    wigner3j,
)

__all__ = [
    "Experiment",
    "SphericalField",
    "__version__",
    "apply_parameter",
    "dark_space",
    "dark_state_count",
    "j10_population",
    "j10_width",
    "lambda_incoherent_population",
    "lambda_photon_rate",
    "lambda_rate_population",
    "linear_polarization_at_angle",
    "make_preset",
    "preset_names",
    "rabi_matrix",
    "run_scan",
    "solve_point",
    "spherical_components",
    "two_level_population",
    "wigner3j",
]
