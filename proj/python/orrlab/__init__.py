"""Sheared-frame spectral solver and norm machinery for 2D Euler near Couette.

The heavy lifting lives in the compiled extension; this package re-exports
the main operations.
"""

from orrlab._core import (  # noqa: F401
    BlowupError,
    ConfigError,
    DivergenceError,
    Grid,
    LemmaReport,
    MultiplierSpec,
    RangeError,
    SpectralField,
    ToyGrowthFit,
    ToyTrajectory,
    WeightSystem,
    fit_growth_exponents,
    gevrey_norm,
    integrate_toy,
    linear_evolve,
    make_field,
    orr_streamfunction,
    run_experiment_file,
    run_experiment_json,
    run_lemma,
    sobolev_norm,
    sobolev_norm_physical,
    xavg_feedback,
)

__all__ = [
    "BlowupError",
    "ConfigError",
    "DivergenceError",
    "Grid",
    "LemmaReport",
    "MultiplierSpec",
    "RangeError",
    "SpectralField",
    "ToyGrowthFit",
    "ToyTrajectory",
    "WeightSystem",
    "fit_growth_exponents",
    "gevrey_norm",
    "integrate_toy",
    "linear_evolve",
    "make_field",
    "orr_streamfunction",
    "run_experiment_file",
    "run_experiment_json",
    "run_lemma",
    "sobolev_norm",
    "sobolev_norm_physical",
    "xavg_feedback",
]
