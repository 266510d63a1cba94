"""Optimal recovery of n-fold periodic convolutions from Fourier information."""

import json as _json

from ._optconv import (
    DEFAULT_GRID,
    ArgumentError,
    DegenerateInputError,
    InconsistentInterpolationError,
    Kernel,
    OptconvError,
    PreconditionError,
    RangeError,
    UnsupportedKernelError,
    convolve,
    cvd_check,
    fourier_coeff,
    gen_psi,
    norm_C,
    norm_L1,
    optimal_error,
    phi_s,
    plan,
    project,
    recover,
    residual_error,
    run_cli,
    sharpness,
    sign_changes,
)
from ._optconv import certify as _certify

__version__ = "0.1.0"


def certify(kernels, s, trials=200, seed=1, grid=DEFAULT_GRID, threads=1, perturb_alpha=0.0):
    """Runs the randomized bound check and returns the report as a dict."""
    return _json.loads(_certify(kernels, s, trials, seed, grid, threads, perturb_alpha))


def kernels(*specs):
    """Kernels from mini-syntax strings, e.g. kernels("poisson:q=0.5", "gauss:tau=0.1")."""
    return [Kernel.parse(s) for s in specs]
