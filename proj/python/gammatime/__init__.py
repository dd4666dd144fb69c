"""Gamma process laboratory."""

import json as _json
import pkgutil as _pkgutil

# The compiled module may live in a build tree next to this source package.
__path__ = _pkgutil.extend_path(__path__, __name__)

from gammatime._core import (  # noqa: E402
    DomainError,
    NumericError,
    PreconditionError,
    default_manifest,
    e1,
    exp_martingale,
    f_norm,
    fourier,
    gamma_cdf,
    h_inverse,
    integrable,
    laplace,
    modular,
    moment,
    poly_martingale_coefficients,
    qv_modular,
    sample_path,
    sample_symmetric,
    thorin_k,
)
from gammatime._core import run_check as _run_check  # noqa: E402


def run_check(name, seed=42, reps=0, jobs=1):
    """Run one suite check; returns the parsed report."""
    return _json.loads(_run_check(name, seed=seed, reps=reps, jobs=jobs))


__all__ = [
    "DomainError",
    "NumericError",
    "PreconditionError",
    "default_manifest",
    "e1",
    "exp_martingale",
    "f_norm",
    "fourier",
    "gamma_cdf",
    "h_inverse",
    "integrable",
    "laplace",
    "modular",
    "moment",
    "poly_martingale_coefficients",
    "qv_modular",
    "run_check",
    "sample_path",
    "sample_symmetric",
    "thorin_k",
]
