"""Nonlocal Sobolev and Orlicz inequality checks."""

from ._nlsob import (
    ConfigError,
    critical_curve,
    critical_exponent,
    describe,
    fit_power,
    gamma_s,
    kernel_value,
    luxemburg_norm,
    nu_sharp,
    run_config,
    seminorm,
    verify_gns,
    verify_inverse_problem,
)

__all__ = [
    "ConfigError",
    "critical_curve",
    "critical_exponent",
    "describe",
    "fit_power",
    "gamma_s",
    "kernel_value",
    "luxemburg_norm",
    "nu_sharp",
    "run_config",
    "seminorm",
    "verify_gns",
    "verify_inverse_problem",
]
