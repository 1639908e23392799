"""Bose condensation of matter coupled to a cavity mode."""

from ._core import (
    Error,
    DomainError,
    InstabilityError,
    DivergenceError,
    ConvergenceError,
    ConfigError,
    Variant,
    Phase,
    LimitForm,
    ModelParams,
    critical_chemical_potential,
    critical_density,
    classify,
    polylog,
    bose_density,
    spectrum,
    occupations,
    condensate_limits,
    thermal_expectations,
    solve_mu,
    limiting_mu,
    finite_volume_condensates,
    asymptotic_mu,
    asymptotic_gap,
    run_sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
