"""Spectral solver and diagnostics for arctan-type fast diffusion on the circle."""

from ._afd import (
    AfdError,
    ConfigError,
    InsufficientRecords,
    InvalidArgument,
    InvalidPreset,
    PositivityViolation,
    SlopeBlowup,
    check_inequality_1,
    check_inequality_2,
    decay_bound,
    derivative,
    energy_dissipation,
    entropy,
    entropy_dissipation,
    fd_derivative,
    grid_points,
    heat_mollify,
    hilbert,
    lyapunov,
    preset,
    preset_names,
    quadrature,
    random_positive_density,
    rhs,
    rhs_theta,
    simulate,
    stable_dt,
    theta_from_u,
    theta_linf,
    w11_seminorm,
    wiener_norm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
