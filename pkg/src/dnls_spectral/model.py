"""The equation: parameters, linear symbol, semigroup, derivative-cubic term.

The evolution solved by this package is, in physical space,

    i u_t + u_xx + i alpha (|u|^2 u)_x = i (eta u_xx + beta u_xxx + gamma u_x),

equivalently u_t = (i + eta) u_xx + beta u_xxx + gamma u_x - alpha (|u|^2 u)_x.
Per Fourier mode the linear part acts through the symbol

    sigma_k = -i w_k^2 - eta w_k^2 - i beta w_k^3 + i gamma w_k,

whose real part -eta w_k^2 is the diffusive decay.  The projected
(semidiscrete) system reads i u_hat_k' + m_k u_hat_k = alpha w_k C_hat_k with
m_k = -w_k^2 + i eta w_k^2 - beta w_k^3 + gamma w_k and C = |u|^2 u; the two
forms are consistent: i m_k = sigma_k.
"""

from dataclasses import dataclass

import numpy as np

from .spectral import SpectralField, dealias_pad_product

__all__ = [
    "ModelParams",
    "LinearSymbol",
    "linear_symbol",
    "apply_semigroup",
    "exact_linear_solution",
    "cubic_spectrum",
    "nonlinear_term",
    "semidiscrete_forcing",
]


@dataclass(frozen=True)
class ModelParams:
    """Real equation parameters.

    alpha: strength of the derivative-cubic nonlinearity.
    beta:  third-order dispersion.
    gamma: first-order transport.
    eta:   diffusion, >= 0 (eta = 0 is accepted for limit studies; the
           smoothing bound only applies for eta > 0).
    """

    alpha: float
    beta: float
    gamma: float
    eta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "eta"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"parameter {name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.eta < 0:
            raise ValueError(f"diffusion eta must be >= 0, got {self.eta}")


class LinearSymbol:
    """Per-mode symbol of the linear part and its semidiscrete twin.

    sigma[k] drives the semigroup multiplier exp(sigma_k t); m[k] is the
    coefficient in i u_hat' + m u_hat = forcing.  Both are stored in the
    grid's FFT layout.
    """

    __slots__ = ("grid", "params", "sigma", "m")

    def __init__(self, params, grid):
        w = grid.w
        w2 = w * w
        w3 = w2 * w
        self.grid = grid
        self.params = params
        self.sigma = (-params.eta) * w2 + 1j * (-w2 - params.beta * w3 + params.gamma * w)
        self.m = (-w2 - params.beta * w3 + params.gamma * w) + 1j * (params.eta * w2)
        self.sigma.flags.writeable = False
        self.m.flags.writeable = False

    @property
    def theta(self):
        """Diffusive decay rate 8 eta pi^2 / L^2: |exp(sigma_k t)| = exp(-theta k^2 t / 2)."""
        return 8.0 * self.params.eta * np.pi**2 / self.grid.L**2


def linear_symbol(params, grid):
    """Construct the per-mode linear symbol for the given parameters and grid."""
    return LinearSymbol(params, grid)


def apply_semigroup(symbol, t, field):
    """Advance a field by the exact linear flow: u_hat_k -> exp(sigma_k t) u_hat_k.

    Requires t >= 0: running the diffusive part backwards is ill-posed.
    """
    t = float(t)
    if t < 0:
        raise ValueError(f"semigroup time must be >= 0 (backward diffusion is ill-posed), got {t}")
    if field.grid != symbol.grid:
        raise ValueError(f"grid mismatch: {field.grid} vs {symbol.grid}")
    return SpectralField(field.grid, np.exp(symbol.sigma * t) * field.coeffs)


def exact_linear_solution(params, u0, t):
    """Exact solution of the alpha = 0 problem at time t (the stepper oracle)."""
    if params.alpha != 0:
        raise ValueError(f"exact linear solution requires alpha = 0, got {params.alpha}")
    return apply_semigroup(linear_symbol(params, u0.grid), t, u0)


def cubic_spectrum(field, dealias="pad2"):
    """Coefficients of |u|^2 u = u * conj(u) * u, dealiased per `dealias`."""
    return dealias_pad_product(field, field, field, mode=dealias)


def nonlinear_term(params, field, dealias="pad2"):
    """F(u) = -alpha d/dx (|u|^2 u): coefficients -alpha i w_k C_hat_k."""
    cubic = cubic_spectrum(field, dealias)
    return SpectralField(field.grid, (-params.alpha) * (1j * field.grid.w) * cubic.coeffs)


def semidiscrete_forcing(params, field, dealias="pad2"):
    """Right side alpha w_k C_hat_k of the projected system i u_hat' + m u_hat = forcing."""
    cubic = cubic_spectrum(field, dealias)
    return SpectralField(field.grid, params.alpha * field.grid.w * cubic.coeffs)
