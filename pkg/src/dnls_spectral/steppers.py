"""Time integration: IMEX CN-AB2 scheme, ETD2 oracle, Picard oracle.

The workhorse scheme treats the linear symbol implicitly by Crank-Nicolson
and the derivative-cubic term explicitly by two-step Adams-Bashforth
extrapolation; per mode,

    i (u^{n+1} - u^n)/dt + m_k (u^{n+1} + u^n)/2
        = alpha w_k (3/2 C_k^n - 1/2 C_k^{n-1}),

with C the dealiased spectrum of |u|^2 u.  The per-mode solve is exact
scalar division (the scheme is diagonal in Fourier space) and the
denominator i/dt + m_k/2 has imaginary part >= 1/dt, so it never vanishes.

Two independent oracles cross-check it: an exponential integrator that
advances the linear part exactly by exp(sigma_k dt) with phi1/phi2-weighted
AB2 extrapolation of the nonlinearity, and a fixed-point iteration on the
mild form u(t) = T(t) u0 + int_0^t T(t - xi) F(u(xi)) dxi.
"""

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .model import cubic_spectrum, linear_symbol
from .spectral import SpectralField

__all__ = [
    "BlowUpError",
    "NoContractionError",
    "StepperState",
    "Trajectory",
    "cnab2_bootstrap",
    "cnab2_step",
    "etd2_bootstrap",
    "etd2_step",
    "picard_solve",
    "SCHEMES",
]


class BlowUpError(RuntimeError):
    """Non-finite coefficients appeared while stepping (instability or blow-up)."""

    def __init__(self, step, detail=""):
        self.step = step
        message = f"non-finite solution coefficients at step {step}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class NoContractionError(RuntimeError):
    """Fixed-point iteration failed to reach tolerance (interval too long)."""


@dataclass
class StepperState:
    """State of a two-step scheme: current coefficients plus the previous cubic.

    `factors` carries the cached per-mode update arrays, tagged by scheme so
    a state bootstrapped for one scheme is not silently stepped by another.
    """

    n: int
    coeffs: np.ndarray
    prev_cubic: np.ndarray
    dt: float
    factors: tuple = dataclass_field(repr=False, default=None)


@dataclass
class Trajectory:
    """Snapshots of one run: strictly increasing times, fields on one grid."""

    times: np.ndarray
    fields: list
    meta: dict

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=np.float64)
        if len(self.times) != len(self.fields):
            raise ValueError("times and fields must have equal length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("snapshot times must be strictly increasing")
        grids = {f.grid for f in self.fields}
        if len(grids) > 1:
            raise ValueError("snapshots must share one grid")

    @property
    def grid(self):
        return self.fields[0].grid


def _check_finite(coeffs, step, detail=""):
    if not np.all(np.isfinite(coeffs.view(np.float64))):
        raise BlowUpError(step, detail)


def _cubic(grid, coeffs, dealias):
    # overflow here is the symptom blow-up detection reports; keep it silent
    with np.errstate(over="ignore", invalid="ignore"):
        return cubic_spectrum(SpectralField(grid, coeffs), dealias=dealias).coeffs


def _cnab2_factors(params, grid, dt):
    # u^{n+1} = A u^n + B N  with  A = (i/dt - m/2)/(i/dt + m/2), B = 1/(i/dt + m/2)
    m = linear_symbol(params, grid).m
    z = 1j / dt
    denom = z + 0.5 * m
    return ("cnab2", (z - 0.5 * m) / denom, 1.0 / denom)


def cnab2_bootstrap(params, grid, u0, dt, dealias="pad2"):
    """First step: Crank-Nicolson with the nonlinear forcing frozen at t = 0.

    One O(dt^2) local step, so the global order 2 of the two-step scheme is
    preserved; the t = 0 cubic spectrum is stored as the previous one.
    """
    dt = float(dt)
    if dt <= 0:
        raise ValueError(f"time step must be > 0, got {dt}")
    if u0.grid != grid:
        raise ValueError(f"grid mismatch: {u0.grid} vs {grid}")
    factors = _cnab2_factors(params, grid, dt)
    _, a, b = factors
    cubic0 = _cubic(grid, u0.coeffs, dealias)
    forcing = params.alpha * grid.w * cubic0
    new = a * u0.coeffs + b * forcing
    _check_finite(new, 1)
    return StepperState(1, new, cubic0, dt, factors)


def cnab2_step(state, params, grid, dealias="pad2"):
    """Advance one CN-AB2 step; raises BlowUpError on non-finite output."""
    factors = state.factors
    if factors is None or factors[0] != "cnab2":
        factors = _cnab2_factors(params, grid, state.dt)
    _, a, b = factors
    cubic_n = _cubic(grid, state.coeffs, dealias)
    with np.errstate(over="ignore", invalid="ignore"):
        forcing = params.alpha * grid.w * (1.5 * cubic_n - 0.5 * state.prev_cubic)
        new = a * state.coeffs + b * forcing
    _check_finite(new, state.n + 1)
    return StepperState(state.n + 1, new, cubic_n, state.dt, factors)


def _phi12(z):
    """phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2, cancellation-safe.

    Taylor series below |z| = 1e-2 (truncation ~ |z|^7/8! , far below 1e-16),
    closed form otherwise.
    """
    z = np.asarray(z, dtype=np.complex128)
    small = np.abs(z) < 1e-2
    zs = np.where(small, z, 0.0)
    phi1 = 1.0 + zs / 2 + zs**2 / 6 + zs**3 / 24 + zs**4 / 120 + zs**5 / 720 + zs**6 / 5040
    phi2 = 0.5 + zs / 6 + zs**2 / 24 + zs**3 / 120 + zs**4 / 720 + zs**5 / 5040 + zs**6 / 40320
    zb = np.where(small, 1.0, z)
    ez = np.exp(zb)
    phi1 = np.where(small, phi1, (ez - 1.0) / zb)
    phi2 = np.where(small, phi2, (ez - 1.0 - zb) / zb**2)
    return phi1, phi2


def _etd2_factors(params, grid, dt):
    z = linear_symbol(params, grid).sigma * dt
    phi1, phi2 = _phi12(z)
    return ("etd2", np.exp(z), dt * phi1, dt * phi2)


def _etd2_nonlinearity(params, grid, cubic):
    # spectrum of F(u) = -alpha (|u|^2 u)_x
    return (-params.alpha) * (1j * grid.w) * cubic


def etd2_bootstrap(params, grid, u0, dt, dealias="pad2"):
    """First step by ETD1 (frozen nonlinearity): u^1 = e^z u^0 + dt phi1 g^0."""
    dt = float(dt)
    if dt <= 0:
        raise ValueError(f"time step must be > 0, got {dt}")
    if u0.grid != grid:
        raise ValueError(f"grid mismatch: {u0.grid} vs {grid}")
    factors = _etd2_factors(params, grid, dt)
    _, e, p1, _ = factors
    cubic0 = _cubic(grid, u0.coeffs, dealias)
    new = e * u0.coeffs + p1 * _etd2_nonlinearity(params, grid, cubic0)
    _check_finite(new, 1)
    return StepperState(1, new, cubic0, dt, factors)


def etd2_step(state, params, grid, dealias="pad2"):
    """Exponential-integrator step: exact linear flow, AB2-extrapolated forcing.

    u^{n+1} = e^z u^n + dt [phi1(z) g^n + phi2(z) (g^n - g^{n-1})],  z = sigma dt.
    """
    factors = state.factors
    if factors is None or factors[0] != "etd2":
        factors = _etd2_factors(params, grid, state.dt)
    _, e, p1, p2 = factors
    cubic_n = _cubic(grid, state.coeffs, dealias)
    with np.errstate(over="ignore", invalid="ignore"):
        g_n = _etd2_nonlinearity(params, grid, cubic_n)
        g_prev = _etd2_nonlinearity(params, grid, state.prev_cubic)
        new = e * state.coeffs + p1 * g_n + p2 * (g_n - g_prev)
    _check_finite(new, state.n + 1)
    return StepperState(state.n + 1, new, cubic_n, state.dt, factors)


def picard_solve(params, grid, u0, t_final, nodes, tol=1e-10, max_iter=50, dealias="pad2"):
    """Fixed-point iteration on the mild form over nodes+1 uniform time points.

    Iterates u^{(m+1)}(t_i) = T(t_i) u0 + trapezoid_i[ T(t_i - xi) F(u^{(m)}(xi)) ]
    until the residual sup_i ||u^{(m+1)}(t_i) - u^{(m)}(t_i)||_0 drops below
    `tol`.  The returned trajectory's meta records the iteration count and
    final residual.  Raises NoContractionError after `max_iter` sweeps, the
    signal that t_final is too long for the iteration to contract.
    """
    t_final = float(t_final)
    nodes = int(nodes)
    if t_final <= 0:
        raise ValueError(f"t_final must be > 0, got {t_final}")
    if nodes < 1:
        raise ValueError(f"need at least 1 subinterval, got {nodes}")
    if tol <= 0:
        raise ValueError(f"tolerance must be > 0, got {tol}")
    if u0.grid != grid:
        raise ValueError(f"grid mismatch: {u0.grid} vs {grid}")

    h = t_final / nodes
    npts = nodes + 1
    sigma = linear_symbol(params, grid).sigma
    # powers[p] = per-mode multiplier of T(p h)
    powers = np.exp(sigma[None, :] * (h * np.arange(npts))[:, None])
    u_lin = powers * u0.coeffs[None, :]

    current = u_lin.copy()
    iterations = 0
    residual = np.inf
    for _ in range(max_iter):
        iterations += 1
        forcing = np.empty_like(current)
        for j in range(npts):
            forcing[j] = _etd2_nonlinearity(params, grid, _cubic(grid, current[j], dealias))
        with np.errstate(over="ignore", invalid="ignore"):
            new = u_lin.copy()
            for i in range(1, npts):
                acc = 0.5 * powers[i] * forcing[0] + 0.5 * forcing[i]
                for j in range(1, i):
                    acc += powers[i - j] * forcing[j]
                new[i] += h * acc
            if not np.all(np.isfinite(new.view(np.float64))):
                raise NoContractionError(
                    f"iteration diverged after {iterations} sweeps; shorten t_final={t_final}"
                )
            residual = float(np.max(np.sqrt(np.sum(np.abs(new - current) ** 2, axis=1))))
        current = new
        if residual <= tol:
            break
    else:
        raise NoContractionError(
            f"no contraction after {max_iter} iterations (residual {residual:.3e} > {tol:.3e}); "
            f"shorten t_final={t_final}"
        )

    times = h * np.arange(npts)
    fields = [SpectralField(grid, current[i]) for i in range(npts)]
    meta = {
        "scheme": "picard",
        "iterations": iterations,
        "residual": residual,
        "nodes": nodes,
        "t_final": t_final,
    }
    return Trajectory(times, fields, meta)


SCHEMES = {
    "cnab2": (cnab2_bootstrap, cnab2_step),
    "etd2": (etd2_bootstrap, etd2_step),
}
