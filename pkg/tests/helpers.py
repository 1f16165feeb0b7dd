"""Shared test utilities: seeded random fields and independent oracles.

The oracles here deliberately avoid the library's FFT-based paths: the
triple convolution is a direct summation over mode triples and the
coefficient quadrature is composite Simpson on a dense grid.
"""

import numpy as np

from dnls_spectral import PeriodicGrid, SpectralField


def random_field(grid, rng, decay=2.0, kmax=None):
    """Random trig polynomial with |coefficients| ~ (1+|k|)^-decay."""
    k = grid.k.astype(np.float64)
    amp = 1.0 / (1.0 + np.abs(k)) ** decay
    if kmax is not None:
        amp = np.where(np.abs(k) <= kmax, amp, 0.0)
    coeffs = amp * (rng.standard_normal(grid.N) + 1j * rng.standard_normal(grid.N))
    return SpectralField(grid, coeffs)


def triple_convolution(field):
    """O(N^3) oracle: C_k = sum_{a-b+c=k; a,b,c,k in K} u_a conj(u_b) u_c."""
    grid = field.grid
    n = grid.N
    ks = grid.k.astype(np.int64)
    coeffs = field.coeffs
    out = np.zeros(n, dtype=np.complex128)
    for ia in range(n):
        for ib in range(n):
            base = coeffs[ia] * np.conj(coeffs[ib])
            if base == 0:
                continue
            targets = ks[ia] - ks[ib] + ks
            valid = (targets >= -n // 2) & (targets < n // 2)
            np.add.at(out, targets[valid] % n, base * coeffs[valid])
    return out


def simpson_coefficient(func, length, k, n_intervals=100_000):
    """Composite-Simpson quadrature of (1/L) int_0^L f(x) exp(-i w_k x) dx."""
    xs = np.linspace(0.0, length, n_intervals + 1)
    weights = np.ones(n_intervals + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    values = func(xs) * np.exp(-2j * np.pi * k * xs / length)
    return (length / n_intervals / 3.0) * np.sum(weights * values) / length


def mode_index(grid, k):
    """Position of integer mode k in the FFT-layout coefficient array."""
    k = int(k)
    if not -grid.N // 2 <= k < grid.N // 2:
        raise ValueError(f"mode {k} not on grid")
    return k % grid.N


def gaussian(center, width=1.0):
    return lambda x: np.exp(-(((x - center) / width) ** 2))
