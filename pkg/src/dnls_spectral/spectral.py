"""Periodic spectral substrate: grid, transforms, Sobolev norms, dealiasing.

A field u on [0, L) is stored by its Fourier coefficients u_hat with

    u(x_j) = sum_k u_hat[k] exp(i w_k x_j),    w_k = 2 pi k / L,

over the integer mode set K = {-N/2, ..., N/2 - 1}, kept in FFT layout
(numpy ordering; the Nyquist slot counts as mode -N/2).  The coefficients
are the trapezoid-rule discretization of (1/L) * int_0^L u exp(-i w_k x) dx,
so the forward transform is fft(samples)/N and the inverse is ifft(coeffs)*N.
With this normalization Parseval reads (1/N) sum_j |u(x_j)|^2 = sum_k |u_hat_k|^2.
"""

import numpy as np

__all__ = [
    "PeriodicGrid",
    "SpectralField",
    "dft_forward",
    "dft_inverse",
    "from_modes",
    "hs_inner",
    "hs_norm",
    "derivative",
    "truncate",
    "extend",
    "dealias_pad_product",
]


class PeriodicGrid:
    """Uniform grid of N collocation points x_j = j L / N on [0, L).

    Attributes
    ----------
    L : float
        Domain length (> 0).
    N : int
        Number of collocation points / retained modes (even, >= 4).
    dx : float
        Grid spacing L / N.
    x : ndarray
        Collocation points, shape (N,).
    k : int64 ndarray
        Integer mode indices in FFT layout: 0, 1, ..., N/2-1, -N/2, ..., -1.
    w : ndarray
        Wavenumbers 2 pi k / L, same layout as k.
    """

    def __init__(self, length, n):
        length = float(length)
        n = int(n)
        if not np.isfinite(length) or length <= 0:
            raise ValueError(f"domain length must be positive and finite, got {length}")
        if n < 4 or n % 2:
            raise ValueError(f"mode count must be an even integer >= 4, got {n}")
        self.L = length
        self.N = n
        self.dx = length / n
        self.x = self.dx * np.arange(n)
        self.k = np.rint(np.fft.fftfreq(n, 1.0 / n)).astype(np.int64)
        self.w = (2.0 * np.pi / length) * self.k.astype(np.float64)
        for arr in (self.x, self.k, self.w):
            arr.flags.writeable = False

    def __eq__(self, other):
        return isinstance(other, PeriodicGrid) and self.L == other.L and self.N == other.N

    def __hash__(self):
        return hash((self.L, self.N))

    def __repr__(self):
        return f"PeriodicGrid(L={self.L}, N={self.N})"


def _same_grid(*fields):
    grid = fields[0].grid
    for f in fields[1:]:
        if f.grid != grid:
            raise ValueError(f"grid mismatch: {f.grid} vs {grid}")
    return grid


class SpectralField:
    """A function on a :class:`PeriodicGrid`, stored as Fourier coefficients.

    Coefficients are copied on construction and frozen; operations return
    new fields, so values are safe to share between threads.
    """

    __slots__ = ("grid", "coeffs")

    def __init__(self, grid, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.shape != (grid.N,):
            raise ValueError(f"expected {grid.N} coefficients, got shape {coeffs.shape}")
        coeffs = coeffs.copy()
        coeffs.flags.writeable = False
        self.grid = grid
        self.coeffs = coeffs

    def samples(self):
        """Physical values u(x_j) at the collocation points."""
        return np.fft.ifft(self.coeffs) * self.grid.N

    def __add__(self, other):
        grid = _same_grid(self, other)
        return SpectralField(grid, self.coeffs + other.coeffs)

    def __sub__(self, other):
        grid = _same_grid(self, other)
        return SpectralField(grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return SpectralField(self.grid, self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"SpectralField({self.grid!r})"


def dft_forward(samples, grid):
    """Transform physical samples to a SpectralField.

    u_hat_k = (1/N) sum_j samples_j exp(-i w_k x_j), the trapezoid rule for
    the coefficient integral on the uniform grid.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.shape != (grid.N,):
        raise ValueError(f"expected {grid.N} samples, got shape {samples.shape}")
    return SpectralField(grid, np.fft.fft(samples) / grid.N)


def dft_inverse(field):
    """Physical samples u(x_j) = sum_k u_hat_k exp(i w_k x_j)."""
    return field.samples()


def from_modes(grid, modes):
    """Build a field from a {mode index: coefficient} mapping (other modes 0)."""
    coeffs = np.zeros(grid.N, dtype=np.complex128)
    lookup = {int(k): i for i, k in enumerate(grid.k)}
    for k, value in modes.items():
        if int(k) not in lookup:
            raise ValueError(f"mode {k} not representable on {grid!r}")
        coeffs[lookup[int(k)]] = value
    return SpectralField(grid, coeffs)


def _check_sobolev_order(s):
    s = float(s)
    if not np.isfinite(s) or s < 0:
        raise ValueError(f"Sobolev order must be finite and >= 0, got {s}")
    return s


def _sobolev_weights(grid, s):
    return (1.0 + grid.k.astype(np.float64) ** 2) ** s


def hs_inner(f, g, s):
    """Periodic Sobolev inner product <f, g>_s = L sum_k (1+k^2)^s f_hat_k conj(g_hat_k).

    Note the domain-length factor L; the matching norm :func:`hs_norm` is
    defined without it, so hs_norm(f, s)**2 == hs_inner(f, f, s).real / L.
    """
    grid = _same_grid(f, g)
    s = _check_sobolev_order(s)
    return complex(grid.L * np.sum(_sobolev_weights(grid, s) * f.coeffs * np.conj(g.coeffs)))


def hs_norm(f, s):
    """Periodic Sobolev norm: sqrt(sum_k (1+k^2)^s |f_hat_k|^2).

    Carries no domain-length factor (see :func:`hs_inner`); at s = 0 this is
    the L^2 norm up to the constant sqrt(L).
    """
    s = _check_sobolev_order(s)
    return float(np.sqrt(np.sum(_sobolev_weights(f.grid, s) * np.abs(f.coeffs) ** 2)))


def derivative(field, order=1):
    """Spectral derivative: multiplies coefficients by (i w_k)^order."""
    order = int(order)
    if order < 0:
        raise ValueError(f"derivative order must be >= 0, got {order}")
    # repeated multiply keeps the pure-imaginary / pure-real structure exact
    mult = np.ones(field.grid.N, dtype=np.complex128)
    for _ in range(order):
        mult = mult * (1j * field.grid.w)
    return SpectralField(field.grid, mult * field.coeffs)


def _resample(coeffs, n_dst):
    """Copy the shared low modes between FFT-layout arrays of different length."""
    out = np.zeros(n_dst, dtype=np.complex128)
    half = min(len(coeffs), n_dst) // 2
    out[:half] = coeffs[:half]
    out[-half:] = coeffs[-half:]
    return out


def truncate(field, m):
    """Project onto the M-mode grid, keeping modes {-M/2, ..., M/2 - 1}.

    The retained coefficients are unchanged, so the projection is orthogonal:
    <truncate(g, M) - g, phi>_s = 0 for every retained mode phi.  M = N is
    the identity.
    """
    m = int(m)
    if m % 2 or not 4 <= m <= field.grid.N:
        raise ValueError(f"truncation size must be an even integer in [4, {field.grid.N}], got {m}")
    return SpectralField(PeriodicGrid(field.grid.L, m), _resample(field.coeffs, m))


def extend(field, m):
    """Zero-pad onto a finer M-mode grid (M >= N); exact for trig polynomials."""
    m = int(m)
    if m % 2 or m < field.grid.N:
        raise ValueError(f"extension size must be an even integer >= {field.grid.N}, got {m}")
    return SpectralField(PeriodicGrid(field.grid.L, m), _resample(field.coeffs, m))


def dealias_pad_product(a, b, c, mode="pad2"):
    """Pointwise cubic product a * conj(b) * c, exactly dealiased.

    "pad2" zero-pads to a 2N grid, multiplies pointwise and truncates back,
    which reproduces the exact triple convolution restricted to K: the
    product of N-mode fields spans modes [-3N/2 + 1, 3N/2 - 2], and on the
    2N grid every alias of those lands outside K.  "none" multiplies on the
    native grid (aliased; for ablation only).
    """
    grid = _same_grid(a, b, c)
    if mode == "pad2":
        big = 2 * grid.N
        pa = np.fft.ifft(_resample(a.coeffs, big)) * big
        pb = np.fft.ifft(_resample(b.coeffs, big)) * big
        pc = np.fft.ifft(_resample(c.coeffs, big)) * big
        product = np.fft.fft(pa * np.conj(pb) * pc) / big
        return SpectralField(grid, _resample(product, grid.N))
    if mode == "none":
        product = a.samples() * np.conj(b.samples()) * c.samples()
        return SpectralField(grid, np.fft.fft(product) / grid.N)
    raise ValueError(f"unknown dealiasing mode {mode!r} (expected 'pad2' or 'none')")
