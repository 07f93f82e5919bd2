"""Fourier coefficients of maps sampled on the unit circle, their one-sided
support, and the harmonic extension into the disk.

Coefficients are f^(n) = (1/2pi) int f(e^{it}) e^{-int} dt, computed with the
trapezoidal rule (a DFT), which is exact for trigonometric polynomials of
degree below N - M and spectrally accurate for smooth maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError, WindowTooWide

MIN_SAMPLES = 64


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def default_resolution(window: int) -> int:
    """max(1024, 8M), rounded up to a power of two."""
    n = max(1024, 8 * int(window))
    return 1 << (n - 1).bit_length()


@dataclass(frozen=True, eq=False)
class SampledCircleMap:
    """values[k] = f(exp(2 pi i k / N)), N a power of two >= 64."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex).ravel()
        if not _is_power_of_two(v.size) or v.size < MIN_SAMPLES:
            raise DomainError(f"sample count must be a power of two >= {MIN_SAMPLES}, got {v.size}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def N(self) -> int:
        return self.values.size

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.N) / self.N

    def __len__(self) -> int:
        return self.N


def sample_map(f: Callable, N: int) -> SampledCircleMap:
    """Sample ``f`` at the N-th roots of unity.

    ``f`` is called once on the whole array of points; callbacks that only
    accept scalars are evaluated point by point.
    """
    if not _is_power_of_two(N) or N < MIN_SAMPLES:
        raise DomainError(f"N must be a power of two >= {MIN_SAMPLES}, got {N}")
    zeta = np.exp(2j * np.pi * np.arange(N) / N)
    try:
        values = np.asarray(f(zeta), dtype=complex)
    except TypeError:
        values = None
    if values is None or values.shape != zeta.shape:
        values = np.array([complex(f(complex(z))) for z in zeta])
    return SampledCircleMap(values)


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    """Coefficients f^(n) for -M <= n <= M.

    ``tail_mass`` is the sum of |f^(n)| over the DFT indices outside the window;
    it bounds the truncation error of the harmonic extension on the disk.
    """

    coefficients: np.ndarray
    window: int
    source_resolution: int
    tail_mass: float = 0.0

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex)
        if c.shape != (2 * self.window + 1,):
            raise DomainError("coefficient array must have length 2M + 1")
        c.flags.writeable = False
        object.__setattr__(self, "coefficients", c)

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.window, self.window + 1)

    def __getitem__(self, n: int) -> complex:
        if not -self.window <= n <= self.window:
            raise KeyError(f"index {n} outside the window [-{self.window}, {self.window}]")
        return complex(self.coefficients[n + self.window])

    def items(self):
        return zip(self.indices.tolist(), self.coefficients.tolist())

    @property
    def nonnegative(self) -> np.ndarray:
        """f^(0), f^(1), ..., f^(M)."""
        return self.coefficients[self.window:]

    @property
    def negative(self) -> np.ndarray:
        """0, f^(-1), ..., f^(-M) (the leading 0 aligns powers of conj(z))."""
        c = self.coefficients[: self.window][::-1]
        return np.concatenate(([0j], c))


def spectrum(s: SampledCircleMap, M: int) -> FourierSpectrum:
    N = s.N
    if M < 1:
        raise DomainError("window must be a positive integer")
    if 2 * M + 1 > N:
        raise WindowTooWide(f"window {M} needs at least {2 * M + 1} samples, have {N}")
    full = np.fft.fft(s.values) / N
    idx = np.arange(-M, M + 1)
    inside = np.zeros(N, dtype=bool)
    inside[idx % N] = True
    tail = float(np.sum(np.abs(full[~inside])))
    return FourierSpectrum(full[idx % N], M, N, tail)


def support_profile(sp: FourierSpectrum, tol: float | None = None) -> tuple[int | None, int | None]:
    """Smallest and largest n in the window with |f^(n)| > tol.

    The default tolerance is 1e-9 * max |f^(n)|.
    """
    mags = np.abs(sp.coefficients)
    if tol is None:
        tol = 1e-9 * float(mags.max(initial=0.0))
    elif tol <= 0:
        raise DomainError("tol must be positive")
    active = sp.indices[mags > tol]
    if active.size == 0:
        return None, None
    return int(active[0]), int(active[-1])


def _check_disk(z) -> np.ndarray:
    w = np.asarray(z, dtype=complex)
    if np.any(np.abs(w) >= 1.0):
        raise DomainError("harmonic extension is evaluated inside the unit disk only")
    return w


def harmonic_extension(sp: FourierSpectrum, z):
    """F(z) = sum_{n>=0} f^(n) z^n + sum_{n>=1} f^(-n) conj(z)^n, cut at the window."""
    w = _check_disk(z)
    out = P.polyval(w, sp.nonnegative) + P.polyval(np.conj(w), sp.negative)
    return complex(out) if np.ndim(z) == 0 else out


def wirtinger(sp: FourierSpectrum, z):
    """(F_z, F_zbar) of the truncated harmonic extension."""
    w = _check_disk(z)
    fz = P.polyval(w, P.polyder(sp.nonnegative))
    fzbar = P.polyval(np.conj(w), P.polyder(sp.negative))
    if np.ndim(z) == 0:
        return complex(fz), complex(fzbar)
    return fz, fzbar
