"""Finite Blaschke products, their quotients, and the zero-scaling homotopy.

A Blaschke product of degree n is

    B(z) = sigma * prod_k (z - z_k) / (1 - conj(z_k) z),   |z_k| < 1, |sigma| = 1,

and a rational circle map is a quotient B1/B2 of two such products.  Every
object here is immutable; evaluation is vectorized over numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, PoleProximity

#: zeros with modulus >= 1 - DISK_EPS are rejected at construction
DISK_EPS = 1e-9
#: |1 - conj(z_k) z| below this raises PoleProximity
POLE_EPS = 1e-12
#: tolerance for "unit modulus" of evaluation points
UNIT_TOL = 1e-9

TWO_PI = 2.0 * math.pi


def _as_zero_tuple(zeros: Iterable) -> tuple[complex, ...]:
    out = []
    for z in zeros:
        if isinstance(z, (list, tuple)):
            if len(z) != 2:
                raise DomainError(f"zero given as pair must have two entries, got {z!r}")
            z = complex(float(z[0]), float(z[1]))
        out.append(complex(z))
    return tuple(out)


@dataclass(frozen=True)
class BlaschkeProduct:
    """sigma * prod (z - z_k)/(1 - conj(z_k) z) with sigma = exp(i*sigma_angle).

    Zeros are kept in the order given; repeated entries encode multiplicity.
    """

    sigma_angle: float = 0.0
    zeros: tuple[complex, ...] = ()

    def __post_init__(self):
        zeros = _as_zero_tuple(self.zeros)
        for z in zeros:
            if not (abs(z) < 1.0 - DISK_EPS):
                raise DomainError(
                    f"zero {z!r} violates |z| < 1 - {DISK_EPS:g} (modulus {abs(z)!r})"
                )
        angle = float(self.sigma_angle)
        if not math.isfinite(angle):
            raise DomainError(f"sigma_angle must be finite, got {angle!r}")
        angle = math.fmod(angle, TWO_PI)
        if angle < 0.0:
            angle += TWO_PI
        if angle >= TWO_PI:
            angle = 0.0
        object.__setattr__(self, "sigma_angle", angle)
        object.__setattr__(self, "zeros", zeros)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def sigma(self) -> complex:
        return complex(math.cos(self.sigma_angle), math.sin(self.sigma_angle))

    def __call__(self, z):
        return eval_blaschke(self, z)

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        if not isinstance(other, BlaschkeProduct):
            return NotImplemented
        return BlaschkeProduct(self.sigma_angle + other.sigma_angle, self.zeros + other.zeros)

    def scaled(self, t: float) -> "BlaschkeProduct":
        """Same sigma, every zero multiplied by t."""
        return BlaschkeProduct(self.sigma_angle, tuple(t * z for z in self.zeros))


def eval_blaschke(B: BlaschkeProduct, z):
    """Evaluate ``B`` at a scalar or array ``z``.

    Raises
    ------
    PoleProximity
        If ``|1 - conj(z_k) z| < POLE_EPS`` for some zero and some point.
    """
    scalar = np.ndim(z) == 0
    w = np.asarray(z, dtype=complex)
    out = np.full(w.shape, B.sigma, dtype=complex)
    for zk in B.zeros:
        den = 1.0 - np.conj(zk) * w
        if np.any(np.abs(den) < POLE_EPS):
            raise PoleProximity(f"evaluation point within {POLE_EPS:g} of the pole of factor {zk!r}")
        out *= (w - zk) / den
    return complex(out) if scalar else out


@dataclass(frozen=True)
class RationalCircleMap:
    """The circle map zeta -> B1(zeta)/B2(zeta)."""

    numerator: BlaschkeProduct = field(default_factory=BlaschkeProduct)
    denominator: BlaschkeProduct = field(default_factory=BlaschkeProduct)

    @classmethod
    def from_zeros(
        cls,
        numerator_zeros: Sequence = (),
        denominator_zeros: Sequence = (),
        numerator_angle: float = 0.0,
        denominator_angle: float = 0.0,
    ) -> "RationalCircleMap":
        return cls(
            BlaschkeProduct(numerator_angle, tuple(numerator_zeros)),
            BlaschkeProduct(denominator_angle, tuple(denominator_zeros)),
        )

    @classmethod
    def first_kind(cls, B: BlaschkeProduct) -> "RationalCircleMap":
        """B(zeta)/zeta^(n-1) for B of degree n (n = 0 gives sigma*zeta)."""
        n = B.degree
        if n == 0:
            return cls(BlaschkeProduct(B.sigma_angle, (0j,)), BlaschkeProduct())
        return cls(B, BlaschkeProduct(0.0, (0j,) * (n - 1)))

    @classmethod
    def second_kind(cls, B: BlaschkeProduct) -> "RationalCircleMap":
        """zeta^(n+1)/B(zeta) for B of degree n."""
        return cls(BlaschkeProduct(0.0, (0j,) * (B.degree + 1)), B)

    @property
    def degree_difference(self) -> int:
        return self.numerator.degree - self.denominator.degree

    @property
    def rotation(self) -> complex:
        """sigma1/sigma2, the rotation this map retracts to at t = 0."""
        return self.numerator.sigma / self.denominator.sigma

    def __call__(self, zeta):
        return eval_quotient(self, zeta)


def eval_quotient(f: RationalCircleMap, zeta):
    """B1(zeta)/B2(zeta) for unimodular ``zeta``, renormalized to modulus one."""
    w = np.asarray(zeta, dtype=complex)
    if np.any(np.abs(np.abs(w) - 1.0) > UNIT_TOL):
        raise DomainError("eval_quotient expects points on the unit circle")
    q = np.asarray(eval_blaschke(f.numerator, w)) / np.asarray(eval_blaschke(f.denominator, w))
    q = q / np.abs(q)
    return complex(q) if np.ndim(zeta) == 0 else q


def scale_zeros(f: RationalCircleMap, t: float) -> RationalCircleMap:
    """Multiply every zero of both products by ``t`` in [0, 1]; sigma angles are kept."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"scaling parameter must lie in [0, 1], got {t!r}")
    return RationalCircleMap(f.numerator.scaled(t), f.denominator.scaled(t))


@dataclass(frozen=True)
class HomotopyPath:
    base: RationalCircleMap
    times: tuple[float, ...]

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        if not times:
            raise DomainError("homotopy path needs at least one time")
        if times[0] < 0.0 or times[-1] > 1.0:
            raise DomainError("homotopy times must lie in [0, 1]")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError("homotopy times must be strictly increasing")
        object.__setattr__(self, "times", times)

    @classmethod
    def uniform(cls, base: RationalCircleMap, steps: int) -> "HomotopyPath":
        """``steps`` equally spaced times from 0 to 1 inclusive."""
        if steps < 2:
            raise DomainError("uniform path needs at least two steps")
        return cls(base, tuple(np.linspace(0.0, 1.0, steps)))


def homotopy_samples(path: HomotopyPath) -> list[RationalCircleMap]:
    return [scale_zeros(path.base, t) for t in path.times]


def random_zeros(rng: np.random.Generator, count: int, max_modulus: float) -> tuple[complex, ...]:
    """``count`` zeros uniform in angle with modulus uniform in [0, max_modulus)."""
    r = rng.uniform(0.0, max_modulus, size=count)
    a = rng.uniform(0.0, TWO_PI, size=count)
    return tuple(complex(v) for v in r * np.exp(1j * a))


def random_blaschke(rng: np.random.Generator, degree: int, max_modulus: float) -> BlaschkeProduct:
    return BlaschkeProduct(float(rng.uniform(0.0, TWO_PI)), random_zeros(rng, degree, max_modulus))


def random_quotient(
    rng: np.random.Generator, numerator_degree: int, max_modulus: float
) -> RationalCircleMap:
    """Random B1/B2 with deg B1 = numerator_degree and deg B2 = numerator_degree - 1."""
    return RationalCircleMap(
        random_blaschke(rng, numerator_degree, max_modulus),
        random_blaschke(rng, numerator_degree - 1, max_modulus),
    )
