"""Poisson kernel, the certified homeomorphism criterion for Blaschke quotients,
and closed-form zero conditions.

A quotient B1/B2 of Blaschke products with zeros z_k (degree n) and w_k
(degree m) is a sense-preserving circle homeomorphism iff n - m = 1 and

    D(zeta) = sum_k P(z_k, zeta) - sum_k P(w_k, zeta) >= 0   on the circle.

``criterion_check`` decides this by sampling D on a uniform grid and bounding
what can happen between grid points.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .blaschke import RationalCircleMap
from .errors import AlignmentError, DomainError

DEFAULT_GRID = 4096
MAX_GRID = 2**20
#: certified margins down to -EQUALITY_TOL still count as Homeo (equality configurations)
EQUALITY_TOL = 1e-9
#: relative slack for the closed-form inequalities (rounding only)
CLOSED_FORM_RTOL = 1e-12
ALIGN_TOL = 1e-10

_EPS = np.finfo(float).eps


class Verdict(str, enum.Enum):
    HOMEO = "Homeo"
    NOT_HOMEO = "NotHomeo"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CriterionReport:
    verdict: Verdict
    margin_lower_bound: float
    witness_angle: float
    grid_size: int
    lipschitz_bound: float
    grid_minimum: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CriterionReport":
        return cls(
            verdict=Verdict(d["verdict"]),
            margin_lower_bound=float(d["margin_lower_bound"]),
            witness_angle=float(d["witness_angle"]),
            grid_size=int(d["grid_size"]),
            lipschitz_bound=float(d["lipschitz_bound"]),
            grid_minimum=float(d.get("grid_minimum", d["margin_lower_bound"])),
        )


def poisson_kernel(z, zeta):
    """P(z, zeta) = (1 - |z|^2) / |zeta - z|^2 for |z| < 1, |zeta| = 1."""
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) >= 1.0):
        raise DomainError("Poisson kernel needs |z| < 1")
    zeta_arr = np.asarray(zeta, dtype=complex)
    out = (1.0 - np.abs(z_arr) ** 2) / np.abs(zeta_arr - z_arr) ** 2
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=8)
def _circle_grid(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    theta = (2.0 * np.pi / n) * np.arange(n)
    c, s = np.cos(theta), np.sin(theta)
    for a in (theta, c, s):
        a.flags.writeable = False
    return theta, c, s


def _kernel_on_grid(z: complex, c: np.ndarray, s: np.ndarray):
    if z == 0:
        return 1.0
    x, y = z.real, z.imag
    return (1.0 - (x * x + y * y)) / ((c - x) ** 2 + (s - y) ** 2)


def kernel_difference_on_grid(f: RationalCircleMap, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Angles and values of D on the n-point uniform grid."""
    theta, c, s = _circle_grid(n)
    d = np.zeros(n)
    for z in f.numerator.zeros:
        d = d + _kernel_on_grid(z, c, s)
    for w in f.denominator.zeros:
        d = d - _kernel_on_grid(w, c, s)
    return theta, d


def lipschitz_bound(f: RationalCircleMap) -> float:
    """Sum over all zeros of 2r(1+r)/(1-r)^3.

    This is exactly sup |d^2 P / d theta^2| for a zero of modulus r (the kernel's
    Fourier series is sum r^|k| e^{ik(theta-alpha)}), and it also dominates
    sup |dP/d theta| = 2r/(1-r)^2, so it bounds both derivatives of D.
    """
    total = 0.0
    for z in f.numerator.zeros + f.denominator.zeros:
        r = abs(z)
        total += 2.0 * r * (1.0 + r) / (1.0 - r) ** 3
    return total


def _magnitude(f: RationalCircleMap) -> float:
    return sum((1.0 + abs(z)) / (1.0 - abs(z)) for z in f.numerator.zeros + f.denominator.zeros)


def criterion_check(
    f: RationalCircleMap, grid_size: int = DEFAULT_GRID, max_grid_size: int = MAX_GRID
) -> CriterionReport:
    """Decide whether ``f`` restricts to a sense-preserving circle homeomorphism.

    The grid is doubled while the verdict is Inconclusive, up to
    ``max_grid_size``; pass ``max_grid_size=grid_size`` for a single pass.

    Between neighbouring grid points D stays above the linear interpolant minus
    sup|D''| h^2 / 8, so ``grid_min - L h^2 / 8`` is a rigorous lower bound of
    min D when L = :func:`lipschitz_bound`.
    """
    if grid_size < 16:
        raise DomainError("grid_size must be at least 16")
    L = lipschitz_bound(f)
    if f.degree_difference != 1:
        return CriterionReport(Verdict.NOT_HOMEO, -math.inf, math.nan, grid_size, L, -math.inf)

    reject = 10.0 * _EPS * (1.0 + L + _magnitude(f))
    n = grid_size
    while True:
        theta, d = kernel_difference_on_grid(f, n)
        k = int(np.argmin(d))
        gmin = float(d[k])
        h = 2.0 * math.pi / n
        margin = gmin - L * h * h / 8.0
        if gmin < -reject:
            verdict = Verdict.NOT_HOMEO
        elif margin >= -EQUALITY_TOL:
            verdict = Verdict.HOMEO
        else:
            verdict = Verdict.INCONCLUSIVE
        if verdict is not Verdict.INCONCLUSIVE or 2 * n > max_grid_size:
            return CriterionReport(verdict, margin, float(theta[k]), n, L, gmin)
        n *= 2


def _moduli(zeros: Iterable) -> np.ndarray:
    r = np.abs(np.asarray(list(zeros), dtype=complex))
    if np.any(r >= 1.0):
        raise DomainError("all zeros must lie in the open unit disk")
    return r


def sufficient_first_kind(zeros: Sequence) -> tuple[bool, float]:
    """sum (1-|z_k|)/(1+|z_k|) >= n - 1, which makes B/zeta^(n-1) a homeomorphism."""
    r = _moduli(zeros)
    n = r.size
    lhs = float(np.sum((1.0 - r) / (1.0 + r)))
    return lhs >= (n - 1) - CLOSED_FORM_RTOL * max(n, 1), lhs


def sufficient_second_kind(zeros: Sequence) -> tuple[bool, float]:
    """sum (1+|z_k|)/(1-|z_k|) <= n + 1, which makes zeta^(n+1)/B a homeomorphism."""
    r = _moduli(zeros)
    n = r.size
    lhs = float(np.sum((1.0 + r) / (1.0 - r)))
    return lhs <= (n + 1) + CLOSED_FORM_RTOL * max(n, 1), lhs


def degree2_closed_form_margin(a: float, b: float) -> float:
    """The expression whose sign decides the degree-2 real-zero case.

    For ab >= 0 this is 1 - |a| - |b| - 3ab, for ab <= 0 it is 1 + ab - a^2 - b^2;
    when ab == 0 the two agree in sign and the larger one is returned.
    """
    a, b = float(a), float(b)
    ab = a * b
    vals = []
    if ab >= 0:
        vals.append(1.0 - abs(a) - abs(b) - 3.0 * ab)
    if ab <= 0:
        vals.append(1.0 + ab - a * a - b * b)
    return max(vals)


def degree2_real_characterization(a: float, b: float, tol: float = CLOSED_FORM_RTOL) -> bool:
    """Exact test for B/zeta with B of degree 2 and real zeros a, b.

    True iff (ab >= 0 and 1 - |a| - |b| - 3ab >= 0) or (ab <= 0 and
    1 + ab - a^2 - b^2 >= 0).  ``tol`` absorbs rounding on the boundary.
    """
    a, b = float(a), float(b)
    if not (abs(a) < 1.0 and abs(b) < 1.0):
        raise DomainError("zeros must be real with modulus < 1")
    return degree2_closed_form_margin(a, b) >= -tol


def degree2_quadratic(a: float, b: float, x):
    """g(x) = -4ab x^2 + 4ab(a+b) x + 1 - a^2 - b^2 - 3a^2 b^2, with x = Re(zeta)."""
    x = np.asarray(x, dtype=float)
    ab = a * b
    return -4.0 * ab * x * x + 4.0 * ab * (a + b) * x + 1.0 - a * a - b * b - 3.0 * ab * ab


def check_aligned(zeros: Sequence, tol: float = ALIGN_TOL) -> None:
    """Raise AlignmentError unless all nonzero entries share one argument."""
    ref = None
    for z in zeros:
        z = complex(z)
        if z == 0:
            continue
        if ref is None:
            ref = z
            continue
        diff = abs(math.remainder(math.atan2(z.imag, z.real) - math.atan2(ref.imag, ref.real), 2 * math.pi))
        if diff > tol:
            raise AlignmentError(f"zeros {ref!r} and {z!r} have different arguments")


def necessity_aligned_zeros(zeros: Sequence, which: str) -> bool:
    """Closed-form verdict for zeros with a common argument, where it is exact.

    ``which`` is ``"first_kind"`` (B/zeta^(n-1)) or ``"second_kind"``
    (zeta^(n+1)/B).
    """
    check_aligned(zeros)
    if which == "first_kind":
        return sufficient_first_kind(zeros)[0]
    if which == "second_kind":
        return sufficient_second_kind(zeros)[0]
    raise ValueError(f"which must be 'first_kind' or 'second_kind', got {which!r}")


def semigroup_residual(z: complex, t: float, zeta: complex, quad_points: int = 2048) -> float:
    """|P(tz, zeta) - mean_xi P(z, xi) P(t, zeta/xi)| with the trapezoidal rule on
    ``quad_points`` equally spaced xi."""
    if quad_points < 64:
        raise DomainError("quad_points must be at least 64")
    if not 0.0 <= t < 1.0:
        raise DomainError("t must lie in [0, 1)")
    xi = np.exp(2j * np.pi * np.arange(quad_points) / quad_points)
    integrand = poisson_kernel(z, xi) * poisson_kernel(t, zeta / xi)
    return abs(poisson_kernel(t * z, zeta) - float(np.mean(integrand)))
