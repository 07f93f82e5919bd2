"""Geometric checks on sampled circle maps.

Everything here works on a :class:`~circlemaps.fourier.SampledCircleMap`, i.e.
values on the uniform grid theta_k = 2 pi k / N.  Arguments are lifted by
nearest-branch continuation (``np.unwrap``), so a lift is only meaningful if
consecutive samples turn by much less than pi about the reference point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import linprog
from shapely.geometry import LinearRing

from .errors import CenterOnCurve, DomainError, NotUnimodular, NoSignChange, PoleOnCircle
from .fourier import SampledCircleMap, sample_map

TWO_PI = 2.0 * math.pi
UNIMODULAR_TOL = 1e-9
CENTER_TOL = 1e-9
#: backward steps of the lifted argument smaller than this count as plateaus
STEP_TOL = 1e-12


def folding_map(zeta):
    """zeta + zeta^2 + conj(zeta)^2 / 2 on the unit circle."""
    z = np.asarray(zeta, dtype=complex)
    return z + z * z + 0.5 / (z * z)


def folding_h(z):
    """Rational function agreeing with :func:`folding_map` on the circle."""
    return z * z + z + 0.5 / (z * z)


def folding_dh(z):
    return 2.0 * z + 1.0 - 1.0 / (z * z * z)


def _closed_steps(values: np.ndarray, center: complex = 0j) -> np.ndarray:
    """Increments of the lifted argument of values - center around the full loop."""
    w = np.append(values, values[0]) - center
    return np.diff(np.unwrap(np.angle(w)))


def lifted_argument(s: SampledCircleMap, center: complex = 0j) -> np.ndarray:
    """Continuous argument of s - center at theta_0, ..., theta_N (closing point included)."""
    w = np.append(s.values, s.values[0]) - center
    return np.unwrap(np.angle(w))


def winding_number(values, point: complex = 0j) -> int:
    steps = _closed_steps(np.asarray(values, dtype=complex), point)
    return int(round(float(np.sum(steps)) / TWO_PI))


def argument_monotone(s: SampledCircleMap, tol: float = STEP_TOL) -> bool:
    """True iff the lifted argument is non-decreasing with total increase 2 pi.

    The samples must be unimodular; this is a brute-force test for being a
    sense-preserving circle homeomorphism.
    """
    if np.any(np.abs(np.abs(s.values) - 1.0) > UNIMODULAR_TOL):
        raise NotUnimodular("argument_monotone expects samples on the unit circle")
    steps = _closed_steps(s.values)
    total = float(np.sum(steps))
    return bool(np.all(steps >= -tol)) and abs(total - TWO_PI) < 1e-6


def argument_monotone_adaptive(f: Callable, N: int = 256, max_N: int = 2**16) -> bool:
    """:func:`argument_monotone` on samples of ``f``, doubling N until the verdict
    is stable across two resolutions and no step exceeds pi/4."""
    prev = None
    while True:
        s = sample_map(f, N)
        verdict = argument_monotone(s)
        resolved = float(np.max(np.abs(_closed_steps(s.values)))) < math.pi / 4
        if (resolved and verdict == prev) or 2 * N > max_N:
            return verdict
        if resolved:
            prev = verdict
        N *= 2


def _check_center(s: SampledCircleMap, w0: complex) -> None:
    if float(np.min(np.abs(s.values - w0))) <= CENTER_TOL:
        raise CenterOnCurve(f"point {w0!r} lies on the sampled curve")


def star_orientation(s: SampledCircleMap, w0: complex, tol: float = STEP_TOL) -> int:
    """+1 if arg(f - w0) is non-decreasing with total change 2 pi, -1 if
    non-increasing with total change -2 pi, else 0."""
    _check_center(s, w0)
    steps = _closed_steps(s.values, w0)
    total = float(np.sum(steps))
    if np.all(steps >= -tol) and abs(total - TWO_PI) < 1e-6:
        return 1
    if np.all(steps <= tol) and abs(total + TWO_PI) < 1e-6:
        return -1
    return 0


def starlike_about(s: SampledCircleMap, w0: complex) -> bool:
    """Monotone (plateaus allowed) argument of f - w0, either direction."""
    return star_orientation(s, w0) != 0


def strictly_starlike_about(s: SampledCircleMap, w0: complex) -> bool:
    """Like :func:`starlike_about` but every step of the argument must be nonzero."""
    steps = _closed_steps(s.values, w0) if star_orientation(s, w0) else None
    return steps is not None and bool(np.all(np.abs(steps) > 0.0))


def find_star_center(s: SampledCircleMap) -> complex | None:
    """A point about which the sample polygon is star-shaped, or None.

    The admissible centers form the polygon's kernel, an intersection of
    half-planes; the LP picks the point deepest inside it.
    """
    p = s.values
    q = np.roll(p, -1)
    e = q - p
    length = np.abs(e)
    keep = length > 0
    p, e, length = p[keep], e[keep], length[keep]
    area2 = float(np.sum((p.real * np.roll(p, -1).imag) - (np.roll(p, -1).real * p.imag)))
    sign = 1.0 if area2 >= 0 else -1.0
    # sign * cross(e, w - p) = a . w + rhs >= t * |e|, maximize t
    a_x = -sign * e.imag
    a_y = sign * e.real
    rhs = sign * (e.imag * p.real - e.real * p.imag)
    A = np.column_stack((-a_x, -a_y, length))
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=A,
        b_ub=rhs,
        bounds=[(None, None), (None, None), (None, None)],
        method="highs",
    )
    if not res.success or res.x[2] <= 0:
        return None
    w0 = complex(res.x[0], res.x[1])
    # a multiply covered curve has a nonempty kernel but winds more than once
    try:
        return w0 if star_orientation(s, w0) else None
    except CenterOnCurve:
        return None


def nevanlinna_profile(h: Callable, dh: Callable, w0: complex, grid: int):
    """Angles and Re(zeta h'(zeta) / (h(zeta) - w0)) on a uniform grid."""
    theta = TWO_PI * np.arange(grid) / grid
    zeta = np.exp(1j * theta)
    den = np.asarray(h(zeta), dtype=complex) - w0
    if np.any(np.abs(den) < 1e-12):
        raise PoleOnCircle(f"h - {w0!r} vanishes on the grid")
    return theta, np.real(zeta * np.asarray(dh(zeta), dtype=complex) / den)


def nevanlinna_residual(h: Callable, dh: Callable, w0: complex, grid: int = 4096) -> float:
    """min over the grid of Re(zeta h'(zeta)/(h(zeta) - w0)); >= 0 means starlike about w0."""
    return float(np.min(nevanlinna_profile(h, dh, w0, grid)[1]))


def factorization_identity_residual(grid: int = 4096) -> float:
    """max |5/2 + 2cos t - cos 2t - cos(3t)/2 - (5 - 2cos 2t) cos^2(t/2)| on the grid."""
    if grid < 16:
        raise DomainError("grid must be at least 16")
    t = TWO_PI * np.arange(grid) / grid
    lhs = 2.5 + 2.0 * np.cos(t) - np.cos(2 * t) - 0.5 * np.cos(3 * t)
    rhs = (5.0 - 2.0 * np.cos(2 * t)) * np.cos(t / 2) ** 2
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class StarlikeProfile:
    """f(e^{it}) = center + R(t) exp(i phi(t)).

    ``phi`` must be continuous on [0, 2pi] with phi(2pi) = phi(0) + 2pi and
    non-decreasing; both callables accept numpy arrays.
    """

    R: Callable
    phi: Callable
    center: complex = 0j

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.center + self.R(theta) * np.exp(1j * self.phi(theta))

    def sample(self, N: int) -> SampledCircleMap:
        return SampledCircleMap(self(TWO_PI * np.arange(N) / N))

    def check(self, N: int = 4096) -> bool:
        """Sampled check of R > 0, monotone phi and total increase 2 pi."""
        t = TWO_PI * np.arange(N + 1) / N
        r = self.R(t)
        ph = self.phi(t)
        return bool(
            np.all(r > 0)
            and np.all(np.diff(ph) >= -STEP_TOL)
            and abs(ph[-1] - ph[0] - TWO_PI) < 1e-9
        )


def _balance(p: StarlikeProfile, theta):
    theta = np.asarray(theta, dtype=float)
    return p.phi(theta + math.pi) - p.phi(theta) - math.pi


def antipodal_balance_point(p: StarlikeProfile, tol: float = 1e-12, scan: int = 1024) -> float:
    """theta0 in [0, pi) with phi(theta0 + pi) = phi(theta0) + pi, up to ``tol``.

    psi(t) = phi(t + pi) - phi(t) - pi satisfies psi(0) + psi(pi) = 0, so it
    changes sign on [0, pi]; the root is located by a scan and bisection.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    grid = math.pi * np.arange(scan + 1) / scan
    psi = _balance(p, grid)
    hits = np.flatnonzero(np.abs(psi[:-1]) <= tol)
    if hits.size:
        return float(grid[hits[0]])
    if abs(psi[-1]) <= tol:
        # psi(0) = -psi(pi)
        return 0.0
    change = np.flatnonzero(np.sign(psi[:-1]) * np.sign(psi[1:]) < 0)
    if change.size == 0:
        raise NoSignChange("balance function keeps one sign; the profile is not a valid starlike profile")
    lo, hi = float(grid[change[0]]), float(grid[change[0] + 1])
    f_lo = float(_balance(p, lo))
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = float(_balance(p, mid))
        if abs(f_mid) <= tol:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, hi):
            break
    raise NoSignChange(f"bisection stalled with residual {f_mid:.3g} > tol; phi may be discontinuous")


@dataclass(frozen=True)
class EmbeddingReport:
    injective: bool
    sense_preserving: bool
    winding_number_about_center: int
    min_pairwise_gap: float

    def to_dict(self) -> dict:
        return {
            "injective": self.injective,
            "sense_preserving": self.sense_preserving,
            "winding_number_about_center": self.winding_number_about_center,
            "min_pairwise_gap": self.min_pairwise_gap,
        }


def _min_nonadjacent_gap(values: np.ndarray, block: int = 512) -> float:
    n = values.size
    idx = np.arange(n)
    best = math.inf
    for start in range(0, n, block):
        rows = idx[start:start + block]
        d = np.abs(values[rows, None] - values[None, :])
        sep = np.abs(rows[:, None] - idx[None, :])
        sep = np.minimum(sep, n - sep)
        d[sep < 2] = np.inf
        best = min(best, float(d.min()))
    return best


def embedding_report(s: SampledCircleMap, interior_point: complex) -> EmbeddingReport:
    """Injectivity, winding and orientation of the sampled closed curve.

    Injectivity is judged on the sample polygon: it must be a simple closed
    polygon with no repeated vertices.  This is a resolution-level heuristic,
    not a proof.
    """
    v = s.values
    gap = _min_nonadjacent_gap(v)
    scale = float(np.max(np.abs(v - v.mean()))) or 1.0
    distinct = bool(np.min(np.abs(v - np.roll(v, -1))) > 1e-14 * scale) and gap > 1e-14 * scale
    injective = distinct and LinearRing(np.column_stack((v.real, v.imag))).is_simple
    w = winding_number(v, interior_point)
    return EmbeddingReport(bool(injective), w == 1, w, gap)


def _trig_poly(cos_c: np.ndarray, sin_c: np.ndarray) -> Callable:
    k = np.arange(1, cos_c.size + 1)

    def value(theta):
        t = np.asarray(theta, dtype=float)
        kt = np.multiply.outer(t, k)
        return np.cos(kt) @ cos_c + np.sin(kt) @ sin_c

    return value


def random_starlike_embedding(
    seed: int,
    radial_degree: int,
    arg_degree: int,
    N: int = 1024,
    bandlimited: bool = False,
) -> tuple[SampledCircleMap, StarlikeProfile]:
    """Seeded random sense-preserving embedding, starlike about its center.

    Default mode: R = 1 + trig polynomial with R >= 0.1 and
    phi = t + phase + trig polynomial with phi' >= 0.05.

    ``bandlimited=True`` instead builds f = center + e^{i(t + phase)} (1 + p(t))
    for a complex trig polynomial p with sum|c_k| <= 0.3 and sum |k||c_k| <= 0.3,
    so f is a trigonometric polynomial of degree max(radial, arg) + 1 and its
    argument about the center has derivative >= 1 - 0.3/0.7.
    """
    if radial_degree < 0 or arg_degree < 0:
        raise DomainError("degrees must be nonnegative")
    rng = np.random.default_rng(seed)
    center = complex(*rng.normal(0.0, 1.0, size=2))
    phase = float(rng.uniform(0.0, TWO_PI))

    if bandlimited:
        d = max(radial_degree, arg_degree)
        ks = np.arange(-d, d + 1)
        c = rng.normal(size=ks.size) + 1j * rng.normal(size=ks.size)
        c[ks == 0] = 0.0
        mass = max(float(np.sum(np.abs(c))), float(np.sum(np.abs(ks) * np.abs(c))), 1e-300)
        c *= rng.uniform(0.05, 0.3) / mass

        def p(theta):
            t = np.asarray(theta, dtype=float)
            return np.exp(1j * np.multiply.outer(t, ks)) @ c

        R = lambda theta: np.abs(1.0 + p(theta))  # noqa: E731
        phi = lambda theta: np.asarray(theta, dtype=float) + phase + np.angle(1.0 + p(theta))  # noqa: E731
    else:
        a = rng.normal(size=radial_degree)
        b = rng.normal(size=radial_degree)
        if radial_degree:
            a, b = (x * rng.uniform(0.1, 0.9) / (np.sum(np.abs(a)) + np.sum(np.abs(b))) for x in (a, b))
        radial = _trig_poly(a, b)

        c = rng.normal(size=arg_degree)
        d = rng.normal(size=arg_degree)
        if arg_degree:
            k = np.arange(1, arg_degree + 1)
            weight = float(np.sum(k * (np.abs(c) + np.abs(d))))
            c, d = (x * rng.uniform(0.1, 0.95) / weight for x in (c, d))
        angular = _trig_poly(c, d)

        R = lambda theta: 1.0 + radial(theta)  # noqa: E731
        phi = lambda theta: np.asarray(theta, dtype=float) + phase + angular(theta)  # noqa: E731

    profile = StarlikeProfile(R, phi, center)
    return profile.sample(N), profile
