"""Reproduction suite: numbered end-to-end checks with fixed seeds and tolerances.

Each check returns a :class:`CheckResult`; :func:`run_suite` runs a selection
and :func:`format_result` renders the one-line pass/fail summary.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import fourier, geometry, poisson
from .blaschke import BlaschkeProduct, RationalCircleMap, random_blaschke, random_quotient, scale_zeros
from .poisson import Verdict, criterion_check

SEED = 20240531


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _aligned_zeros(rng, n: int, rmax: float) -> list[complex]:
    alpha = rng.uniform(0.0, 2 * math.pi)
    r = rng.uniform(0.0, rmax, size=n)
    r[rng.random(n) < 0.1] = 0.0
    return [complex(x) for x in r * np.exp(1j * alpha)]


def check_equality_cases() -> tuple[bool, str]:
    """Moduli 1/(2n-1) (first kind) and 1/(2n+1) (second kind) sit exactly on the
    boundary of the closed-form conditions and must certify as Homeo."""
    worst = math.inf
    bad = []
    for n in (2, 3, 4, 5):
        for alpha in (0.0, 0.7):
            for kind, r in (("first", 1 / (2 * n - 1)), ("second", 1 / (2 * n + 1))):
                B = BlaschkeProduct(0.0, [r * complex(math.cos(alpha), math.sin(alpha))] * n)
                f = RationalCircleMap.first_kind(B) if kind == "first" else RationalCircleMap.second_kind(B)
                rep = criterion_check(f)
                worst = min(worst, rep.margin_lower_bound)
                if rep.verdict is not Verdict.HOMEO or rep.margin_lower_bound < -1e-9:
                    bad.append((n, kind, alpha, rep.verdict.value, rep.margin_lower_bound))
    return not bad, f"16 configurations, worst certified margin {worst:.3e}, failures {bad}"


def degree2_sweep(resolution: int = 99, grid_size: int = 2**16):
    """Rows (a, b, closed_form, verdict, margin, closed_form_margin) over the real grid."""
    axis = np.linspace(-0.98, 0.98, resolution)
    for a in axis:
        for b in axis:
            f = RationalCircleMap.first_kind(BlaschkeProduct(0.0, [complex(a), complex(b)]))
            rep = criterion_check(f, grid_size)
            yield (
                float(a),
                float(b),
                poisson.degree2_real_characterization(a, b),
                rep.verdict,
                rep.margin_lower_bound,
                poisson.degree2_closed_form_margin(a, b),
            )


def check_degree2_region() -> tuple[bool, str]:
    cells = inconclusive = disagree = far = 0
    for a, b, closed, verdict, _, cf in degree2_sweep():
        cells += 1
        if verdict is Verdict.INCONCLUSIVE:
            inconclusive += 1
            far += abs(cf) > 1e-6
        elif closed != (verdict is Verdict.HOMEO):
            disagree += 1
    ok = disagree == 0 and inconclusive < 0.02 * cells and far == 0
    return ok, f"{cells} cells, {disagree} disagreements, {inconclusive} inconclusive ({far} away from boundary)"


def check_aligned_necessity(count: int = 100) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 3)
    compared = mismatches = homeo = 0
    for i in range(count):
        n = int(rng.integers(1, 6))
        if i % 2 == 0:
            zeros = _aligned_zeros(rng, n, min(0.95, 2.5 / (2 * n - 1)))
            f = RationalCircleMap.first_kind(BlaschkeProduct(rng.uniform(0, 2 * math.pi), zeros))
            closed = poisson.necessity_aligned_zeros(zeros, "first_kind")
        else:
            zeros = _aligned_zeros(rng, n, 2.5 / (2 * n + 1))
            f = RationalCircleMap.second_kind(BlaschkeProduct(rng.uniform(0, 2 * math.pi), zeros))
            closed = poisson.necessity_aligned_zeros(zeros, "second_kind")
        rep = criterion_check(f)
        if rep.verdict is Verdict.INCONCLUSIVE:
            continue
        compared += 1
        homeo += rep.verdict is Verdict.HOMEO
        mismatches += closed != (rep.verdict is Verdict.HOMEO)
    return mismatches == 0, f"{compared} compared ({homeo} Homeo), {mismatches} mismatches"


def check_semigroup(count: int = 100) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for _ in range(count):
        z = 0.9 * math.sqrt(rng.random()) * complex(np.exp(2j * math.pi * rng.random()))
        t = 0.9 * rng.random()
        zeta = complex(np.exp(2j * math.pi * rng.random()))
        worst = max(worst, poisson.semigroup_residual(z, t, zeta, 2048))
    return worst <= 1e-8, f"max residual {worst:.3e} over {count} samples"


def random_certified_homeo(rng, count: int, max_degree: int = 4) -> list[RationalCircleMap]:
    maps = []
    while len(maps) < count:
        f = random_quotient(rng, int(rng.integers(1, max_degree + 1)), 0.6)
        if criterion_check(f).verdict is Verdict.HOMEO:
            maps.append(f)
    return maps


def check_homotopy(count: int = 100) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 5)
    zeta = np.exp(2j * np.pi * np.arange(1024) / 1024)
    violations = 0
    worst = 0.0
    for f in random_certified_homeo(rng, count):
        for t in np.arange(10) / 10:
            if criterion_check(scale_zeros(f, t)).verdict is Verdict.NOT_HOMEO:
                violations += 1
        endpoint = scale_zeros(f, 0.0)
        worst = max(worst, float(np.max(np.abs(endpoint(zeta) - f.rotation * zeta))))
    return violations == 0 and worst <= 1e-12, f"{violations} NotHomeo steps, endpoint deviation {worst:.2e}"


def check_am_hm(count: int = 1000) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 6)
    upper = exceptions = 0
    for _ in range(count):
        n = int(rng.integers(1, 7))
        zeros = random_blaschke(rng, n, 2.0 / (2 * n + 1)).zeros
        if poisson.sufficient_second_kind(zeros)[0]:
            upper += 1
            exceptions += not poisson.sufficient_first_kind(zeros)[0]
    return exceptions == 0 and upper > 0, f"{upper} sets satisfy the upper condition, {exceptions} exceptions"


def check_folding() -> tuple[bool, str]:
    s = fourier.sample_map(geometry.folding_map, 4096)
    sp = fourier.spectrum(s, 4)
    errs = {
        "c1": abs(sp[1] - 1),
        "c2": abs(sp[2] - 1),
        "c-2": abs(sp[-2] - 0.5),
        "Fz(-1/2)": abs(fourier.wirtinger(sp, -0.5)[0]),
        "Fzbar(0)": abs(fourier.wirtinger(sp, 0.0)[1]),
        "factorization": geometry.factorization_identity_residual(4096),
    }
    theta, vals = geometry.nevanlinna_profile(geometry.folding_h, geometry.folding_dh, 1.0, 4096)
    nev_min = float(vals.min())
    nev_at = float(theta[int(vals.argmin())])
    rep = geometry.embedding_report(s, 1.0)
    ok = (
        all(v <= 1e-12 for v in errs.values())
        and nev_min >= -1e-10
        and abs(nev_at - math.pi) <= 1e-3
        and geometry.starlike_about(s, 1.0)
        and rep.injective
        and rep.winding_number_about_center == 1
    )
    worst = max(errs.values())
    return ok, (
        f"max coefficient/identity error {worst:.1e}, Nevanlinna min {nev_min:.1e} at {nev_at:.6f}, "
        f"injective={rep.injective}, winding={rep.winding_number_about_center}"
    )


def _oriented(s: fourier.SampledCircleMap, center: complex) -> fourier.SampledCircleMap:
    if geometry.star_orientation(s, center) < 0:
        return fourier.SampledCircleMap(np.roll(s.values[::-1], 1))
    return s


def check_first_coefficients(count: int = 100) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 8)
    smallest = math.inf
    starlike = 0
    for seed in range(count):
        s, p = geometry.random_starlike_embedding(
            SEED + seed, int(rng.integers(1, 6)), int(rng.integers(1, 6))
        )
        starlike += geometry.starlike_about(s, p.center)
        sp = fourier.spectrum(_oriented(s, p.center), 8)
        smallest = min(smallest, abs(sp[1]) + abs(sp[-1]))
    return smallest > 1e-6 and starlike == count, f"min |c1|+|c-1| = {smallest:.3e}, {starlike}/{count} starlike"


def check_total_derivative(count: int = 20, points: int = 200) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 9)
    smallest = math.inf
    tail = 0.0
    for seed in range(count):
        deg = int(rng.integers(1, 5))
        s, p = geometry.random_starlike_embedding(SEED + 100 + seed, deg, deg, bandlimited=True)
        sp = fourier.spectrum(_oriented(s, p.center), deg + 2)
        tail = max(tail, sp.tail_mass)
        z = np.sqrt(rng.random(points)) * 0.999 * np.exp(2j * np.pi * rng.random(points))
        fz, fzbar = fourier.wirtinger(sp, z)
        smallest = min(smallest, float(np.min(np.abs(fz) + np.abs(fzbar))))
    return smallest > 1e-8 and tail < 1e-10, f"min |Fz|+|Fzbar| = {smallest:.3e}, truncation mass {tail:.1e}"


def check_support(count: int = 50) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 10)
    worst = 0.0
    done = 0
    for kind in ("first", "second"):
        made = 0
        while made < count:
            n = int(rng.integers(1, 6))
            B = random_blaschke(rng, n, 0.6 if kind == "first" else 0.3)
            if kind == "first":
                f, outside = RationalCircleMap.first_kind(B), lambda k: k < -(n - 1)
            else:
                f, outside = RationalCircleMap.second_kind(B), lambda k: k > n + 1
            if criterion_check(f).verdict is not Verdict.HOMEO:
                continue
            sp = fourier.spectrum(fourier.sample_map(f, 1024), 16)
            worst = max(worst, max(abs(c) for k, c in sp.items() if outside(k)))
            made += 1
        done += made
    return worst <= 1e-10, f"{done} maps, largest coefficient beyond the bound {worst:.2e}"


def check_oracle_agreement(count: int = 200) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED + 11)
    compared = disagree = homeo = 0
    for _ in range(count):
        f = random_quotient(rng, int(rng.integers(1, 5)), 0.7)
        rep = criterion_check(f)
        if rep.verdict is Verdict.INCONCLUSIVE:
            continue
        compared += 1
        homeo += rep.verdict is Verdict.HOMEO
        disagree += geometry.argument_monotone_adaptive(f) != (rep.verdict is Verdict.HOMEO)
    return disagree == 0, f"{compared} compared ({homeo} Homeo), {disagree} disagreements"


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    fn: Callable[[], tuple[bool, str]]
    time_limit: float | None = None


CHECKS = (
    Check(1, "equality cases of the closed-form conditions", check_equality_cases, 5.0),
    Check(2, "degree-2 real-zero region map", check_degree2_region, 60.0),
    Check(3, "aligned-zero necessity", check_aligned_necessity),
    Check(4, "Poisson semigroup identity", check_semigroup),
    Check(5, "zero-scaling homotopy preserves homeomorphy", check_homotopy),
    Check(6, "upper condition implies lower condition", check_am_hm),
    Check(7, "folding map reproduction", check_folding),
    Check(8, "starlike embeddings: |c1| + |c-1| > 0", check_first_coefficients),
    Check(9, "starlike embeddings: nonvanishing total derivative", check_total_derivative),
    Check(10, "one-sided Fourier support", check_support),
    Check(11, "criterion vs argument-monotonicity oracle", check_oracle_agreement),
)


def run_check(check: Check) -> CheckResult:
    start = time.perf_counter()
    passed, detail = check.fn()
    elapsed = time.perf_counter() - start
    if check.time_limit is not None and elapsed >= check.time_limit:
        passed = False
        detail += f"; exceeded time limit {check.time_limit:g} s"
    return CheckResult(check.number, check.name, bool(passed), detail, elapsed)


def run_suite(numbers=None) -> list[CheckResult]:
    selected = [c for c in CHECKS if numbers is None or c.number in numbers]
    return [run_check(c) for c in selected]


def format_result(r: CheckResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    return f"{status} [{r.number:2d}] {r.name}: {r.detail} ({r.seconds:.2f} s)"
