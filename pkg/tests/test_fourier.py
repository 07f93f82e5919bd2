import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlemaps.blaschke import BlaschkeProduct, RationalCircleMap, random_blaschke
from circlemaps.errors import DomainError, WindowTooWide
from circlemaps.fourier import (
    FourierSpectrum,
    SampledCircleMap,
    default_resolution,
    harmonic_extension,
    sample_map,
    spectrum,
    support_profile,
    wirtinger,
)
from circlemaps.geometry import folding_map, random_starlike_embedding, star_orientation
from circlemaps.poisson import Verdict, criterion_check


def identity_spectrum(M=4):
    return spectrum(sample_map(lambda z: z, 64), M)


def folding_spectrum(M=4):
    return spectrum(sample_map(folding_map, 1024), M)


def blaschke_taylor(zeros, sigma=1.0, terms=64):
    """Taylor coefficients of a Blaschke product by explicit series multiplication."""
    c = np.zeros(terms, dtype=complex)
    c[0] = sigma
    for zk in zeros:
        # (z - zk) * sum_j conj(zk)^j z^j
        geo = np.conj(zk) ** np.arange(terms)
        factor = np.convolve([-zk, 1.0], geo)[:terms]
        c = np.convolve(c, factor)[:terms]
    return c


def test_sample_map_examples():
    s = sample_map(lambda z: z, 64)
    assert np.allclose(s.values, np.exp(2j * np.pi * np.arange(64) / 64), atol=0)
    assert np.all(sample_map(lambda z: 1.0, 64).values == 1)
    assert sample_map(folding_map, 64).values[0] == pytest.approx(2.5)
    assert s.N == 64 and len(s) == 64


def test_sample_map_scalar_callback():
    s = sample_map(lambda z: complex(z) ** 2, 64)
    assert np.allclose(s.values, np.exp(4j * np.pi * np.arange(64) / 64))


@pytest.mark.parametrize("n", [32, 100, 0])
def test_sample_count_must_be_power_of_two(n):
    with pytest.raises(DomainError):
        sample_map(lambda z: z, n)
    with pytest.raises(DomainError):
        SampledCircleMap(np.ones(n))


def test_samples_are_read_only():
    s = sample_map(lambda z: z, 64)
    with pytest.raises(ValueError):
        s.values[0] = 3


def test_identity_spectrum():
    sp = identity_spectrum()
    for n, c in sp.items():
        assert abs(c - (1 if n == 1 else 0)) <= 1e-14


def test_folding_spectrum():
    sp = folding_spectrum()
    expected = {1: 1, 2: 1, -2: 0.5}
    for n, c in sp.items():
        assert abs(c - expected.get(n, 0)) <= 1e-14


def test_degree_one_factor_spectrum():
    a = 0.4
    sp = spectrum(sample_map(BlaschkeProduct(0.0, [a]), 1024), 8)
    oracle = blaschke_taylor([a], terms=9)
    assert oracle[:3] == pytest.approx([-0.4, 0.84, 0.336])
    for n in range(9):
        assert abs(sp[n] - oracle[n]) <= 1e-14
    for n in range(1, 9):
        assert abs(sp[-n]) <= 1e-15


def test_window_limits():
    s = sample_map(lambda z: z, 64)
    with pytest.raises(WindowTooWide):
        spectrum(s, 32)
    assert spectrum(s, 31).window == 31
    with pytest.raises(KeyError):
        identity_spectrum(4)[5]


def test_default_resolution():
    assert default_resolution(16) == 1024
    assert default_resolution(200) == 2048


def test_support_profile_examples():
    assert support_profile(identity_spectrum()) == (1, 1)
    assert support_profile(folding_spectrum()) == (-2, 2)
    zero = FourierSpectrum(np.zeros(9), 4, 64)
    assert support_profile(zero) == (None, None)
    with pytest.raises(DomainError):
        support_profile(zero, tol=0)


def test_support_profile_blaschke_over_square():
    zeros = [0.1, -0.05 + 0.1j, 0.2j]
    f = RationalCircleMap.first_kind(BlaschkeProduct(0.3, zeros))
    sp = spectrum(sample_map(f, 1024), 16)
    oracle = blaschke_taylor(zeros, np.exp(0.3j), terms=19)
    # B(z)/z^2 shifts indices by -2
    for n in range(-16, 17):
        expected = oracle[n + 2] if n + 2 >= 0 else 0
        assert abs(sp[n] - expected) <= 1e-13
    assert support_profile(sp, 1e-12)[0] == -2


def test_harmonic_extension_examples():
    sp = folding_spectrum()
    assert harmonic_extension(sp, 0) == pytest.approx(sp[0], abs=1e-15)
    for r in (0.1, 0.5, -0.7):
        assert harmonic_extension(sp, r) == pytest.approx(r + r * r + r * r / 2, abs=1e-14)
    assert harmonic_extension(identity_spectrum(), 0.3 + 0.4j) == pytest.approx(0.3 + 0.4j, abs=1e-15)
    with pytest.raises(DomainError):
        harmonic_extension(sp, 1.0)


def test_harmonic_extension_matches_closed_form():
    sp = folding_spectrum()
    z = np.array([0.1 + 0.2j, -0.3 + 0.5j, 0.8j])
    assert np.allclose(harmonic_extension(sp, z), z + z**2 + np.conj(z) ** 2 / 2, atol=1e-14)


def test_wirtinger_examples():
    sp = folding_spectrum()
    assert wirtinger(sp, 0) == pytest.approx((sp[1], sp[-1]), abs=1e-15)
    assert abs(wirtinger(sp, -0.5)[0]) <= 1e-14
    assert abs(wirtinger(sp, 0)[1]) <= 1e-14
    fz, fzbar = wirtinger(sp, 0.2 - 0.1j)
    assert fz == pytest.approx(1 + 2 * (0.2 - 0.1j), abs=1e-14)
    assert fzbar == pytest.approx(np.conj(0.2 - 0.1j), abs=1e-14)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 20),
    st.integers(0, 2**32 - 1),
)
def test_quadrature_exactness(M, seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=2 * M + 1) + 1j * rng.normal(size=2 * M + 1)
    ks = np.arange(-M, M + 1)
    N = max(64, 1 << (4 * M - 1).bit_length())
    s = sample_map(lambda z: np.power.outer(z, ks) @ c, N)
    sp = spectrum(s, M)
    assert np.max(np.abs(sp.coefficients - c)) <= 1e-13 * max(1.0, np.max(np.abs(c)))


def test_parseval_bound():
    rng = np.random.default_rng(20)
    for _ in range(20):
        f = RationalCircleMap(random_blaschke(rng, 3, 0.8), random_blaschke(rng, 2, 0.8))
        s = sample_map(f, 256)
        sp = spectrum(s, int(rng.integers(1, 100)))
        assert np.sum(np.abs(sp.coefficients) ** 2) <= np.mean(np.abs(s.values) ** 2) + 1e-10


def test_wirtinger_matches_finite_differences():
    rng = np.random.default_rng(21)
    h = 1e-5
    for _ in range(5):
        M = int(rng.integers(1, 9))
        ks = np.arange(-M, M + 1)
        c = (rng.normal(size=ks.size) + 1j * rng.normal(size=ks.size)) / (1 + np.abs(ks))
        sp = spectrum(sample_map(lambda z: np.power.outer(z, ks) @ c, 256), M)
        z = 0.9 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
        Fx = (harmonic_extension(sp, z + h) - harmonic_extension(sp, z - h)) / (2 * h)
        Fy = (harmonic_extension(sp, z + 1j * h) - harmonic_extension(sp, z - 1j * h)) / (2 * h)
        fz, fzbar = wirtinger(sp, z)
        assert np.max(np.abs(fz - (Fx - 1j * Fy) / 2)) <= 1e-7
        assert np.max(np.abs(fzbar - (Fx + 1j * Fy) / 2)) <= 1e-7


def test_one_sided_support():
    rng = np.random.default_rng(22)
    for kind in ("first", "second"):
        made = 0
        while made < 50:
            n = int(rng.integers(1, 6))
            B = random_blaschke(rng, n, 0.5 if kind == "first" else 0.25)
            f = RationalCircleMap.first_kind(B) if kind == "first" else RationalCircleMap.second_kind(B)
            if criterion_check(f).verdict is not Verdict.HOMEO:
                continue
            made += 1
            sp = spectrum(sample_map(f, 1024), 16)
            lo, hi = support_profile(sp, 1e-10)
            if kind == "first":
                assert lo >= -(n - 1)
            else:
                assert hi <= n + 1


def test_first_coefficients_of_starlike_embeddings():
    for seed in range(100):
        s, p = random_starlike_embedding(seed, 1 + seed % 5, 1 + (seed // 5) % 5)
        assert star_orientation(s, p.center) == 1
        sp = spectrum(s, 8)
        assert abs(sp[1]) + abs(sp[-1]) > 1e-6


def test_total_derivative_of_bandlimited_starlike_embeddings():
    rng = np.random.default_rng(23)
    for seed in range(20):
        deg = 1 + seed % 4
        s, p = random_starlike_embedding(seed, deg, deg, bandlimited=True)
        sp = spectrum(s, deg + 2)
        assert sp.tail_mass < 1e-10
        z = 0.999 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
        fz, fzbar = wirtinger(sp, z)
        assert np.min(np.abs(fz) + np.abs(fzbar)) > 1e-8


def test_tail_mass_reports_truncation():
    sp = spectrum(sample_map(folding_map, 64), 1)
    assert sp.tail_mass == pytest.approx(1.5)
