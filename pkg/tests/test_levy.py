import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from xidist.accuracy import (
    DomainError,
    InsufficientZerosError,
    MeasureDivergenceError,
)
from xidist.levy import (
    ExpPart,
    GammaPart,
    PrimeCutoff,
    QuasiLevyTriplet,
    SignedMeasure,
    ZeroCosPart,
    cf_from_triplet,
    cf_from_zeros,
    cf_xi_star,
    exp_factor_log,
    gamma_drift,
    gamma_levy_log,
    log_cf_from_triplet,
    off_line_factor_log,
    prime_atom_tail_bound,
    prime_atoms,
    prime_log_ratio,
    primes_up_to,
    total_variation_integral,
    xi_star_triplet,
    xi_triplet,
    zero_pair_factor_log,
)
from xidist.specfun import log_gamma, xi, zeta
from xidist.zeros import ZeroList, ZeroRecord

GAMMA1 = 14.134725141734694
CUT = PrimeCutoff(100_000, 40)


# -------------------------------------------------------- exp_factor_log

def test_exp_factor_log_zero():
    assert exp_factor_log(1 + 0j, 0.0) == 0.0


def test_exp_factor_log_unit():
    want = complex(0.5 * math.log(0.5), math.pi / 4)
    assert abs(exp_factor_log(1 + 0j, 1.0) - want) < 1e-15


def test_exp_factor_log_matches_quadrature():
    alpha, z = 0.3 + 2.0j, 1.7

    def integrand_re(x):
        return ((cmath.exp(1j * z * x) - 1) * cmath.exp(-alpha * x) / x).real

    def integrand_im(x):
        return ((cmath.exp(1j * z * x) - 1) * cmath.exp(-alpha * x) / x).imag

    val = complex(
        quad(integrand_re, 0, 150, limit=800)[0], quad(integrand_im, 0, 150, limit=800)[0]
    )
    assert abs(exp_factor_log(alpha, z) - val) < 1e-9


def test_exp_factor_log_domain():
    with pytest.raises(DomainError):
        exp_factor_log(-1 + 2j, 1.0)


# -------------------------------------------------- paired-zero factors

def test_zero_pair_factor_at_zero():
    assert zero_pair_factor_log(0.75, GAMMA1, 0.0) == 0.0


def test_zero_pair_factor_matches_signed_measure_integral():
    sigma, gamma, t = 1.0, GAMMA1, 2.0
    a = sigma - 0.5

    def f(x):
        return -2.0 * (cmath.exp(1j * t * x) - 1) * math.cos(gamma * x) * math.exp(-a * x) / x

    re = quad(lambda x: f(x).real, 0, 60, limit=4000)[0]
    im = quad(lambda x: f(x).imag, 0, 60, limit=4000)[0]
    assert abs(zero_pair_factor_log(sigma, gamma, t) - complex(re, im)) < 1e-8


def test_zero_pair_modulus_witness():
    # at t^2 = 2((sigma-1/2)^2 + gamma^2) the factor has modulus > 1,
    # so it cannot be a characteristic function
    for sigma in (0.6, 1.0, 2.0):
        a2 = (sigma - 0.5) ** 2
        t = math.sqrt(2.0 * (a2 + GAMMA1**2))
        closed = ((a2 + GAMMA1**2 - t * t) ** 2 + ((2 * sigma - 1) * t) ** 2) / (
            a2 + GAMMA1**2
        ) ** 2
        val = abs(cmath.exp(zero_pair_factor_log(sigma, GAMMA1, t))) ** 2
        assert closed > 1.0
        assert abs(val - closed) <= 1e-10 * closed


def test_zero_pair_domain():
    with pytest.raises(DomainError):
        zero_pair_factor_log(0.5, GAMMA1, 1.0)
    with pytest.raises(DomainError):
        zero_pair_factor_log(1.0, -3.0, 1.0)


# ------------------------------------------------------------ zero product

def test_cf_from_zeros_at_zero(small_zeros):
    assert cf_from_zeros(2.0, 0.0, small_zeros, 10).value == 1.0 + 0.0j


def test_cf_from_zeros_truncation_decreases(small_zeros):
    ref = xi(complex(2.0, -3.0)) / xi(2.0 + 0j)
    r_small = abs(cf_from_zeros(2.0, 3.0, small_zeros, 5).value - ref)
    r_large = abs(cf_from_zeros(2.0, 3.0, small_zeros, len(small_zeros)).value - ref)
    assert r_large < r_small


def test_cf_from_zeros_tail_estimate_tracks_truncation(small_zeros):
    ref = xi(complex(2.0, -3.0)) / xi(2.0 + 0j)
    res = cf_from_zeros(2.0, 3.0, small_zeros, len(small_zeros))
    actual = abs(res.value - ref)
    # the crude estimate should be the right order of magnitude
    assert 0.05 * actual < res.tail_estimate < 50 * actual


def test_cf_from_zeros_insufficient(small_zeros):
    with pytest.raises(InsufficientZerosError):
        cf_from_zeros(2.0, 1.0, small_zeros, len(small_zeros) + 1)


def test_off_line_four_factor_closed_form():
    sigma, beta, gamma, t = 1.5, 0.7, 25.0, 2.0
    got = cmath.exp(off_line_factor_log(sigma, beta, gamma, t))
    want = 1.0 + 0.0j
    for off in (sigma - beta, sigma - 1 + beta):
        for sgn in (+1.0, -1.0):
            alpha = complex(off, sgn * gamma)
            want *= (alpha - 1j * t) / alpha
    assert abs(got - want) < 1e-12


def test_off_line_records_enter_product(small_zeros):
    synthetic = ZeroList(
        records=small_zeros.records,
        t_max=small_zeros.t_max,
        off_line=(ZeroRecord(1, 30.0, 1e-9, beta=0.7),),
    )
    with_off = cf_from_zeros(1.5, 2.0, synthetic, 10).value
    without = cf_from_zeros(1.5, 2.0, small_zeros, 10).value
    expected_factor = cmath.exp(off_line_factor_log(1.5, 0.7, 30.0, 2.0))
    assert abs(with_off - without * expected_factor) < 1e-12


def test_off_line_domain():
    with pytest.raises(DomainError):
        off_line_factor_log(0.9, 0.05, 30.0, 1.0)  # sigma - 1 + beta > 0 fails


# ----------------------------------------------------------------- primes

def test_primes_up_to():
    assert list(primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_prime_atoms_locations_exceed_half():
    locs, masses = prime_atoms(2.0, PrimeCutoff(50, 10))
    assert np.min(locs) == pytest.approx(math.log(2.0))
    assert np.min(locs) > 0.5
    assert np.all(masses > 0.0)


def test_prime_log_ratio_zero():
    assert prime_log_ratio(2.0, 0.0, CUT) == 0.0


def test_prime_log_ratio_against_zeta():
    big = PrimeCutoff(30_000_000, 40)
    for sigma, t in ((2.0, 1.0), (3.0, 7.0)):
        ours = prime_log_ratio(sigma, t, big)
        ref = cmath.log(zeta(complex(sigma, -t)) / zeta(complex(sigma, 0.0)))
        assert abs(ours - ref) <= 1e-8


def test_prime_log_ratio_domain():
    with pytest.raises(DomainError):
        prime_log_ratio(1.0, 1.0, CUT)


def test_prime_tail_bound_dominates_measured_tail():
    # drop the primes between 10^3 and 10^5 and compare with the bound at 10^3
    small, large = PrimeCutoff(1000, 40), PrimeCutoff(100_000, 40)
    for sigma in (1.5, 2.0):
        s_locs, s_masses = prime_atoms(sigma, small)
        l_locs, l_masses = prime_atoms(sigma, large)
        measured = 2.0 * (np.sum(l_masses) - np.sum(s_masses))
        assert measured < prime_atom_tail_bound(sigma, small)


# ------------------------------------------------------------- Gamma route

def test_gamma_drift_frozen():
    # independent oracle: C(sigma) = -digamma(sigma) - sum_k e^{-(sigma+k)}/(sigma+k)
    assert abs(gamma_drift(2.0) - (-0.5135800393141067)) < 1e-11
    assert abs(gamma_drift(1.0) - 0.1185405195144510) < 1e-11
    assert abs(gamma_drift(0.5) - 0.5566809122741282) < 1e-11


def test_gamma_levy_log_zero():
    assert gamma_levy_log(2.0, 0.0) == 0.0


@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("t", [1.0, 4.0])
def test_gamma_levy_log_matches_log_gamma(sigma, t):
    ours = gamma_levy_log(sigma, t)
    ref = log_gamma(complex(sigma, -t)) - log_gamma(complex(sigma, 0.0))
    assert abs(ours - ref) <= 1e-8


def test_gamma_levy_log_domain():
    with pytest.raises(DomainError):
        gamma_levy_log(0.0, 1.0)


# ---------------------------------------------------------------- triplets

def test_exponential_law_triplet_closed_form():
    # density e^{-x}/x with no compensator: CF is 1/(1-it) at the unit rate
    m = SignedMeasure(continuous=(ExpPart(rate=1.0, coeff=1.0),))
    tr = QuasiLevyTriplet(a=0.0, drift=0.0, measure=m, truncation_halfwidth=0.0)
    got = cf_from_triplet(tr, 1.0)
    assert abs(got - 1.0 / (1.0 - 1j)) < 1e-10
    assert abs(cf_from_triplet(tr, -1.0) - (1.0 / (1.0 + 1j))) < 1e-10


def test_triplet_cf_is_one_at_zero():
    tr = xi_triplet(2.0, CUT)
    assert cf_from_triplet(tr, 0.0) == 1.0 + 0.0j


def test_xi_triplet_drift_frozen():
    # lambda_2 from 40-digit quadrature of the two drift integrals
    assert abs(xi_triplet(2.0, CUT).drift - (-0.0778944170197198)) < 1e-10


def test_xi_triplet_combined_density_negative_at_large_x():
    m = xi_triplet(2.0, CUT).measure
    assert m.continuous_density(5.0) < 0.0


def test_xi_triplet_atoms_clear_compensator():
    tr = xi_triplet(2.0, CUT)
    assert np.min(tr.measure.atom_locations) == pytest.approx(math.log(2.0))
    assert np.min(tr.measure.atom_locations) > tr.truncation_halfwidth


@pytest.mark.parametrize("sigma", [1.5, 2.0, 3.0])
def test_xi_triplet_reconstructs_cf(sigma):
    tr = xi_triplet(sigma, CUT)
    budget = 1e-6 + prime_atom_tail_bound(sigma, CUT)
    for t in (1.0, 3.0, 10.0):
        ref = xi(complex(sigma, -t)) / xi(complex(sigma, 0.0))
        assert abs(cf_from_triplet(tr, t) - ref) <= budget


def test_xi_triplet_domain():
    with pytest.raises(DomainError):
        xi_triplet(1.0, CUT)


def test_xi_triplet_point_example_strict():
    # sigma = 2, t = 3 lands inside the flat 1e-6 even before the tail budget
    tr = xi_triplet(2.0, CUT)
    ref = xi(complex(2.0, -3.0)) / xi(complex(2.0, 0.0))
    assert abs(cf_from_triplet(tr, 3.0) - ref) <= 1e-6


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.25, max_value=8.0))
def test_triplet_cf_hermitian(t):
    tr = xi_triplet(2.0, CUT)
    assert abs(cf_from_triplet(tr, -t) - cf_from_triplet(tr, t).conjugate()) < 1e-10


# --------------------------------------------------------------- Xi* route

def test_cf_xi_star_at_zero():
    assert cf_xi_star(2.0, 0.0) == 1.0 + 0.0j


def test_xi_star_density_positive():
    m = xi_star_triplet(2.0, CUT).measure
    for x in (0.1, 1.0, 5.0):
        assert m.continuous_density(x) > 0.0


def test_xi_star_reconstruction():
    tr = xi_star_triplet(2.0, CUT)
    budget = 1e-6 + prime_atom_tail_bound(2.0, CUT)
    for t in (1.0, 3.0, 10.0):
        assert abs(cf_from_triplet(tr, t) - cf_xi_star(2.0, t)) <= budget


def test_xi_star_equals_exponential_times_direct():
    sigma, t = 2.0, 3.0
    want = ((sigma - 1.0) / complex(sigma - 1.0, -t)) * xi(complex(sigma, -t)) / xi(
        complex(sigma, 0.0)
    )
    assert abs(cf_xi_star(sigma, t) - want) < 1e-14


def test_xi_star_domain():
    with pytest.raises(DomainError):
        cf_xi_star(1.0, 2.0)


def test_triplet_uniqueness_probe():
    # two routes to the same log-CF: direct triplet, versus the smoothed
    # triplet with the exponential factor peeled off afterwards
    sigma = 2.0
    tr = xi_triplet(sigma, CUT)
    trs = xi_star_triplet(sigma, CUT)
    for t in (0.5, 2.0, 7.0):
        log_a = log_cf_from_triplet(tr, t)
        log_b = log_cf_from_triplet(trs, t) - exp_factor_log(complex(sigma - 1.0, 0.0), t)
        assert abs(log_a - log_b) <= 1e-6


# ------------------------------------------------------- total variation

def test_tv_single_atom_exact():
    m = SignedMeasure(atom_locations=np.array([math.log(2.0)]), atom_masses=np.array([0.5]))
    assert total_variation_integral(m) == pytest.approx(0.5 * math.log(2.0) ** 2, rel=1e-14)


def test_tv_finite_below_bound_chain():
    sigma = 2.0
    tr = xi_triplet(sigma, PrimeCutoff(10_000, 30))
    tv = total_variation_integral(tr.measure)
    atomic_bound = float(
        abs(zeta(complex(sigma, 0.0))) + abs(zeta(complex(2 * sigma, 0.0))) / (1 - 2.0**-sigma)
    )
    continuous_bound = 1.0 / ((1.0 - math.exp(-2.0)) * sigma) + 2.0 / (sigma - 1.0)
    assert math.isfinite(tv)
    assert tv < atomic_bound + continuous_bound


def test_tv_zero_cos_log_growth():
    # undamped cos(gamma x)/x mass grows like log X: the non-integrability
    # that makes the zero-based representation only "pretended"
    m = SignedMeasure(continuous=(ZeroCosPart(gamma=GAMMA1, offset=0.0),))
    v10 = total_variation_integral(m, x_max=10.0)
    v100 = total_variation_integral(m, x_max=100.0)
    v1000 = total_variation_integral(m, x_max=1000.0)
    g1, g2 = v100 - v10, v1000 - v100
    assert v10 < v100 < v1000
    assert abs(g1 / g2 - 1.0) < 0.2  # equal decade increments = log growth


def test_tv_zero_cos_divergence_signal():
    m = SignedMeasure(continuous=(ZeroCosPart(gamma=GAMMA1, offset=0.0),))
    with pytest.raises(MeasureDivergenceError) as err:
        total_variation_integral(m)
    assert len(err.value.partials) > 3


def test_tv_damped_zero_cos_converges():
    m = SignedMeasure(continuous=(ZeroCosPart(gamma=GAMMA1, offset=1.0),))
    assert math.isfinite(total_variation_integral(m))


# ----------------------------------------------- generic triplet evaluation

def test_uncompensated_second_order_pole_rejected():
    m = SignedMeasure(continuous=(GammaPart(2.0),))
    tr = QuasiLevyTriplet(a=0.0, drift=0.0, measure=m, truncation_halfwidth=0.0)
    with pytest.raises(DomainError):
        cf_from_triplet(tr, 1.0)


def test_undecaying_measure_rejected():
    m = SignedMeasure(continuous=(ZeroCosPart(gamma=2.0, offset=0.0),))
    tr = QuasiLevyTriplet(a=0.0, drift=0.0, measure=m, truncation_halfwidth=0.0)
    with pytest.raises(DomainError):
        cf_from_triplet(tr, 1.0)


def test_gaussian_component():
    tr = QuasiLevyTriplet(a=1.0, drift=0.5, measure=SignedMeasure(), truncation_halfwidth=0.0)
    t = 1.3
    want = cmath.exp(-0.5 * t * t + 0.5j * t)
    assert abs(cf_from_triplet(tr, t) - want) < 1e-14


def test_zero_cos_triplet_matches_pair_factor(small_zeros):
    # quadrature route through the signed measure vs the closed-form factor log
    sigma, t, k = 1.25, 1.5, 3
    gammas = [r.gamma for r in small_zeros.records[:k]]
    m = SignedMeasure(
        continuous=tuple(ZeroCosPart(gamma=g, offset=sigma - 0.5) for g in gammas)
    )
    tr = QuasiLevyTriplet(a=0.0, drift=0.0, measure=m, truncation_halfwidth=0.0)
    want = sum(zero_pair_factor_log(sigma, g, t) for g in gammas)
    got = log_cf_from_triplet(tr, t)
    assert abs(got - want) < 1e-8


@settings(max_examples=25, deadline=None)
@given(
    st.floats(min_value=0.3, max_value=4.0),
    st.floats(min_value=-8.0, max_value=8.0),
)
def test_exp_part_random_rates(rate, t):
    m = SignedMeasure(continuous=(ExpPart(rate=rate, coeff=1.0),))
    tr = QuasiLevyTriplet(a=0.0, drift=0.0, measure=m, truncation_halfwidth=0.0)
    want = rate / complex(rate, -t)
    assert abs(cf_from_triplet(tr, t) - want) < 1e-9


def test_signed_measure_validation():
    with pytest.raises(ValueError):
        SignedMeasure(atom_locations=np.array([0.0]), atom_masses=np.array([1.0]))
    with pytest.raises(ValueError):
        SignedMeasure(atom_locations=np.array([1.0]), atom_masses=np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        PrimeCutoff(p_max=1)
    with pytest.raises(ValueError):
        QuasiLevyTriplet(a=0.0, drift=0.0, measure=SignedMeasure(), truncation_halfwidth=-1.0)
