import math

import numpy as np
import pytest

from analytic.formulas import (PhysicalParams, bessel_zero_limit, chi, chi0, chi0_zeros, chi_column,
                               chi_column_direct, chi_column_recurrence, coherent_count_prob, epsilon_false_null,
                               eta_false_null, eta_small_angle, first_chi0_zero, spontaneous_emission_probability,
                               theta_single_pass)
from shared.errors import ValidationError


def test_theta_single_pass():
    assert theta_single_pass(PhysicalParams(1.0, 3.0, 0.01, 1.0)) == pytest.approx(1.3263e-4, rel=1e-4)
    assert theta_single_pass(PhysicalParams(780e-9, 2e-6, 0.0, 1e9)) == 0
    with pytest.warns(UserWarning):
        assert theta_single_pass(PhysicalParams(1.0, 1.0, 1.0, 1.0)) == pytest.approx(0.11937, abs=1e-5)


@pytest.mark.parametrize("kwargs", [dict(wavelength=0), dict(waist=-1), dict(detuning=0), dict(linewidth=-1),
                                    dict(passes=0)])
def test_physical_params_validation(kwargs):
    values = dict(wavelength=1.0, waist=3.0, linewidth=0.01, detuning=1.0, passes=1)
    values.update(kwargs)
    with pytest.raises(ValidationError):
        PhysicalParams(**values)


def test_epsilon():
    assert epsilon_false_null(100, 0.0) == 1
    assert epsilon_false_null(100, 0.1) == pytest.approx(math.exp(-1), rel=1e-12)
    assert round(-math.log(1e-3)) == 7
    with pytest.raises(ValidationError):
        epsilon_false_null(0, 0.1)


def test_spontaneous_emission_probability():
    assert spontaneous_emission_probability(100, 0.1, 0.01) == pytest.approx(0.2)


def test_coherent_count_prob():
    assert coherent_count_prob(0, 100, 0.0) == 1
    assert coherent_count_prob(0, 100, 0.1) == pytest.approx(0.68394, abs=1e-5)
    total = sum(coherent_count_prob(n, 100, 0.1) for n in range(60))
    assert total == pytest.approx(1, abs=1e-12)
    tail = sum(coherent_count_prob(n, 100, 0.1) for n in range(1, 60))
    assert tail == pytest.approx(0.5 * (1 - epsilon_false_null(100, 0.1)), abs=1e-12)


def test_chi_one_photon():
    theta = 0.37
    s, c = math.sin(theta), math.cos(theta)
    assert chi(0, 1, theta) == pytest.approx(math.cos(2 * theta), abs=1e-15)
    assert chi(1, 1, theta) == pytest.approx(-math.sqrt(2) * s * c, abs=1e-15)
    assert chi(-1, 1, theta) == pytest.approx(math.sqrt(2) * s * c, abs=1e-15)


@pytest.mark.parametrize("n_photons", [1, 7, 30])
def test_chi_without_interaction(n_photons):
    expected = np.zeros(2 * n_photons + 1)
    expected[n_photons] = 1
    np.testing.assert_allclose(chi_column(n_photons, 0.0), expected, atol=1e-15)


@pytest.mark.parametrize("n_photons", [1, 5, 16, 17, 50, 100, 200])
@pytest.mark.parametrize("theta", [0.01, 0.3, 0.7, 1.2, 1.5])
def test_chi_normalization(n_photons, theta):
    assert np.sum(chi_column(n_photons, theta) ** 2) == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("n_photons", [2, 9, 40])
def test_chi_parity(n_photons):
    m = np.arange(-n_photons, n_photons + 1)
    np.testing.assert_allclose(chi_column(n_photons, -0.4), (-1.0) ** m * chi_column(n_photons, 0.4), atol=1e-13)


@pytest.mark.parametrize("n_photons", [1, 3, 8, 16])
@pytest.mark.parametrize("theta", [0.05, 0.6, 1.3])
def test_chi_evaluations_agree(n_photons, theta):
    np.testing.assert_allclose(chi_column_recurrence(n_photons, theta), chi_column_direct(n_photons, theta),
                               atol=1e-10)


@pytest.mark.parametrize("n_photons", [3, 50, 400])
def test_chi0_is_legendre(n_photons):
    for theta in (0.004, 0.2, 1.1):
        assert chi(0, n_photons, theta) == pytest.approx(float(chi0(n_photons, theta)), abs=1e-11)


def test_chi_index_range():
    with pytest.raises(ValidationError):
        chi(3, 2, 0.1)
    with pytest.raises(ValidationError):
        chi(0, 0, 0.1)


def test_eta():
    assert eta_false_null(1, math.pi / 8) == pytest.approx(0.5, abs=1e-15)
    assert eta_false_null(100, 0.01196) <= 1e-6


@pytest.mark.parametrize("n_theta", [0.05, 0.1, 0.2, 0.3])
def test_eta_heisenberg_scaling(n_theta):
    n_photons = 100
    theta = n_theta / n_photons
    log_eta = math.log(eta_false_null(n_photons, theta))
    exponent = -math.log(eta_small_angle(n_photons, theta))
    assert abs(log_eta + exponent) / exponent <= 0.05
    # Same N theta at ten times the photons gives nearly the same eta
    assert eta_false_null(10 * n_photons, theta / 10) == pytest.approx(math.exp(log_eta), rel=0.02)


def test_first_zero_one_photon():
    theta, n_theta = first_chi0_zero(1)
    assert theta == pytest.approx(math.pi / 4, rel=1e-10)
    assert n_theta == pytest.approx(0.78540, abs=1e-5)


def test_first_zero_hundred_photons():
    theta, n_theta = first_chi0_zero(100)
    assert abs(n_theta - 1.196) <= 0.002
    assert abs(float(chi0(100, theta))) < 1e-8


def test_first_zero_large_n_limit():
    limit = bessel_zero_limit()
    assert limit == pytest.approx(1.20242, abs=1e-5)
    assert abs(first_chi0_zero(2000)[1] - limit) / limit < 0.005


def test_first_zero_increases_with_n():
    values = [first_chi0_zero(n)[1] for n in (1, 2, 5, 10, 50, 100, 500, 2000)]
    assert values == sorted(values)


def test_chi0_zeros():
    zeros = chi0_zeros(100, 3)
    assert len(zeros) == 3
    assert zeros == sorted(zeros)
    assert zeros[0] == pytest.approx(first_chi0_zero(100)[0], rel=1e-9)
    for theta in zeros:
        assert abs(float(chi0(100, theta))) < 1e-7
    assert chi0_zeros(1, 1)[0] == pytest.approx(math.pi / 4, rel=1e-10)
    assert len(chi0_zeros(4, 4)) == 4
    with pytest.raises(ValidationError):
        chi0_zeros(2, 3)
