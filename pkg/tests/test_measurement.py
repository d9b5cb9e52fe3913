import math

import numpy as np
import pytest

from analytic.formulas import coherent_count_prob, eta_false_null, first_chi0_zero
from optics.fock import make_coherent_pair, make_twin_fock
from optics.interferometer import InteractionSettings, make_joint, propagate_interferometer
from qubits.measurement import (Distribution, MeasurementOutcome, NUMBER_DIFFERENCE, UPPER_COUNT, collapse,
                                collapse_on_count, collapse_on_difference, difference_distribution,
                                reduced_qubit_density, sample_outcome, trial_rng, upper_count_distribution)
from qubits.register import QubitState, plus_amplitudes
from shared.errors import ValidationError, ZeroProbabilityError

C = np.array([0.6, 0.8j])


def coherent_joint(mean, theta, c=C):
    qubits = QubitState.product(c, plus_amplitudes())
    joint = make_joint(qubits, make_coherent_pair(math.sqrt(mean), 0))
    return propagate_interferometer(joint, InteractionSettings(theta))


def twin_fock_joint(n_photons, theta, c=C):
    qubits = QubitState.product(c, plus_amplitudes())
    return propagate_interferometer(make_joint(qubits, make_twin_fock(n_photons)), InteractionSettings(theta))


@pytest.fixture(scope="module")
def hundred_photons():
    return coherent_joint(100, 0.1)


def test_null_probability_of_coherent_light(hundred_photons):
    distribution = upper_count_distribution(hundred_photons)
    exact_mean = 100 * math.sin(0.1) ** 2
    assert abs(distribution[0] - 0.5 * (1 + math.exp(-exact_mean))) < 1e-6
    # The small-angle form 1/2 (1 + e^-1) differs by the sin^2 correction only
    assert abs(distribution[0] - 0.5 * (1 + math.exp(-1))) < 1e-3


def test_counts_are_poisson(hundred_photons):
    distribution = upper_count_distribution(hundred_photons)
    for n in range(1, 12):
        assert abs(distribution[n] - coherent_count_prob(n, 100, 0.1, exact=True)) < 1e-6
    assert abs(distribution.total() - 1) < 1e-8


def test_difference_distribution():
    joint = twin_fock_joint(3, 0.2)
    distribution = difference_distribution(joint)
    assert sorted(distribution.probabilities) == [-3, -2, -1, 0, 1, 2, 3]
    assert abs(distribution.total() - 1) < 1e-12
    assert difference_distribution(twin_fock_joint(3, 0.0))[0] == pytest.approx(1, abs=1e-12)


def test_difference_needs_a_single_sector():
    with pytest.raises(ValidationError):
        difference_distribution(coherent_joint(4, 0.2))


def test_null_collapse_at_chi0_zero():
    theta, _ = first_chi0_zero(2)
    result = collapse_on_difference(twin_fock_joint(2, theta), 0)
    assert result.probability == pytest.approx(0.5, abs=1e-12)
    expected = np.array([0, C[0], C[1], 0])
    assert result.post_state.fidelity(expected) == pytest.approx(1, abs=1e-12)
    assert result.purity == pytest.approx(1, abs=1e-12)


def test_nonzero_difference_collapse():
    result = collapse(twin_fock_joint(2, 0.3), MeasurementOutcome(NUMBER_DIFFERENCE, 1))
    expected = np.array([C[0], 0, 0, -C[1]])
    assert result.post_state.fidelity(expected) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_count_collapse_is_a_parity_state(hundred_photons, n):
    result = collapse_on_count(hundred_photons, n)
    expected = np.array([C[0], 0, 0, (-1) ** n * C[1]])
    assert result.post_state.fidelity(expected) == pytest.approx(1, abs=1e-9)
    assert result.purity == pytest.approx(1, abs=1e-9)


def test_null_count_collapse_is_mixed(hundred_photons):
    result = collapse_on_count(hundred_photons, 0)
    assert result.purity < 1 - 1e-4
    assert result.post_state.fidelity(np.array([0, C[0], C[1], 0])) > 0.7


def test_zero_probability_outcome():
    with pytest.raises(ZeroProbabilityError):
        collapse_on_difference(twin_fock_joint(2, 0.0), 1)
    with pytest.raises(ZeroProbabilityError):
        collapse_on_count(coherent_joint(4, 0.0), 3)


def test_no_interaction_leaves_the_register_alone():
    qubits = QubitState.product(C, plus_amplitudes())
    rho = reduced_qubit_density(twin_fock_joint(2, 0.0))
    np.testing.assert_allclose(rho, qubits.density().matrix, atol=1e-12)


def test_sampling_is_reproducible():
    distribution = Distribution(UPPER_COUNT, {0: 0.25, 1: 0.5, 2: 0.25})
    first = [sample_outcome(distribution, trial_rng(7, t)).value for t in range(50)]
    second = [sample_outcome(distribution, trial_rng(7, t)).value for t in range(50)]
    assert first == second
    assert set(first) == {0, 1, 2}


def test_sampling_never_returns_empty_outcomes():
    distribution = Distribution(NUMBER_DIFFERENCE, {-1: 0.0, 0: 1.0, 1: 0.0})
    assert {sample_outcome(distribution, trial_rng(3, t)).value for t in range(20)} == {0}


def test_sampling_rejects_bad_mass():
    with pytest.raises(ValidationError):
        sample_outcome(Distribution(UPPER_COUNT, {0: 0.5, 1: 0.4}), trial_rng(1, 0))
    with pytest.raises(ValidationError):
        sample_outcome(Distribution(UPPER_COUNT, {0: 1.1, 1: -0.1}), trial_rng(1, 0))


def test_outcome_labels():
    assert MeasurementOutcome(UPPER_COUNT, 0).branch == "null"
    assert MeasurementOutcome(UPPER_COUNT, 3).is_odd
    assert MeasurementOutcome(NUMBER_DIFFERENCE, -1).is_odd
    assert MeasurementOutcome(NUMBER_DIFFERENCE, -2).branch == "difference -2"
    with pytest.raises(ValidationError):
        MeasurementOutcome(UPPER_COUNT, -1)


@pytest.mark.parametrize("joint", ["coherent", "twinfock"])
def test_collapses_recombine_into_the_reduced_state(hundred_photons, joint):
    """Averaging the conditional states over the outcome distribution gives the unconditioned register"""
    state = hundred_photons if joint == "coherent" else twin_fock_joint(4, 0.3)
    distribution = upper_count_distribution(state) if joint == "coherent" else difference_distribution(state)
    kind = UPPER_COUNT if joint == "coherent" else NUMBER_DIFFERENCE
    average = np.zeros((4, 4), dtype=complex)
    for value, p in distribution.probabilities.items():
        if p < 1e-14:
            continue
        result = collapse(state, MeasurementOutcome(kind, value))
        assert result.probability == pytest.approx(p, abs=1e-12)
        average += result.probability * result.post_state.matrix
    np.testing.assert_allclose(average, reduced_qubit_density(state), atol=1e-8)


@pytest.mark.parametrize("mean, theta", [(100, 0.02), (25, 0.02), (100, 0.01), (50, 0.015)])
def test_null_count_collapse_at_small_angles(mean, theta):
    """For N theta^2 <= 5 and theta <= 0.02 the null branch is the pure state with a sqrt(eps) admixture"""
    result = collapse_on_count(coherent_joint(mean, theta), 0)
    root_epsilon = math.exp(-mean * theta ** 2 / 2)
    expected = np.array([root_epsilon * C[0], C[0], C[1], root_epsilon * C[1]]) / math.sqrt(1 + root_epsilon ** 2)
    assert result.post_state.fidelity(expected) >= 1 - 1e-4


def test_sampling_matches_the_null_probability():
    eta = eta_false_null(10, 0.05)
    p_null = 0.5 * (1 + eta)
    distribution = Distribution(NUMBER_DIFFERENCE, {0: p_null, 1: 1 - p_null})
    rng = np.random.default_rng(20240)
    draws = 100000
    nulls = sum(sample_outcome(distribution, rng).is_null for _ in range(draws))
    assert abs(nulls - draws * p_null) <= 4 * math.sqrt(draws * p_null * (1 - p_null))
