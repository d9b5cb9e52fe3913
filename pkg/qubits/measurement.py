"""
Photon counting at the interferometer output: outcome distributions, the conditional state of the qubit register
and seeded sampling.

Coherent inputs are read out by counting the photons of the upper port (mode 0); the lower port is left unmeasured
and traced out exactly, so the collapsed register is a density matrix in general. Twin-Fock inputs are read out by
the number difference (N+m) - (N-m) = 2m; the total photon number is fixed, so the collapse is a complete photon
measurement and the register stays pure.
"""

from dataclasses import dataclass

import numpy as np

from optics.fock import FOCK_TOL
from optics.interferometer import JointState
from qubits.register import QubitDensity
from shared.errors import ValidationError, ZeroProbabilityError

ZERO_PROBABILITY = 1e-15
SAMPLING_TOL = 1e-6
NEGATIVE_MASS_TOL = 1e-12

UPPER_COUNT = "count"
NUMBER_DIFFERENCE = "difference"


@dataclass(frozen=True)
class MeasurementOutcome:
    """ kind is UPPER_COUNT (value n >= 0 photons in the upper port) or NUMBER_DIFFERENCE (value m, difference 2m) """
    kind: str
    value: int

    def __post_init__(self):
        if self.kind not in (UPPER_COUNT, NUMBER_DIFFERENCE):
            raise ValidationError("Unknown outcome kind '{}'".format(self.kind))
        if self.kind == UPPER_COUNT and self.value < 0:
            raise ValidationError("Photon count must be >= 0, got {}".format(self.value))

    @property
    def is_null(self) -> bool:
        return self.value == 0

    @property
    def is_odd(self) -> bool:
        return self.value % 2 == 1

    @property
    def branch(self) -> str:
        """ Transcript label: "null", "count n" or "difference m" """
        if self.is_null:
            return "null"
        return "{} {}".format(self.kind, self.value)


@dataclass(frozen=True)
class Distribution:
    """ Probability table over outcome values of one kind, values in ascending order """
    kind: str
    probabilities: dict

    def total(self) -> float:
        return float(sum(self.probabilities.values()))

    def __getitem__(self, value) -> float:
        return self.probabilities.get(value, 0.0)


@dataclass(frozen=True)
class CollapseResult:
    probability: float
    post_state: QubitDensity

    @property
    def purity(self) -> float:
        return self.post_state.purity()


def upper_count_distribution(state: JointState) -> Distribution:
    """ P(n) = sum_b sum_n1 |amp(b, n, n1)|^2 for n = 0..cutoff """
    probabilities = np.zeros(state.cutoff + 1)
    for block in state.blocks:
        probabilities += (np.abs(block.as_matrix()) ** 2).sum(axis=1)
    return Distribution(UPPER_COUNT, {n: float(p) for n, p in enumerate(probabilities)})


def _difference_sector(state: JointState, tol=FOCK_TOL) -> int:
    """ The single total photon number sector the state lives in, i.e. 2N for a twin-Fock input """
    weights = sum(block.sector_norms() for block in state.blocks)
    occupied = [n for n, w in enumerate(weights) if w > tol]
    if len(occupied) != 1 or occupied[0] % 2:
        raise ValidationError("Number-difference readout needs a state confined to one even photon sector, "
                              "found sectors {}".format(occupied))
    return occupied[0]


def difference_distribution(state: JointState) -> Distribution:
    """ P(m) = sum_b |amp(b, N+m, N-m)|^2 for m = -N..N """
    n_photons = _difference_sector(state) // 2
    probabilities = dict()
    for m in range(-n_photons, n_photons + 1):
        probabilities[m] = float(sum(abs(b.amplitude(n_photons + m, n_photons - m)) ** 2 for b in state.blocks))
    return Distribution(NUMBER_DIFFERENCE, probabilities)


def reduced_qubit_density(state: JointState) -> np.ndarray:
    """ Register density matrix with every photon traced out, rho[b, b'] = sum amp(b, .) conj(amp(b', .)) """
    vectors = np.array([np.concatenate(block.sectors) for block in state.blocks])
    return vectors @ vectors.conj().T


def collapse_on_count(state: JointState, n: int) -> CollapseResult:
    """ Projects the upper port onto n photons and traces out the lower port.
        Coherences between configurations are weighted by the overlaps of their residual lower-port states.
    :param state: Propagated JointState of a coherent input
    :param n: Photon count detected in the upper port
    :return: CollapseResult with the outcome probability and the renormalized register density matrix
    """
    if n < 0 or n > state.cutoff:
        raise ZeroProbabilityError("Count {} lies outside the stored photon numbers 0..{}".format(n, state.cutoff))
    residuals = np.array([block.as_matrix()[n, :state.cutoff - n + 1] for block in state.blocks])
    return _conditioned(residuals @ residuals.conj().T, "count {}".format(n))


def collapse_on_difference(state: JointState, m: int) -> CollapseResult:
    """ Projects onto |N+m, N-m>; the post-measurement register is pure """
    n_photons = _difference_sector(state) // 2
    if abs(m) > n_photons:
        raise ValidationError("Difference index |m| = {} exceeds N = {}".format(abs(m), n_photons))
    vector = np.array([block.amplitude(n_photons + m, n_photons - m) for block in state.blocks])
    return _conditioned(np.outer(vector, vector.conj()), "difference {}".format(m))


def collapse(state: JointState, outcome) -> CollapseResult:
    """ Dispatches to the collapse matching the outcome kind """
    if outcome.kind == UPPER_COUNT:
        return collapse_on_count(state, outcome.value)
    return collapse_on_difference(state, outcome.value)


def _conditioned(unnormalized, label) -> CollapseResult:
    probability = float(np.trace(unnormalized).real)
    if probability < ZERO_PROBABILITY:
        raise ZeroProbabilityError("Outcome '{}' has probability {:.3g}, cannot condition on it"
                                   .format(label, probability))
    return CollapseResult(probability, QubitDensity.from_unnormalized(unnormalized))


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """ Private generator of one trial, derived from (master seed, trial index) """
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(trial)]))


def sample_outcome(distribution: Distribution, rng: np.random.Generator) -> MeasurementOutcome:
    """ Inverse-CDF draw from a distribution renormalized to unit mass
    :param distribution: Distribution summing to 1 within SAMPLING_TOL
    :param rng: numpy Generator; identical generator states give identical outcomes
    :return: MeasurementOutcome of the distribution's kind
    """
    if not distribution.probabilities:
        raise ValidationError("Cannot sample from an empty distribution")
    values = sorted(distribution.probabilities)
    weights = np.array([distribution.probabilities[v] for v in values], dtype=float)
    if weights.min() < -NEGATIVE_MASS_TOL:
        raise ValidationError("Distribution has negative mass {!r}".format(weights.min()))
    weights = np.clip(weights, 0, None)
    total = weights.sum()
    if abs(total - 1) > SAMPLING_TOL:
        raise ValidationError("Distribution sums to {!r}, expected 1 within {:g}".format(total, SAMPLING_TOL))

    cdf = np.cumsum(weights / total)
    index = int(np.searchsorted(cdf, rng.random(), side="right"))
    index = min(index, len(values) - 1)
    # A draw landing past the last positive weight (roundoff in cdf) falls back to the last outcome with mass
    while weights[index] == 0:
        index -= 1
    return MeasurementOutcome(distribution.kind, int(values[index]))


def measurement_kind(field_kind: str) -> str:
    """ Readout used for a field: upper-port counting for coherent light, number difference for twin-Fock light """
    return NUMBER_DIFFERENCE if field_kind == "twinfock" else UPPER_COUNT
