"""
Teleportation, GHZ preparation and entanglement swapping built on one primitive: couple two register qubits to the
interferometer arms, count photons at the output and correct the sign or flip that the outcome left behind.

Register layout for teleportation is (source S, target T) = (0, 1) with T prepared in (|0> + |1>)/sqrt2. After
entangling, a null outcome leaves c0|01> + c1|10> (flipped on the target to c0|00> + c1|11>), an odd outcome
leaves c0|00> - c1|11> (phase pi on |1>_S) and an even nonzero outcome leaves c0|00> + c1|11> directly. The source is
then rotated with a pi/2 pulse, measured, and the target receives a pi/2 phase on |1> (result 0) or |0> (result 1).
"""

import json
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from analytic.formulas import spontaneous_emission_probability
from optics.interferometer import FieldSpec, InteractionSettings, make_joint, propagate_interferometer
from qubits.measurement import (CollapseResult, Distribution, MeasurementOutcome, UPPER_COUNT, ZERO_PROBABILITY,
                                collapse, difference_distribution, measurement_kind, sample_outcome, trial_rng,
                                upper_count_distribution)
from qubits.register import (QubitDensity, QubitState, as_density, ghz_amplitudes, plus_amplitudes,
                             single_qubit_operator)
from shared.errors import ValidationError, ZeroProbabilityError

MIXTURE_WEIGHT_TOL = 1e-14
REGISTER_MATCH_TOL = 1e-12

_HALF_PI_MATRIX = np.array([[1, -1j], [-1j, 1]], dtype=complex) / math.sqrt(2)


@dataclass(frozen=True)
class LocalOp:
    qubit: int

    def __post_init__(self):
        if int(self.qubit) != self.qubit or self.qubit < 0:
            raise ValidationError("Qubit index must be a non-negative integer, got {}".format(self.qubit))

    def matrix(self) -> np.ndarray:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return dict(op=type(self).__name__, **asdict(self))


@dataclass(frozen=True)
class PiPulse(LocalOp):
    """ Swaps |0> and |1> """

    def matrix(self):
        return np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class HalfPiPulse(LocalOp):
    """ |0> -> (|0> - i|1>)/sqrt2, |1> -> (-i|0> + |1>)/sqrt2 """

    def matrix(self):
        return _HALF_PI_MATRIX


@dataclass(frozen=True)
class PhaseImprint(LocalOp):
    """ |level> -> exp(i angle) |level> """
    level: int = 1
    angle: float = math.pi

    def __post_init__(self):
        super().__post_init__()
        if self.level not in (0, 1):
            raise ValidationError("Phase level must be 0 or 1, got {}".format(self.level))
        if not math.isfinite(self.angle):
            raise ValidationError("Phase angle must be finite, got {}".format(self.angle))

    def matrix(self):
        diagonal = np.ones(2, dtype=complex)
        diagonal[self.level] = np.exp(1j * self.angle)
        return np.diag(diagonal)


@dataclass(frozen=True)
class MeasureZ(LocalOp):
    """ Projective measurement in the {|0>, |1>} basis """


def apply_local(op: LocalOp, state, rng: np.random.Generator = None):
    """ Applies a local operation to a pure or mixed register
    :param op: PiPulse, HalfPiPulse, PhaseImprint or MeasureZ
    :param state: QubitState or QubitDensity; the result has the same type
    :param rng: Generator for MeasureZ, which draws exactly one uniform number
    :return: Tuple (new state, measurement result or None)
    """
    if op.qubit >= state.n_qubits:
        raise ValidationError("Qubit index {} is outside a {}-qubit register".format(op.qubit, state.n_qubits))
    if isinstance(op, MeasureZ):
        return _measure_z(op.qubit, state, rng)
    unitary = single_qubit_operator(state.n_qubits, op.qubit, op.matrix())
    if isinstance(state, QubitState):
        return QubitState.normalized(unitary @ state.amplitudes), None
    return QubitDensity.from_unnormalized(unitary @ state.matrix @ unitary.conj().T), None


def _measure_z(qubit, state, rng):
    if rng is None:
        raise ValidationError("MeasureZ needs a random generator")
    one = single_qubit_operator(state.n_qubits, qubit, np.diag([0, 1]))
    zero = np.eye(2 ** state.n_qubits) - one
    if isinstance(state, QubitState):
        p_one = float(np.vdot(state.amplitudes, one @ state.amplitudes).real)
    else:
        p_one = float(np.trace(one @ state.matrix).real)
    result = int(rng.random() < min(max(p_one, 0.0), 1.0))
    projector = one if result else zero
    if isinstance(state, QubitState):
        return QubitState.normalized(projector @ state.amplitudes), result
    return QubitDensity.from_unnormalized(projector @ state.matrix @ projector), result


def pair_sign_correction(outcome: MeasurementOutcome, flip_qubit: int, phase_qubit: int = None) -> list:
    """ Operations that bring the pair to b0|00> + b1|11> after an entangling outcome:
        null -> pi pulse on flip_qubit, odd -> pi phase on |1> of phase_qubit, even nonzero -> nothing
    """
    if outcome.is_null:
        return [PiPulse(flip_qubit)]
    if outcome.is_odd:
        return [PhaseImprint(flip_qubit if phase_qubit is None else phase_qubit, 1, math.pi)]
    return []


def correction_sequence(outcome: MeasurementOutcome, source_result: int = None, pair=(0, 1)) -> list:
    """ Ordered corrections of the teleportation branch selected by an entangling outcome
    :param outcome: MeasurementOutcome of entangle_pair
    :param source_result: Result of the source measurement. If None, the list stops at MeasureZ(S)
    :param pair: (source, target)
    :return: List of LocalOp
    """
    source, target = pair
    ops = pair_sign_correction(outcome, flip_qubit=target, phase_qubit=source)
    ops += [HalfPiPulse(source), MeasureZ(source)]
    if source_result is not None:
        if source_result not in (0, 1):
            raise ValidationError("Source result must be 0 or 1, got {}".format(source_result))
        ops.append(PhaseImprint(target, 1 if source_result == 0 else 0, math.pi / 2))
    return ops


def _pure_components(qubits) -> list:
    """ (weight, QubitState) pairs of a register: the state itself, or the eigen-decomposition of a mixture """
    if isinstance(qubits, QubitState):
        return [(1.0, qubits)]
    weights, vectors = np.linalg.eigh(qubits.matrix)
    keep = weights > MIXTURE_WEIGHT_TOL
    total = weights[keep].sum()
    return [(float(w / total), QubitState.normalized(vectors[:, i])) for i, w in zip(np.flatnonzero(keep),
                                                                                   weights[keep])]


class PreparedEntangler:
    def __init__(self, qubits, field_spec: FieldSpec, settings: InteractionSettings, pair=(0, 1)):
        """ Propagates a register through the interferometer once, so that repeated trials only sample and collapse.
        :param qubits: QubitState or QubitDensity of the register
        :param field_spec: FieldSpec of the input light
        :param settings: InteractionSettings
        :param pair: Register positions coupled to the interferometer arms
        """
        self.register = qubits
        self.field = field_spec
        self.settings = settings
        self.pair = tuple(pair)
        self.kind = measurement_kind(field_spec.kind)
        photons = field_spec.build()
        self.components = [(w, propagate_interferometer(make_joint(q, photons, pair), settings))
                           for w, q in _pure_components(qubits)]
        self.distribution = self._mixed_distribution()
        self._collapses = dict()
        self._lock = threading.Lock()

    def matches(self, qubits, field_spec: FieldSpec, settings: InteractionSettings, pair=(0, 1)) -> bool:
        """ True if the entangler was built for this register (up to a global phase), light, settings and pair """
        if self.field != field_spec or self.settings != settings or self.pair != tuple(pair):
            return False
        mine, theirs = as_density(self.register).matrix, as_density(qubits).matrix
        return mine.shape == theirs.shape and np.allclose(mine, theirs, atol=REGISTER_MATCH_TOL, rtol=0)

    def _mixed_distribution(self) -> Distribution:
        measure = upper_count_distribution if self.kind == UPPER_COUNT else difference_distribution
        probabilities = dict()
        for weight, joint in self.components:
            for value, p in measure(joint).probabilities.items():
                probabilities[value] = probabilities.get(value, 0.0) + weight * p
        return Distribution(self.kind, probabilities)

    def sample(self, rng: np.random.Generator) -> MeasurementOutcome:
        return sample_outcome(self.distribution, rng)

    def collapse(self, outcome: MeasurementOutcome) -> CollapseResult:
        """ Conditional register state, memoized per outcome """
        with self._lock:
            if outcome not in self._collapses:
                self._collapses[outcome] = self._collapse(outcome)
            return self._collapses[outcome]

    def _collapse(self, outcome) -> CollapseResult:
        unnormalized = 0
        for weight, joint in self.components:
            try:
                result = collapse(joint, outcome)
            except ZeroProbabilityError:
                continue
            unnormalized = unnormalized + weight * result.probability * result.post_state.matrix
        probability = 0.0 if np.isscalar(unnormalized) else float(np.trace(unnormalized).real)
        if probability < ZERO_PROBABILITY:
            raise ZeroProbabilityError("Outcome '{}' has probability {:.3g}, cannot condition on it"
                                       .format(outcome.branch, probability))
        return CollapseResult(probability, QubitDensity.from_unnormalized(unnormalized))


def entangle_pair(qubits, field_spec: FieldSpec, settings: InteractionSettings, rng: np.random.Generator,
                  pair=(0, 1), prepared: PreparedEntangler = None):
    """ Sends the field through the interferometer with the pair in its arms and measures the output
    :param qubits: QubitState or QubitDensity of the register
    :param field_spec: FieldSpec, coherent light is read by upper-port counting and twin-Fock light by number difference
    :param settings: InteractionSettings
    :param rng: Generator used for the outcome draw
    :param pair: Register positions coupled to the arms
    :param prepared: PreparedEntangler of the same register and settings, built if not provided
    :return: Tuple (MeasurementOutcome, CollapseResult)
    """
    if prepared is None:
        prepared = PreparedEntangler(qubits, field_spec, settings, pair)
    elif not prepared.matches(qubits, field_spec, settings, pair):
        raise ValidationError("The prepared entangler was built for another register, field or setting")
    outcome = prepared.sample(rng)
    return outcome, prepared.collapse(outcome)


def _json_value(value):
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.ndarray):
        return [_json_value(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, np.generic):
        return value.item()
    return value


def run_p_sp(field_spec: FieldSpec, settings: InteractionSettings):
    """ Analytic spontaneous emission probability of a run, None when Gamma/Delta is not known """
    if settings.gamma_over_delta is None:
        return None
    return spontaneous_emission_probability(field_spec.photons, settings.theta_eff, settings.gamma_over_delta)


@dataclass
class ProtocolTranscript:
    seed: int
    trial: int
    amplitudes: tuple
    input_field: dict
    settings: dict
    outcome: MeasurementOutcome
    outcome_probability: float
    corrections: list
    source_result: int
    target_state: QubitDensity
    fidelity: float
    p_sp: float = None

    @property
    def branch(self) -> str:
        return self.outcome.branch

    @property
    def purity(self) -> float:
        return self.target_state.purity()

    def to_dict(self) -> dict:
        return _json_value({
            "seed": self.seed,
            "trial": self.trial,
            "input": list(self.amplitudes),
            "field": self.input_field,
            "settings": self.settings,
            "branch": self.branch,
            "outcome": {"kind": self.outcome.kind, "value": self.outcome.value},
            "probability": self.outcome_probability,
            "corrections": [op.to_dict() for op in self.corrections],
            "source_result": self.source_result,
            "target_state": self.target_state.matrix,
            "fidelity": self.fidelity,
            "purity": self.purity,
            "p_sp": self.p_sp,
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _settings_record(settings: InteractionSettings) -> dict:
    return {"theta": settings.theta, "passes": settings.passes, "theta_eff": settings.theta_eff,
            "gamma_over_delta": settings.gamma_over_delta}


def _check_amplitudes(c) -> np.ndarray:
    c = np.asarray(c, dtype=complex).reshape(-1)
    if len(c) != 2:
        raise ValidationError("Expected two amplitudes (c0, c1), got {}".format(len(c)))
    return QubitState(c).amplitudes


def teleport_register(c) -> QubitState:
    """ (c0|0> + c1|1>)_S (x) (|0> + |1>)_T / sqrt2 """
    return QubitState.product(_check_amplitudes(c), plus_amplitudes())


def _run_corrections(state, outcome, rng, pair):
    """ Applies the teleportation corrections of a branch and returns (state, ops applied, source result) """
    applied = []
    result = None
    for op in correction_sequence(outcome, pair=pair):
        state, measured = apply_local(op, state, rng)
        applied.append(op)
        if measured is not None:
            result = measured
    fix = correction_sequence(outcome, result, pair)[-1]
    state, _ = apply_local(fix, state)
    applied.append(fix)
    return state, applied, result


def teleport(c, field_spec: FieldSpec, settings: InteractionSettings, seed: int, trial: int = 0,
             prepared: PreparedEntangler = None) -> ProtocolTranscript:
    """ One teleportation run of c0|0> + c1|1> from the source to the target qubit
    :param c: Amplitudes (c0, c1), normalized
    :param field_spec: FieldSpec of the input light
    :param settings: InteractionSettings
    :param seed: Master seed; the trial's generator is derived from (seed, trial)
    :param trial: Trial index
    :param prepared: PreparedEntangler of teleport_register(c), shared across trials
    :return: ProtocolTranscript
    """
    c = _check_amplitudes(c)
    rng = trial_rng(seed, trial)
    outcome, collapsed = entangle_pair(teleport_register(c), field_spec, settings, rng, prepared=prepared)
    state, applied, result = _run_corrections(collapsed.post_state, outcome, rng, (0, 1))
    target = state.partial_trace([1])
    return ProtocolTranscript(int(seed), int(trial), tuple(c), field_spec.describe(), _settings_record(settings),
                              outcome, collapsed.probability, applied, result, target, target.fidelity(c),
                              run_p_sp(field_spec, settings))


def teleport_trials(c, field_spec: FieldSpec, settings: InteractionSettings, seed: int, trials: int,
                    n_procs: int = 1, progress=None) -> list:
    """ Independent teleportation trials 0..trials-1, returned in trial order whatever the worker count
    :param progress: Optional callable receiving the count of finished trials
    """
    if trials < 1:
        raise ValidationError("Trial count must be >= 1, got {}".format(trials))
    if n_procs < 1:
        raise ValidationError("Worker count must be >= 1, got {}".format(n_procs))
    prepared = PreparedEntangler(teleport_register(c), field_spec, settings)

    def run(trial):
        return teleport(c, field_spec, settings, seed, trial, prepared)

    transcripts = []
    if n_procs == 1:
        for trial in range(trials):
            transcripts.append(run(trial))
            if progress:
                progress(trial + 1)
    else:
        with ThreadPoolExecutor(max_workers=n_procs) as executor:
            for transcript in executor.map(run, range(trials)):
                transcripts.append(transcript)
                if progress:
                    progress(len(transcripts))
    return transcripts


@dataclass
class TrialSummary:
    trials: int
    branch_counts: dict
    branch_fidelity: dict
    null_fraction: float
    null_fidelity: tuple
    non_null_fidelity: tuple
    mean_fidelity: tuple

    def to_lines(self) -> list:
        lines = ["trials={}".format(self.trials), "null_fraction={!r}".format(self.null_fraction)]
        for name in ("null_fidelity", "non_null_fidelity", "mean_fidelity"):
            mean, stderr = getattr(self, name)
            lines.append("{}={!r}".format(name, mean))
            lines.append("{}_stderr={!r}".format(name, stderr))
        for branch in sorted(self.branch_counts, key=_branch_order):
            mean, stderr = self.branch_fidelity[branch]
            lines.append("branch[{}]=count {} fidelity {!r} stderr {!r}"
                         .format(branch, self.branch_counts[branch], mean, stderr))
        return lines


def _branch_order(branch):
    return (branch != "null", len(branch), branch)


def _mean_stderr(values):
    if not values:
        return None, None
    values = np.asarray(values, dtype=float)
    stderr = float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
    return float(values.mean()), stderr


def summarize_trials(transcripts: list) -> TrialSummary:
    """ Branch frequencies and mean fidelities (with standard errors) of a list of transcripts """
    if not transcripts:
        raise ValidationError("No transcripts to summarize")
    by_branch = dict()
    for t in transcripts:
        by_branch.setdefault(t.branch, []).append(t.fidelity)
    null = by_branch.get("null", [])
    non_null = [t.fidelity for t in transcripts if t.branch != "null"]
    return TrialSummary(len(transcripts), {b: len(f) for b, f in by_branch.items()},
                        {b: _mean_stderr(f) for b, f in by_branch.items()}, len(null) / len(transcripts),
                        _mean_stderr(null), _mean_stderr(non_null), _mean_stderr([t.fidelity for t in transcripts]))


@dataclass
class GhzResult:
    state: QubitDensity
    fidelity: float
    first_round_fidelity: float
    outcomes: list
    corrections: list = field(default_factory=list)
    p_sp: float = None

    def to_json(self) -> str:
        return json.dumps(_json_value({
            "fidelity": self.fidelity,
            "first_round_fidelity": self.first_round_fidelity,
            "branches": [o.branch for o in self.outcomes],
            "corrections": [op.to_dict() for op in self.corrections],
            "state": self.state.matrix,
            "p_sp": self.p_sp,
        }), sort_keys=True)


def ghz(field_spec: FieldSpec, settings: InteractionSettings, seed: int, trial: int = 0) -> GhzResult:
    """ Three-qubit GHZ preparation: all qubits start in (|0> + |1>)/sqrt2, the primitive entangles (0, 1) and then
        (1, 2); each round's sign or flip is corrected on the second qubit of its pair.
    :return: GhzResult with the fidelity against (|000> + |111>)/sqrt2
    """
    rng = trial_rng(seed, trial)
    plus = plus_amplitudes()
    state = QubitState.product(plus, plus, plus)
    first_target = np.kron(ghz_amplitudes(2), plus)
    outcomes, applied = [], []
    first_round_fidelity = None
    for pair in ((0, 1), (1, 2)):
        outcome, collapsed = entangle_pair(state, field_spec, settings, rng, pair)
        state = collapsed.post_state
        for op in pair_sign_correction(outcome, pair[1]):
            state, _ = apply_local(op, state)
            applied.append(op)
        outcomes.append(outcome)
        if first_round_fidelity is None:
            first_round_fidelity = as_density(state).fidelity(first_target)
    state = as_density(state)
    return GhzResult(state, state.fidelity(ghz_amplitudes(3)), first_round_fidelity, outcomes, applied,
                     run_p_sp(field_spec, settings))


@dataclass
class SwapResult:
    state: QubitDensity
    fidelity: float
    outcome: MeasurementOutcome
    source_result: int
    corrections: list = field(default_factory=list)
    p_sp: float = None

    def to_json(self) -> str:
        return json.dumps(_json_value({
            "fidelity": self.fidelity,
            "branch": self.outcome.branch,
            "source_result": self.source_result,
            "corrections": [op.to_dict() for op in self.corrections],
            "state": self.state.matrix,
            "p_sp": self.p_sp,
        }), sort_keys=True)


def swap_register(c) -> QubitState:
    """ (c0|00> + c1|11>)_AB (x) (|0> + |1>)_C / sqrt2 """
    c0, c1 = _check_amplitudes(c)
    return QubitState(np.kron(np.array([c0, 0, 0, c1]), plus_amplitudes()))


def swap(c, field_spec: FieldSpec, settings: InteractionSettings, seed: int, trial: int = 0) -> SwapResult:
    """ Entanglement swapping: the primitive acts on (B, C), then B is measured out like a teleportation source,
        leaving A and C in c0|00> + c1|11>
    :return: SwapResult with the reduced (A, C) state and its fidelity
    """
    c = _check_amplitudes(c)
    rng = trial_rng(seed, trial)
    outcome, collapsed = entangle_pair(swap_register(c), field_spec, settings, rng, (1, 2))
    state, applied, result = _run_corrections(collapsed.post_state, outcome, rng, (1, 2))
    reduced = state.partial_trace([0, 2])
    target = np.array([c[0], 0, 0, c[1]])
    return SwapResult(reduced, reduced.fidelity(target), outcome, result, applied, run_p_sp(field_spec, settings))
