"""
Joint qubit (x) photon state and its propagation through the Mach-Zehnder interferometer U = U_BS U_T U_S U_BS.

Two register qubits (mu, nu) sit in the arms. A configuration b gives the photons a relative phase through
s(b) = 1 - b_mu - b_nu: mode 0 gets -theta_eff * s(b) per photon and mode 1 gets +theta_eff * s(b). The physical
interaction also multiplies every photon by exp(-i theta_eff), whatever the configuration; that common factor is
dropped. With this convention a coherent input (alpha, 0) leaves configuration b as the coherent pair
(abar sin(theta_eff s), abar cos(theta_eff s)) with abar = -i alpha exactly.
"""

import math
from dataclasses import dataclass

import numpy as np

from optics.fock import (ModePhasePair, TwoModePhotonState, UNITARITY_TOL, apply_beamsplitter, apply_mode_phase,
                         make_coherent_pair, make_twin_fock)
from qubits.register import QubitState, config_index, configurations
from shared.errors import ToleranceError, ValidationError


@dataclass(frozen=True)
class InteractionSettings:
    """ Single-pass phase theta (radians) and cavity pass count; the interferometer sees theta_eff = passes * theta.
        gamma_over_delta is optional and only used to report the spontaneous emission budget of a run.
    """
    theta: float
    passes: int = 1
    gamma_over_delta: float = None

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValidationError("theta must be finite, got {}".format(self.theta))
        if int(self.passes) != self.passes or self.passes < 1:
            raise ValidationError("Cavity passes must be an integer >= 1, got {}".format(self.passes))
        if abs(self.theta_eff) >= math.pi / 2:
            raise ValidationError("Effective phase {} is outside (-pi/2, pi/2)".format(self.theta_eff))
        if self.gamma_over_delta is not None and self.gamma_over_delta < 0:
            raise ValidationError("gamma_over_delta must be >= 0")

    @property
    def theta_eff(self) -> float:
        return self.passes * self.theta


@dataclass(frozen=True)
class FieldSpec:
    """ Description of the light sent into the interferometer.
        kind is "coherent" (mean photon number `photons` in mode 0, vacuum in mode 1) or "twinfock" (|N, N>).
    """
    kind: str
    photons: float
    cutoff: int = None

    def __post_init__(self):
        if self.kind not in ("coherent", "twinfock"):
            raise ValidationError("Field kind must be 'coherent' or 'twinfock', got '{}'".format(self.kind))
        if not self.photons > 0:
            raise ValidationError("Photon number must be > 0, got {}".format(self.photons))
        if self.kind == "twinfock" and int(self.photons) != self.photons:
            raise ValidationError("Twin-Fock photon number must be an integer, got {}".format(self.photons))

    def build(self) -> TwoModePhotonState:
        if self.kind == "twinfock":
            return make_twin_fock(int(self.photons))
        return make_coherent_pair(math.sqrt(self.photons), 0.0, self.cutoff)

    def describe(self) -> dict:
        return {"kind": self.kind, "photons": self.photons, "cutoff": self.cutoff}


class JointState:
    def __init__(self, n_qubits, pair, blocks):
        """ Internal constructor, use make_joint() to instantiate.
        :param n_qubits: Register size k
        :param pair: (mu, nu), the register positions coupled to the interferometer arms
        :param blocks: One TwoModePhotonState per configuration, in configuration order. Block b carries the qubit
                       amplitude, i.e. block_b(n0, n1) = amp(b, n0, n1).
        """
        if len(blocks) != 2 ** n_qubits:
            raise ValidationError("Expected {} photon blocks, got {}".format(2 ** n_qubits, len(blocks)))
        self.n_qubits = n_qubits
        self.pair = tuple(pair)
        self.blocks = tuple(blocks)

    @property
    def configurations(self):
        return configurations(self.n_qubits)

    @property
    def cutoff(self):
        return self.blocks[0].cutoff

    def block(self, bits) -> TwoModePhotonState:
        return self.blocks[config_index(bits)]

    def amplitude(self, bits, n0, n1) -> complex:
        return self.block(bits).amplitude(n0, n1)

    def norm(self) -> float:
        return float(sum(b.norm() for b in self.blocks))

    def phase_sign(self, bits) -> int:
        return phase_sign(bits, self.pair)


def phase_sign(bits, pair) -> int:
    """ s(b) = 1 - b_mu - b_nu, the sign of the relative phase a configuration imprints; spectators do not count """
    mu, nu = pair
    return 1 - bits[mu] - bits[nu]


def _check_pair(pair, n_qubits):
    if len(pair) != 2 or pair[0] == pair[1] or any(p < 0 or p >= n_qubits for p in pair):
        raise ValidationError("Pair {} must name two distinct qubits of a {}-qubit register".format(pair, n_qubits))


def make_joint(qubits: QubitState, photons: TwoModePhotonState, pair=(0, 1)) -> JointState:
    """ Product state amp(b, n0, n1) = qubit_amp(b) * photon_amp(n0, n1) """
    _check_pair(pair, qubits.n_qubits)
    blocks = [photons.scaled(a) for a in qubits.amplitudes]
    return JointState(qubits.n_qubits, pair, blocks)


def propagate_interferometer(state: JointState, settings: InteractionSettings, tol=UNITARITY_TOL) -> JointState:
    """ Beamsplitter, configuration-dependent relative phase, beamsplitter; applied to every configuration's block
    :param state: JointState entering the interferometer
    :param settings: InteractionSettings giving theta_eff
    :param tol: Norm drift tolerated per beamsplitter and for the whole propagation
    :return: JointState at the interferometer output
    """
    blocks = []
    for bits, block in zip(state.configurations, state.blocks):
        relative = settings.theta_eff * state.phase_sign(bits)
        block = apply_beamsplitter(block, tol)
        block = apply_mode_phase(block, ModePhasePair(-relative, relative))
        blocks.append(apply_beamsplitter(block, tol))
    result = JointState(state.n_qubits, state.pair, blocks)

    before, after = math.sqrt(state.norm()), math.sqrt(result.norm())
    if abs(after - before) > tol * max(1.0, before):
        raise ToleranceError("joint norm after propagation", after, before, tol)
    return result


def coherent_output_closed_form(alpha: complex, theta_eff: float, qubits: QubitState, pair=(0, 1)) -> dict:
    """ Closed-form output for a coherent input (alpha, 0): for each configuration b the coherent amplitudes of the
        (upper, lower) output ports, (abar sin(theta_eff s(b)), abar cos(theta_eff s(b))) with abar = -i alpha
    :return: Dictionary {configuration bits: (upper, lower)}
    """
    if abs(theta_eff) >= math.pi / 2:
        raise ValidationError("Effective phase {} is outside (-pi/2, pi/2)".format(theta_eff))
    _check_pair(pair, qubits.n_qubits)
    abar = -1j * alpha
    result = dict()
    for bits in configurations(qubits.n_qubits):
        phase = theta_eff * phase_sign(bits, pair)
        result[bits] = (abar * math.sin(phase), abar * math.cos(phase))
    return result


def coherent_closed_form_joint(alpha: complex, theta_eff: float, qubits: QubitState, pair=(0, 1),
                               cutoff=None) -> JointState:
    """ JointState built from coherent_output_closed_form, truncated like make_coherent_pair(alpha, 0, cutoff) """
    outputs = coherent_output_closed_form(alpha, theta_eff, qubits, pair)
    blocks = []
    for bits, amp in zip(configurations(qubits.n_qubits), qubits.amplitudes):
        upper, lower = outputs[bits]
        blocks.append(make_coherent_pair(upper, lower, cutoff).scaled(amp))
    return JointState(qubits.n_qubits, pair, blocks)


def twin_fock_amplitudes(n_photons: int, theta_eff: float, sign: int = 1) -> np.ndarray:
    """ Exact output amplitudes of |N, N> at (N+m, N-m), m = -N..N, for a configuration with phase sign s.
        They equal (-1)^N chi_m(-s theta_eff) with chi_m the twin-Fock coefficients of analytic.formulas.
    """
    photons = make_twin_fock(n_photons)
    relative = theta_eff * sign
    photons = apply_beamsplitter(photons)
    photons = apply_mode_phase(photons, ModePhasePair(-relative, relative))
    photons = apply_beamsplitter(photons)
    m = np.arange(-n_photons, n_photons + 1)
    return np.array([photons.amplitude(n_photons + k, n_photons - k) for k in m])
