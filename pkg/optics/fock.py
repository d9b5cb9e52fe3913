"""
Two-mode bosonic Fock space: the photon field carried through the interferometer.

Amplitudes are stored densely per total-photon-number sector. Sector n holds n+1 complex entries indexed by n0, the
count in mode 0 (mode 1 then holds n - n0). Every stored (n0, n1) therefore satisfies n0 + n1 <= cutoff, and all the
interferometer operations act sector by sector, so amplitudes never migrate between sectors.


Usage example:

state = make_coherent_pair(2.0, 0.0)                 # |2, 0> coherent pair, truncated at the default cutoff
state = apply_beamsplitter(state)                    # 50/50 splitter
state = apply_mode_phase(state, ModePhasePair(-0.1, 0.1))
state.amplitude(1, 3)                                # amplitude of |1, 3>
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from optics.beamsplitter import sector_unitary
from shared.errors import ToleranceError, TruncationError, ValidationError

FOCK_TOL = 1e-10
COHERENT_TOL = 1e-8
UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class ModePhasePair:
    """ Phases (radians) applied per photon in mode 0 and mode 1 """
    phi0: float
    phi1: float

    def __post_init__(self):
        if not (math.isfinite(self.phi0) and math.isfinite(self.phi1)):
            raise ValidationError("Mode phases must be finite, got ({}, {})".format(self.phi0, self.phi1))


class TwoModePhotonState:
    def __init__(self, sectors, cutoff):
        """ Internal constructor, use make_twin_fock(), make_coherent_pair() or from_amplitudes() to instantiate.
        :param sectors: Sequence of cutoff+1 complex arrays, sectors[n][n0] being the amplitude of |n0, n-n0>
        :param cutoff: Maximum total photon number retained
        """
        if len(sectors) != cutoff + 1:
            raise ValidationError("Expected {} sectors for cutoff {}, got {}".format(cutoff + 1, cutoff, len(sectors)))
        self.sectors = tuple(np.asarray(s, dtype=complex) for s in sectors)
        self.cutoff = cutoff

    @classmethod
    def vacuum(cls, cutoff=0):
        sectors = [np.zeros(n + 1, dtype=complex) for n in range(cutoff + 1)]
        sectors[0][0] = 1.0
        return cls(sectors, cutoff)

    @classmethod
    def from_amplitudes(cls, amplitudes: dict, cutoff=None):
        """ Builds a state from a mapping {(n0, n1): amplitude}. The cutoff defaults to the largest occupied sector. """
        if any(n0 < 0 or n1 < 0 for n0, n1 in amplitudes):
            raise ValidationError("Photon counts must be >= 0")
        largest = max((n0 + n1 for n0, n1 in amplitudes), default=0)
        cutoff = largest if cutoff is None else cutoff
        if largest > cutoff:
            raise ValidationError("Amplitude in sector {} exceeds cutoff {}".format(largest, cutoff))
        sectors = [np.zeros(n + 1, dtype=complex) for n in range(cutoff + 1)]
        for (n0, n1), amp in amplitudes.items():
            sectors[n0 + n1][n0] = amp
        return cls(sectors, cutoff)

    def __len__(self):
        return self.cutoff + 1

    def amplitude(self, n0: int, n1: int) -> complex:
        """ Amplitude of |n0, n1>, zero outside the stored sectors """
        n = n0 + n1
        if n0 < 0 or n1 < 0 or n > self.cutoff:
            return 0j
        return complex(self.sectors[n][n0])

    def sector_norms(self) -> np.ndarray:
        """ Squared norm held by each total photon number sector """
        return np.array([np.vdot(s, s).real for s in self.sectors])

    def norm(self) -> float:
        """ Squared norm of the whole state, sum |amp(n0, n1)|^2 """
        return float(self.sector_norms().sum())

    def occupied_sectors(self, tol=FOCK_TOL) -> list:
        """ Sectors holding more than tol of squared norm """
        return [n for n, w in enumerate(self.sector_norms()) if w > tol]

    def as_matrix(self) -> np.ndarray:
        """ Returns a (cutoff+1)x(cutoff+1) array amp[n0, n1], zero where n0 + n1 > cutoff """
        matrix = np.zeros((self.cutoff + 1, self.cutoff + 1), dtype=complex)
        for n, sector in enumerate(self.sectors):
            n0 = np.arange(n + 1)
            matrix[n0, n - n0] = sector
        return matrix

    def scaled(self, factor: complex):
        """ Returns the state multiplied by a complex factor """
        return TwoModePhotonState([factor * s for s in self.sectors], self.cutoff)

    def inner(self, other) -> complex:
        """ <self|other> over the sectors both states store """
        return complex(sum(np.vdot(a, b) for a, b in zip(self.sectors, other.sectors)))


def make_twin_fock(n_photons: int) -> TwoModePhotonState:
    """ Twin-Fock input |N, N>, stored with cutoff 2N """
    if int(n_photons) != n_photons or n_photons < 1:
        raise ValidationError("Twin-Fock input needs N >= 1 photons per mode, got {}".format(n_photons))
    n_photons = int(n_photons)
    return TwoModePhotonState.from_amplitudes({(n_photons, n_photons): 1.0}, cutoff=2 * n_photons)


def default_cutoff(mean_photons: float) -> int:
    """ Truncation for coherent inputs, ceil(N + 10 sqrt(N) + 20), keeping the Poisson tail below 1e-10 for N <= 1e4 """
    return int(math.ceil(mean_photons + 10 * math.sqrt(mean_photons) + 20))


def make_coherent_pair(alpha0: complex, alpha1: complex, cutoff: int = None, tol=COHERENT_TOL) -> TwoModePhotonState:
    """ Product of two coherent states |alpha0> (x) |alpha1>, truncated to total photon number <= cutoff
    :param alpha0: Coherent amplitude of mode 0
    :param alpha1: Coherent amplitude of mode 1
    :param cutoff: Maximum total photon number, defaults to default_cutoff(|alpha0|^2 + |alpha1|^2)
    :param tol: Largest norm deficit accepted before failing with a TruncationError
    :return: TwoModePhotonState
    """
    mean = abs(alpha0) ** 2 + abs(alpha1) ** 2
    cutoff = default_cutoff(mean) if cutoff is None else int(cutoff)
    if cutoff < 0:
        raise ValidationError("Cutoff must be >= 0, got {}".format(cutoff))

    c0 = _coherent_coefficients(alpha0, cutoff)
    c1 = _coherent_coefficients(alpha1, cutoff)
    sectors = [c0[:n + 1] * c1[n::-1] for n in range(cutoff + 1)]
    state = TwoModePhotonState(sectors, cutoff)

    norm = state.norm()
    if norm < 1 - tol:
        raise TruncationError(norm, 1 - tol, cutoff)
    return state


def _coherent_coefficients(alpha: complex, cutoff: int) -> np.ndarray:
    """ exp(-|alpha|^2/2) alpha^k / sqrt(k!) for k = 0..cutoff, evaluated in log space """
    coefficients = np.zeros(cutoff + 1, dtype=complex)
    if alpha == 0:
        coefficients[0] = 1.0
        return coefficients
    k = np.arange(cutoff + 1)
    log_magnitude = -abs(alpha) ** 2 / 2 + k * math.log(abs(alpha)) - gammaln(k + 1) / 2
    return np.exp(log_magnitude + 1j * k * np.angle(alpha))


def apply_beamsplitter(state: TwoModePhotonState, tol=UNITARITY_TOL) -> TwoModePhotonState:
    """ Applies U_BS = exp[-i(a0+ a1 + a1+ a0) pi/4] sector by sector, checking that the norm is preserved.
        Empty sectors are passed through without building their matrix.
    """
    sectors = [sector_unitary(n) @ s if s.any() else s.copy() for n, s in enumerate(state.sectors)]
    result = TwoModePhotonState(sectors, state.cutoff)
    _check_norm(state, result, tol, "beamsplitter")
    return result


def apply_mode_phase(state: TwoModePhotonState, phases: ModePhasePair) -> TwoModePhotonState:
    """ Multiplies amp(n0, n1) by exp[i(phi0 n0 + phi1 n1)] """
    sectors = []
    for n, s in enumerate(state.sectors):
        n0 = np.arange(n + 1)
        sectors.append(s * np.exp(1j * (phases.phi0 * n0 + phases.phi1 * (n - n0))))
    return TwoModePhotonState(sectors, state.cutoff)


def _check_norm(before, after, tol, what):
    expected = math.sqrt(before.norm())
    achieved = math.sqrt(after.norm())
    if abs(achieved - expected) > tol * max(1.0, expected):
        raise ToleranceError("norm after " + what, achieved, expected, tol)
