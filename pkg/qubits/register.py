""" Qubit register states (pure and mixed) for registers of up to three qubits, plus local operators on them.

Configurations b in {0,1}^k are ordered with qubit 0 as the most significant bit, so that the amplitude vector of
a register is the Kronecker product of its qubits in index order (|b0 b1 ...>).
"""

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from shared.errors import ValidationError

MAX_QUBITS = 3
STATE_TOL = 1e-12
DENSITY_TOL = 1e-10


def configurations(n_qubits: int) -> list:
    """ Returns the configurations of a register as bit tuples, in amplitude-vector order """
    return list(itertools.product((0, 1), repeat=n_qubits))


def config_index(bits) -> int:
    """ Position of a configuration in the amplitude vector """
    index = 0
    for b in bits:
        index = 2 * index + b
    return index


def _register_size(dimension: int) -> int:
    n_qubits = int(dimension).bit_length() - 1
    if dimension < 2 or 2 ** n_qubits != dimension or n_qubits > MAX_QUBITS:
        raise ValidationError("A register of 1 to {} qubits needs 2, 4 or 8 amplitudes, got {}"
                              .format(MAX_QUBITS, dimension))
    return n_qubits


@dataclass(frozen=True, eq=False)
class QubitState:
    """ Pure register state, amplitudes over configurations """
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amplitudes)
        _register_size(len(amplitudes))
        norm = np.vdot(amplitudes, amplitudes).real
        if abs(norm - 1) > STATE_TOL:
            raise ValidationError("Qubit amplitudes must be normalized, squared norm is {!r}".format(norm))

    @classmethod
    def normalized(cls, amplitudes):
        """ Builds a state after rescaling the amplitudes to unit norm """
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.sqrt(np.vdot(amplitudes, amplitudes).real)
        if norm == 0:
            raise ValidationError("Cannot normalize a zero vector")
        return cls(amplitudes / norm)

    @classmethod
    def product(cls, *qubits):
        """ Kronecker product of single-qubit amplitude pairs, e.g. product((c0, c1), plus_amplitudes()) """
        return cls(reduce(np.kron, [np.asarray(q, dtype=complex) for q in qubits]))

    @property
    def n_qubits(self) -> int:
        return _register_size(len(self.amplitudes))

    def amplitude(self, bits) -> complex:
        return complex(self.amplitudes[config_index(bits)])

    def density(self):
        return QubitDensity(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class QubitDensity:
    """ Register density matrix: Hermitian, unit trace and positive semidefinite within DENSITY_TOL """
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError("Density matrix must be square, got shape {}".format(matrix.shape))
        _register_size(matrix.shape[0])
        if not np.allclose(matrix, matrix.conj().T, atol=DENSITY_TOL, rtol=0):
            raise ValidationError("Density matrix is not Hermitian")
        trace = np.trace(matrix).real
        if abs(trace - 1) > DENSITY_TOL:
            raise ValidationError("Density matrix trace is {!r}".format(trace))
        if self.eigenvalues().min() < -DENSITY_TOL:
            raise ValidationError("Density matrix has a negative eigenvalue {!r}".format(self.eigenvalues().min()))

    @classmethod
    def from_unnormalized(cls, matrix):
        """ Hermitizes and rescales a matrix to unit trace, used after projections """
        matrix = np.asarray(matrix, dtype=complex)
        matrix = (matrix + matrix.conj().T) / 2
        return cls(matrix / np.trace(matrix).real)

    @property
    def n_qubits(self) -> int:
        return _register_size(self.matrix.shape[0])

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def purity(self) -> float:
        """ tr(rho^2) """
        return float(np.einsum("ij,ji->", self.matrix, self.matrix).real)

    def largest_eigenvalue(self) -> float:
        return float(self.eigenvalues().max())

    def fidelity(self, target) -> float:
        """ <psi|rho|psi> for a pure target given as a QubitState or an amplitude vector """
        psi = target.amplitudes if isinstance(target, QubitState) else np.asarray(target, dtype=complex)
        if len(psi) != self.matrix.shape[0]:
            raise ValidationError("Target has {} amplitudes, register has {}".format(len(psi), self.matrix.shape[0]))
        return float(np.vdot(psi, self.matrix @ psi).real)

    def partial_trace(self, keep) -> "QubitDensity":
        """ Reduced density matrix of the qubits listed in keep (ascending order is preserved) """
        n = self.n_qubits
        keep = sorted(keep)
        if not keep or any(q < 0 or q >= n for q in keep):
            raise ValidationError("Cannot keep qubits {} of a {}-qubit register".format(keep, n))
        traced = [q for q in range(n) if q not in keep]
        tensor = self.matrix.reshape([2] * (2 * n))
        # Contract each traced qubit's row index with its column index, highest first so positions stay valid
        for q in sorted(traced, reverse=True):
            tensor = np.trace(tensor, axis1=q, axis2=q + tensor.ndim // 2)
        dim = 2 ** len(keep)
        return QubitDensity(tensor.reshape(dim, dim))


def as_density(state) -> QubitDensity:
    """ Accepts either register type and returns a QubitDensity """
    return state.density() if isinstance(state, QubitState) else state


def plus_amplitudes() -> np.ndarray:
    """ (|0> + |1>)/sqrt2 """
    return np.array([1, 1], dtype=complex) / np.sqrt(2)


def single_qubit_operator(n_qubits: int, qubit: int, matrix) -> np.ndarray:
    """ Embeds a 2x2 matrix acting on one qubit into the full register """
    if qubit < 0 or qubit >= n_qubits:
        raise ValidationError("Qubit index {} is outside a {}-qubit register".format(qubit, n_qubits))
    factors = [np.eye(2, dtype=complex)] * n_qubits
    factors[qubit] = np.asarray(matrix, dtype=complex)
    return reduce(np.kron, factors)


def ghz_amplitudes(n_qubits: int = 3) -> np.ndarray:
    """ (|0...0> + |1...1>)/sqrt2 """
    psi = np.zeros(2 ** n_qubits, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return psi
