""" Per-sector matrices of the 50/50 beamsplitter U_BS = exp[-i(a0+ a1 + a1+ a0) pi/4].

Within the sector of n photons the basis is |n0, n-n0>, n0 = 0..n, and U_BS acts as an (n+1)x(n+1) unitary whose
entry [out, in] is the amplitude for |in, n-in> to leave as |out, n-out>. Two constructions are provided:

- binomial: expands the transformed creation operators a0+ -> (a0+ - i a1+)/sqrt2, a1+ -> (a1+ - i a0+)/sqrt2.
  Exact for small sectors, but the alternating sum loses roughly log10(C(n, n/2) / 2^(n/2)) digits.
- spectral: diagonalizes the real tridiagonal generator a0+ a1 + a1+ a0 (twice J_x of a spin n/2) whose eigenvalues
  are exactly -n, -n+2, ..., n. Stable for any sector size.

Matrices are cached per sector in an lru_cache of SECTOR_CACHE_SIZE entries, enough for every sector of a coherent
input with a cutoff below SECTOR_CACHE_SIZE. Concurrent readers are safe; a racing population only recomputes the
same read-only array.
"""

import math
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

BINOMIAL_MAX_SECTOR = 16
SECTOR_CACHE_SIZE = 256

_MINUS_I_POWERS = (1, -1j, -1, 1j)


@lru_cache(maxsize=SECTOR_CACHE_SIZE)
def sector_unitary(n: int) -> np.ndarray:
    """ Returns the read-only beamsplitter matrix of the n-photon sector, using the binomial expansion up to
        BINOMIAL_MAX_SECTOR photons and the spectral construction above
    """
    if n < 0:
        raise ValueError("Photon sector must be >= 0, got {}".format(n))
    if n <= BINOMIAL_MAX_SECTOR:
        u = sector_unitary_binomial(n)
    else:
        u = sector_unitary_spectral(n)
    u.setflags(write=False)
    return u


def sector_unitary_binomial(n: int) -> np.ndarray:
    """ Builds the n-photon sector matrix from the binomial expansion of the transformed creation operators """
    u = np.zeros((n + 1, n + 1), dtype=complex)
    scale = 2.0 ** (-n / 2)
    for k in range(n + 1):
        l = n - k
        in_norm = math.sqrt(math.factorial(k) * math.factorial(l))
        # (a0+ - i a1+)^k (a1+ - i a0+)^l, picking a0+^p from the first factor and a0+^q from the second
        for p in range(k + 1):
            for q in range(l + 1):
                out = p + q
                coefficient = math.comb(k, p) * math.comb(l, q) * _MINUS_I_POWERS[(k - p + q) % 4]
                u[out, k] += coefficient * math.sqrt(math.factorial(out) * math.factorial(n - out)) / in_norm
    return u * scale


def sector_unitary_spectral(n: int) -> np.ndarray:
    """ Builds the n-photon sector matrix as exp(-i pi/4 H) from the eigenvectors of the tridiagonal generator H """
    if n == 0:
        return np.ones((1, 1), dtype=complex)
    k = np.arange(n)
    off_diagonal = np.sqrt((k + 1.0) * (n - k))
    _, vectors = eigh_tridiagonal(np.zeros(n + 1), off_diagonal)
    # Eigenvalues come back ascending; the exact spectrum is -n, -n+2, ..., n
    exact = np.arange(-n, n + 1, 2)
    phases = np.exp(-1j * (math.pi / 4) * exact)
    return (vectors * phases) @ vectors.T


def single_photon_matrix() -> np.ndarray:
    """ The 2x2 mode-transfer matrix of U_BS acting on creation operators, rows/columns ordered (mode 0, mode 1) """
    c = 1 / math.sqrt(2)
    return np.array([[c, -1j * c], [-1j * c, c]])

