"""
Closed forms of the interferometric entangler: single-atom phase shift, false-null probabilities, count statistics
and the twin-Fock output coefficients chi_m.

chi_m(N, theta) is the amplitude of |N+m, N-m> produced from |N, N> (sign convention of the twin-Fock expansion),
which is the Wigner rotation element d^N_{m0}(2 theta). Two evaluations are provided: the exact alternating sum for
small N, and a three-term recurrence in m that starts exactly at m = N and runs downward. chi_0 is also the Legendre
polynomial P_N(cos 2 theta), which gives a fast vectorized path for root finding.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect
from scipy.special import eval_legendre, jn_zeros
from scipy.stats import poisson

from shared.errors import ValidationError

DIRECT_SUM_MAX_N = 16
ZERO_RTOL = 1e-10
OFF_RESONANCE_RATIO = 10.0

_RESCALE_ABOVE = 1e150


@dataclass(frozen=True)
class PhysicalParams:
    """ Optical and atomic parameters behind the single-pass phase.
        wavelength and waist share a length unit, linewidth and detuning share an angular-rate unit.
    """
    wavelength: float
    waist: float
    linewidth: float
    detuning: float
    passes: int = 1

    def __post_init__(self):
        for name in ("wavelength", "waist", "detuning"):
            if not getattr(self, name) > 0:
                raise ValidationError("{} must be > 0, got {}".format(name, getattr(self, name)))
        if not self.linewidth >= 0:
            raise ValidationError("linewidth must be >= 0, got {}".format(self.linewidth))
        if int(self.passes) != self.passes or self.passes < 1:
            raise ValidationError("passes must be an integer >= 1, got {}".format(self.passes))
        if self.linewidth > 0 and self.detuning / self.linewidth < OFF_RESONANCE_RATIO:
            warnings.warn("Detuning is only {:.3g} linewidths, the dispersive (far off-resonance) interaction "
                          "needs detuning >> linewidth".format(self.detuning / self.linewidth))

    @property
    def gamma_over_delta(self) -> float:
        return self.linewidth / self.detuning

    @property
    def waist_over_wavelength(self) -> float:
        return self.waist / self.wavelength


def theta_single_pass(params: PhysicalParams) -> float:
    """ Phase shift of an off-resonant photon forward-scattered by one atom, (3/8pi)(lambda/W)^2(Gamma/Delta) """
    return 3 / (8 * math.pi) * (params.wavelength / params.waist) ** 2 * params.gamma_over_delta


def spontaneous_emission_probability(n_photons: float, theta_eff: float, gamma_over_delta: float) -> float:
    """ Probability that either qubit scatters a photon, 2 N theta_eff Gamma/Delta """
    return 2 * n_photons * abs(theta_eff) * gamma_over_delta


def epsilon_false_null(n_photons: float, theta_eff: float) -> float:
    """ False-null probability of a coherent input, exp(-N theta_eff^2) """
    if not n_photons > 0:
        raise ValidationError("Mean photon number must be > 0, got {}".format(n_photons))
    return math.exp(-n_photons * theta_eff ** 2)


def coherent_count_prob(n: int, n_photons: float, theta_eff: float, exact=False) -> float:
    """ Probability of n photons in the upper port for the equal-weight register layout,
        1/2 [delta_n0 + Poisson(n; mean)] with mean N theta_eff^2, or the exact N sin^2 theta_eff if exact is True
    """
    if not n_photons > 0:
        raise ValidationError("Mean photon number must be > 0, got {}".format(n_photons))
    if n < 0:
        return 0.0
    mean = n_photons * (math.sin(theta_eff) ** 2 if exact else theta_eff ** 2)
    counts = float(n == 0) if mean == 0 else float(poisson.pmf(n, mean))
    return 0.5 * (float(n == 0) + counts)


def _check_m(m, n_photons):
    if int(n_photons) != n_photons or n_photons < 1:
        raise ValidationError("Twin-Fock photon number must be an integer >= 1, got {}".format(n_photons))
    if abs(m) > n_photons:
        raise ValidationError("|m| = {} exceeds N = {}".format(abs(m), n_photons))


def chi(m: int, n_photons: int, theta: float) -> float:
    """ Twin-Fock output coefficient chi_m(theta) for |N+m, N-m> """
    _check_m(m, n_photons)
    return float(chi_column(n_photons, theta)[m + n_photons])


def chi_column(n_photons: int, theta: float) -> np.ndarray:
    """ chi_m(theta) for m = -N..N """
    _check_m(0, n_photons)
    n_photons = int(n_photons)
    if n_photons <= DIRECT_SUM_MAX_N:
        return chi_column_direct(n_photons, theta)
    return chi_column_recurrence(n_photons, theta)


def chi_column_direct(n_photons: int, theta: float) -> np.ndarray:
    """ Alternating sum over l with binomials C(N, m+l) C(N, l); exact integers, so only usable for small N """
    n = n_photons
    s, c = math.sin(theta), math.cos(theta)
    column = np.zeros(2 * n + 1)
    for m in range(-n, n + 1):
        prefactor = math.sqrt(math.factorial(n + m) * math.factorial(n - m)) / math.factorial(n)
        total = 0.0
        for l in range(max(0, -m), min(n, n - m) + 1):
            total += ((-1) ** (m + l) * math.comb(n, m + l) * math.comb(n, l)
                      * s ** (m + 2 * l) * c ** (2 * n - m - 2 * l))
        column[m + n] = prefactor * total
    return column


def chi_column_recurrence(n_photons: int, theta: float) -> np.ndarray:
    """ Downward three-term recurrence of d^N_{m0}(beta), beta = 2 theta:
            2m cot(beta) d_m + sqrt((N-m+1)(N+m)) d_{m-1} + sqrt((N+m+1)(N-m)) d_{m+1} = 0
        started exactly from d_{N+1} = 0 and the sign of d_N = (-1)^N sqrt((2N)!)/N! (sin theta cos theta)^N,
        rescaled against overflow and normalized with sum_m d_m^2 = 1. d_{-m} = (-1)^m d_m fills the negative half.
    """
    n = int(n_photons)
    beta = 2 * theta
    sin_b, cos_b = math.sin(beta), math.cos(beta)
    column = np.zeros(2 * n + 1)
    if sin_b == 0:
        column[n] = round(cos_b) ** n
        return column

    d = np.zeros(n + 2)
    d[n] = (-math.copysign(1.0, sin_b)) ** n
    cot_b = cos_b / sin_b
    for k in range(n, 0, -1):
        d[k - 1] = -(2 * k * cot_b * d[k] + math.sqrt((n + k + 1) * (n - k)) * d[k + 1]) / math.sqrt((n - k + 1) * (n + k))
        if abs(d[k - 1]) > _RESCALE_ABOVE:
            d /= abs(d[k - 1])

    half = d[:n + 1]
    half = half / math.sqrt(half[0] ** 2 + 2 * np.sum(half[1:] ** 2))
    m = np.arange(1, n + 1)
    column[n:] = half
    column[:n] = ((-1.0) ** m * half[1:])[::-1]
    return column


def chi0(n_photons: int, theta):
    """ chi_0(theta) = P_N(cos 2 theta), vectorized over theta """
    return eval_legendre(int(n_photons), np.cos(2 * np.asarray(theta, dtype=float)))


def eta_false_null(n_photons: int, theta: float) -> float:
    """ False-null probability of a twin-Fock input, chi_0(theta)^2 """
    _check_m(0, n_photons)
    return float(chi0(n_photons, theta)) ** 2


def eta_small_angle(n_photons: int, theta: float) -> float:
    """ Small-angle form of eta, exp(-2N(N+1) theta^2), from P_N(cos x) ~ 1 - N(N+1)x^2/4 """
    return math.exp(-2 * n_photons * (n_photons + 1) * theta ** 2)


def bessel_zero_limit() -> float:
    """ Large-N limit of N theta* at the first chi_0 zero: half the first zero of J_0 """
    return float(jn_zeros(0, 1)[0]) / 2


def first_chi0_zero(n_photons: int):
    """ Smallest theta > 0 with chi_0(N, theta) = 0, bracketed around the Bessel estimate j_01/(2N+1) and refined by
        bisection to a relative tolerance of ZERO_RTOL
    :return: Tuple (theta*, N theta*)
    """
    _check_m(0, n_photons)
    estimate = 2 * bessel_zero_limit() / (2 * n_photons + 1)
    low, high = 0.5 * estimate, min(1.5 * estimate, math.pi / 2)
    if np.sign(chi0(n_photons, low)) == np.sign(chi0(n_photons, high)):
        theta = chi0_zeros(n_photons, 1)[0]
    else:
        theta = _refine_zero(n_photons, low, high)
    return theta, n_photons * theta


def chi0_zeros(n_photons: int, count: int) -> list:
    """ The first `count` zeros of chi_0(N, theta) in (0, pi/2), in increasing order """
    _check_m(0, n_photons)
    if count < 1 or count > n_photons:
        raise ValidationError("chi_0 has {} zeros in (0, pi/2), cannot return {}".format(n_photons, count))

    step = math.pi / (8 * (2 * n_photons + 1))
    upper = min(math.pi / 2, (count + 1) * math.pi / (2 * n_photons + 1))
    zeros = []
    while len(zeros) < count:
        grid = np.arange(step, upper + step / 2, step)
        values = chi0(n_photons, grid)
        zeros = []
        for i in range(len(grid) - 1):
            if values[i] == 0:
                zeros.append(float(grid[i]))
            elif values[i] * values[i + 1] < 0:
                zeros.append(_refine_zero(n_photons, grid[i], grid[i + 1]))
            if len(zeros) == count:
                break
        if upper >= math.pi / 2:
            break
        upper = min(math.pi / 2, 2 * upper)
    return zeros


def _refine_zero(n_photons, low, high) -> float:
    return float(bisect(lambda t: float(chi0(n_photons, t)), low, high, xtol=1e-300, rtol=ZERO_RTOL, maxiter=200))
