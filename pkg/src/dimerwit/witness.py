"""Susceptibility entanglement witness and the entanglement temperature.

The witness is evaluated on the measured single-direction (powder)
susceptibility ``chi_iso``::

    W = 3 T chi_iso / (g^2 c_mu N S) - 1

Separable states satisfy W >= 0, so W < 0 certifies entanglement.
"""
from dataclasses import dataclass

import numpy as np

from .constants import C_MU
from .errors import NoEntanglementTemperature
from .spincore import SpinValue
from .thermo import ModelParams, _check_temperature, chi_model, curie_asymptote

T_FLOOR_K = 1e-6
T_START_K = 1.0
T_CEILING_K = 1e6
REL_WIDTH = 1e-12


@dataclass(frozen=True)
class WitnessPoint:
    t_K: float
    w: float

    @property
    def entangled(self) -> bool:
        return self.w < 0


@dataclass(frozen=True)
class TeResult:
    te_K: float
    bracket: tuple
    iterations: int
    residual_w: float


def separability_floor(t_K, g: float, n_spins: int, s: SpinValue, c_mu: float = C_MU):
    """Smallest isotropic susceptibility (muB/Oe) compatible with a separable state."""
    t = _check_temperature(t_K)
    floor = g * g * c_mu * n_spins * s.value / (3 * t)
    return floor if np.ndim(floor) else float(floor)


def witness_value(t_K, chi_iso, g: float, n_spins: int, s: SpinValue, c_mu: float = C_MU):
    if n_spins < 1:
        raise ValueError("n_spins must be >= 1")
    t = _check_temperature(t_K)
    w = 3 * t * np.asarray(chi_iso, dtype=float) / (g * g * c_mu * n_spins * s.value) - 1
    return w if np.ndim(w) else float(w)


def _model_witness(t, p: ModelParams):
    return witness_value(t, chi_model(t, p), p.g, 2, p.s_bar)


def witness_curve(p: ModelParams, grid) -> list:
    t = _check_temperature(np.asarray(grid, dtype=float))
    if t.ndim != 1 or t.size == 0:
        raise ValueError("temperature grid must be a non-empty 1-D sequence")
    if np.any(np.diff(t) <= 0):
        raise ValueError("temperature grid must be strictly increasing")
    w = np.atleast_1d(_model_witness(t, p))
    return [WitnessPoint(float(a), float(b)) for a, b in zip(t, w)]


def high_t_witness_limit(p: ModelParams) -> float:
    """lim W as T -> infinity, from the combined Curie constants."""
    return 3 * curie_asymptote(p) / (p.g * p.g * C_MU * 2 * p.s_bar.value) - 1


def entanglement_temperature(p: ModelParams, t_start: float = T_START_K,
                             t_ceiling: float = T_CEILING_K) -> TeResult:
    """Locate the lowest temperature where the model witness turns positive.

    The lower end is pushed down by decades from ``t_start`` until W < 0,
    then the upper end is doubled until W > 0 (never past ``t_ceiling``).
    Bisection then shrinks the bracket to a relative width of 1e-12.
    """
    def w(t):
        return _model_witness(t, p)

    lo = t_start
    w_lo = w(lo)
    while w_lo >= 0 and lo > T_FLOOR_K:
        lo /= 10
        w_lo = w(lo)
    if w_lo >= 0:
        raise NoEntanglementTemperature(
            f"witness is non-negative down to {lo:g} K; model is separable at all probed T")

    iterations = 0
    hi = lo
    w_hi = w_lo
    while w_hi <= 0:
        if hi >= t_ceiling:
            raise NoEntanglementTemperature(
                f"witness stays negative up to {t_ceiling:g} K")
        lo, w_lo = hi, w_hi
        hi = min(2 * hi, t_ceiling)
        w_hi = w(hi)
        iterations += 1
    bracket = (lo, hi)

    while hi - lo > REL_WIDTH * hi:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        w_mid = w(mid)
        iterations += 1
        if w_mid < 0:
            lo = mid
        elif w_mid > 0:
            hi = mid
        else:
            lo = hi = mid
    te = 0.5 * (lo + hi)
    return TeResult(te, bracket, iterations, w(te))


def te_empirical(j_K: float, s_bar: SpinValue) -> float:
    """T_e = -(9/20)(2S + 1) J. Negative for ferromagnetic J."""
    return -9 * (s_bar.twice_s + 1) * j_K / 20
