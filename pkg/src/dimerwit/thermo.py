"""Zero-field susceptibility of an isotropic spin dimer.

Units: temperature and energies in K, susceptibility in muB/Oe per dimer
formula unit, Curie constants in muB K/Oe per ion.

Two independent routes are provided. :func:`chi_dimer` is the closed form
with multiplet coefficients S(S+1)(2S+1)/6 (1, 5, 14, 30, 55 for two
S=5/2 ions). :func:`chi_fluctuation` enumerates every |S, m> state and
evaluates the magnetization variance directly; it is slow and exists as a
cross-check.
"""
from dataclasses import dataclass

import numpy as np

from .constants import C_MU
from .errors import NonPositiveTemperature
from .spincore import SpinValue, multiplet_spectrum

FE3 = SpinValue(5)


@dataclass(frozen=True)
class ModelParams:
    """Free parameters of the impurity-corrected dimer model."""

    g: float
    j_K: float
    rho: float = 0.0
    s_bar: SpinValue = FE3
    impurity_g: float = 2.0

    def __post_init__(self):
        if not (np.isfinite(self.g) and self.g > 0):
            raise ValueError(f"g must be positive, got {self.g}")
        if not np.isfinite(self.j_K):
            raise ValueError("j_K must be finite")
        if not (0.0 <= self.rho <= 1.0):
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")
        if not isinstance(self.s_bar, SpinValue):
            object.__setattr__(self, "s_bar", SpinValue.parse(self.s_bar))

    def replace(self, **changes) -> "ModelParams":
        values = {k: getattr(self, k) for k in ("g", "j_K", "rho", "s_bar", "impurity_g")}
        values.update(changes)
        return ModelParams(**values)


@dataclass(frozen=True, eq=False)
class ChiCurve:
    t_K: np.ndarray
    values: np.ndarray
    kind: str = "chiT"

    def __post_init__(self):
        if self.t_K.shape != self.values.shape:
            raise ValueError("temperature and value arrays differ in shape")

    def __len__(self):
        return len(self.t_K)

    @property
    def points(self):
        return list(zip(self.t_K.tolist(), self.values.tolist()))


def _check_temperature(t_K):
    t = np.asarray(t_K, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t <= 0):
        raise NonPositiveTemperature(f"temperature must be positive and finite, got {t_K}")
    return t


def curie_constant(g: float, s: SpinValue, c_mu: float = C_MU) -> float:
    """C = g^2 S(S+1) c_mu / 3 in muB K/Oe per ion."""
    if g < 0:
        raise ValueError("g must be non-negative")
    return g * g * s.casimir() * c_mu / 3


def _dimer_coefficients(s_bar: SpinValue):
    spec = multiplet_spectrum(s_bar, s_bar, 1.0)
    twice = np.array([m.twice_spin for m in spec.multiplets])
    # S(S+1)(2S+1)/6 with S = t/2  ->  t(t+2)(t+1)/24, exact integers
    num = twice * (twice + 2) * (twice + 1) // 24
    return num, spec.degeneracies, spec.energies


def chi_dimer(t_K, g: float, j_K: float, s_bar: SpinValue = FE3, c_mu: float = C_MU):
    """Closed-form B -> 0 susceptibility of a symmetric dimer S1 = S2 = s_bar.

    ``t_K`` may be a scalar or an array; the result has the same shape.
    Boltzmann factors are taken relative to the lowest level so neither sign
    of J overflows.
    """
    t = _check_temperature(t_K)
    num, deg, e_unit = _dimer_coefficients(s_bar)
    energies = j_K * e_unit
    shifted = energies - energies.min()
    w = np.exp(-shifted / t[..., None])
    ratio = (w @ num) / (w @ deg)
    chi = 2 * g * g * c_mu / t * ratio
    return chi if chi.ndim else float(chi)


def chi_fluctuation(t_K: float, s1: SpinValue, s2: SpinValue, j_K: float, g: float,
                    c_mu: float = C_MU) -> float:
    """chi_z = (g^2 c_mu / T) (<Mz^2> - <Mz>^2) by explicit state enumeration."""
    t = float(_check_temperature(t_K))
    spec = multiplet_spectrum(s1, s2, j_K)
    e0 = min(m.energy_K for m in spec.multiplets)
    z = m1 = m2 = 0.0
    for mult in spec.multiplets:
        boltz = np.exp(-(mult.energy_K - e0) / t)
        S = mult.total_spin
        m = S
        while m >= -S:
            z += boltz
            m1 += boltz * float(m)
            m2 += boltz * float(m * m)
            m -= 1
    mean = m1 / z
    return g * g * c_mu / t * (m2 / z - mean * mean)


def chi_model(t_K, p: ModelParams, c_mu: float = C_MU):
    """(1 - rho) chi_dimer + rho * 2 C(impurity_g, 5/2) / T."""
    t = _check_temperature(t_K)
    impurity = 2 * curie_constant(p.impurity_g, FE3, c_mu) / t
    chi = (1 - p.rho) * chi_dimer(t, p.g, p.j_K, p.s_bar, c_mu) + p.rho * impurity
    return chi if np.ndim(chi) else float(chi)


def curie_asymptote(p: ModelParams, c_mu: float = C_MU) -> float:
    """High-temperature limit of chi*T for the full model."""
    return ((1 - p.rho) * 2 * curie_constant(p.g, p.s_bar, c_mu)
            + p.rho * 2 * curie_constant(p.impurity_g, FE3, c_mu))


def low_t_plateau(p: ModelParams, c_mu: float = C_MU) -> float:
    """chi*T as T -> 0+ for antiferromagnetic J (only the impurity tail survives)."""
    return p.rho * 2 * curie_constant(p.impurity_g, FE3, c_mu)


def chi_t_curve(p: ModelParams, grid) -> ChiCurve:
    t = np.asarray(grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("temperature grid must be a non-empty 1-D sequence")
    t = _check_temperature(t)
    if np.any(np.diff(t) <= 0):
        raise ValueError("temperature grid must be strictly increasing")
    return ChiCurve(t, np.asarray(chi_model(t, p)) * t, "chiT")
