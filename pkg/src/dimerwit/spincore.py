"""Spin operators, the two-spin Heisenberg/Zeeman Hamiltonian and its
zero-field multiplet structure.

Spins are stored as the integer ``twice_s`` so half-integer bookkeeping is
exact. All energies are in Kelvin; a magnetic field in Oe enters through
``C_MU`` (muB/kB in K/Oe).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

import numpy as np

from .constants import C_MU
from .errors import DimensionOverflow, NotHermitian

MAX_DIMENSION = 1024


@total_ordering
@dataclass(frozen=True)
class SpinValue:
    """A spin quantum number S, stored as 2S."""

    twice_s: int

    def __post_init__(self):
        if isinstance(self.twice_s, bool) or not isinstance(self.twice_s, (int, np.integer)):
            raise TypeError(f"twice_s must be an integer, got {self.twice_s!r}")
        if self.twice_s < 1:
            raise ValueError(f"spin must be >= 1/2 (twice_s >= 1), got twice_s={self.twice_s}")
        object.__setattr__(self, "twice_s", int(self.twice_s))

    @classmethod
    def parse(cls, text) -> "SpinValue":
        """Parse ``"5/2"``, ``"2.5"``, ``"2"`` or a number into a spin.

        Anything that is not an exact multiple of 1/2 is rejected.
        """
        if isinstance(text, SpinValue):
            return text
        try:
            value = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse spin value {text!r}") from None
        twice = 2 * value
        if twice.denominator != 1:
            raise ValueError(f"spin {text!r} is not a multiple of 1/2")
        return cls(int(twice))

    @property
    def value(self) -> float:
        return self.twice_s / 2

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.twice_s, 2)

    def multiplicity(self) -> int:
        return self.twice_s + 1

    def casimir(self) -> float:
        """S(S+1)."""
        return self.twice_s * (self.twice_s + 2) / 4

    def m_values(self) -> np.ndarray:
        """Projections m = S, S-1, ..., -S (descending)."""
        return (self.twice_s - 2 * np.arange(self.twice_s + 1)) / 2

    def __lt__(self, other):
        if not isinstance(other, SpinValue):
            return NotImplemented
        return self.twice_s < other.twice_s

    def __str__(self):
        return str(self.fraction)


@dataclass(frozen=True)
class Multiplet:
    # total spin can be 0, which SpinValue excludes, so keep the raw 2S
    twice_spin: int
    energy_K: float
    degeneracy: int

    @property
    def spin(self) -> float:
        return self.twice_spin / 2

    @property
    def total_spin(self) -> Fraction:
        return Fraction(self.twice_spin, 2)


@dataclass(frozen=True)
class DimerSpectrum:
    s1: SpinValue
    s2: SpinValue
    j_K: float
    multiplets: tuple

    @property
    def energies(self) -> np.ndarray:
        return np.array([m.energy_K for m in self.multiplets])

    @property
    def degeneracies(self) -> np.ndarray:
        return np.array([m.degeneracy for m in self.multiplets], dtype=int)

    @property
    def total_spins(self) -> np.ndarray:
        return np.array([m.spin for m in self.multiplets])

    def levels(self) -> np.ndarray:
        """All eigenvalues, each repeated by its degeneracy, ascending."""
        return np.sort(np.repeat(self.energies, self.degeneracies))


@dataclass(frozen=True, eq=False)
class OperatorTriple:
    dimension: int
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    def casimir(self) -> np.ndarray:
        return self.sx @ self.sx + self.sy @ self.sy + self.sz @ self.sz


def spin_matrices(s: SpinValue) -> OperatorTriple:
    """Angular-momentum matrices in the |S, m> basis with m descending.

    Built from the raising operator <m+1|S+|m> = sqrt(S(S+1) - m(m+1)).
    """
    m = s.m_values()
    # superdiagonal entries <m_k|S+|m_{k+1}> with m_{k+1} = m_k - 1
    lower = m[1:]
    plus = np.diag(np.sqrt(s.casimir() - lower * (lower + 1)), k=1).astype(complex)
    minus = plus.conj().T
    sx = (plus + minus) / 2
    sy = (plus - minus) / 2j
    sz = np.diag(m).astype(complex)
    for a in (sx, sy, sz):
        a.setflags(write=False)
    return OperatorTriple(s.multiplicity(), sx, sy, sz)


def _twice_total_spins(s1: SpinValue, s2: SpinValue) -> range:
    return range(abs(s1.twice_s - s2.twice_s), s1.twice_s + s2.twice_s + 1, 2)


def multiplet_spectrum(s1: SpinValue, s2: SpinValue, j_K: float) -> DimerSpectrum:
    """Zero-field spectrum of H = -J S1.S2 grouped into total-spin multiplets.

    E(S) = -(J/2) [S(S+1) - Smin(Smin+1)], so the lowest total spin sits at 0.
    The bracket is evaluated in integers (times 4) before the single
    multiplication by J.
    """
    j_K = float(j_K)
    if not np.isfinite(j_K):
        raise ValueError("exchange coupling must be finite")
    twice = list(_twice_total_spins(s1, s2))
    t0 = twice[0]
    base4 = t0 * (t0 + 2)  # 4 * Smin(Smin+1)
    multiplets = []
    for t in twice:
        diff4 = t * (t + 2) - base4
        energy = -j_K * diff4 / 8 if diff4 else 0.0
        multiplets.append(Multiplet(t, energy, t + 1))
    return DimerSpectrum(s1, s2, j_K, tuple(multiplets))


def total_sz(s1: SpinValue, s2: SpinValue) -> np.ndarray:
    a, b = spin_matrices(s1), spin_matrices(s2)
    return np.kron(a.sz, np.eye(b.dimension)) + np.kron(np.eye(a.dimension), b.sz)


def dimer_hamiltonian(s1: SpinValue, s2: SpinValue, j_K: float, b_Oe: float = 0.0,
                      g: float = 2.0, max_dimension: int = MAX_DIMENSION) -> np.ndarray:
    """Dense H = -J S1.S2 - g muB B (S1z + S2z) in Kelvin.

    Basis is |S1,m1> (x) |S2,m2> with both m descending.
    """
    for name, v in (("j_K", j_K), ("b_Oe", b_Oe), ("g", g)):
        if not np.isfinite(v):
            raise ValueError(f"{name} must be finite")
    dim = s1.multiplicity() * s2.multiplicity()
    if dim > max_dimension:
        raise DimensionOverflow(f"dimension {dim} exceeds cap {max_dimension}")
    a, b = spin_matrices(s1), spin_matrices(s2)
    exchange = sum(np.kron(x, y) for x, y in ((a.sx, b.sx), (a.sy, b.sy), (a.sz, b.sz)))
    zeeman = np.kron(a.sz, np.eye(b.dimension)) + np.kron(np.eye(a.dimension), b.sz)
    return -j_K * exchange - g * C_MU * b_Oe * zeeman


def diagonalize(h, atol: float = 1e-10):
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as orthonormal columns.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    if not np.allclose(h, h.conj().T, rtol=0.0, atol=atol * scale):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    return np.linalg.eigh(h)
