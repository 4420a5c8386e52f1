"""Thermodynamic entanglement witness for isotropic spin dimers."""
from .constants import C_MU, CONSTANTS, PhysicalConstants
from .errors import (
    DataError, DimensionOverflow, DimerWitError, DuplicateTemperature, EmptyDataset,
    InsufficientData, MalformedRow, NoEntanglementTemperature, NonPositiveTemperature,
    NotConverged, NotHermitian, SingularNormalMatrix,
)
from .spincore import (
    DimerSpectrum, Multiplet, OperatorTriple, SpinValue, diagonalize, dimer_hamiltonian,
    multiplet_spectrum, spin_matrices,
)
from .thermo import (
    ChiCurve, ModelParams, chi_dimer, chi_fluctuation, chi_model, chi_t_curve,
    curie_asymptote, curie_constant,
)
from .witness import (
    TeResult, WitnessPoint, entanglement_temperature, separability_floor, te_empirical,
    witness_curve, witness_value,
)
from .fitdata import DataSet, FitConfig, FitResult, fit, load_csv, synthesize
from .fitdata.report import Report, analyze

__version__ = "0.1.0"
