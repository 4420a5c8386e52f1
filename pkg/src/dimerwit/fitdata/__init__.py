from .dataset import DataSet, atomic_write, format_csv, load_csv, parse_csv, synthesize
from .fitting import DEFAULT_BOUNDS, FitConfig, FitResult, fit, objective_value, residuals

__all__ = [
    "DataSet", "atomic_write", "format_csv", "load_csv", "parse_csv", "synthesize",
    "DEFAULT_BOUNDS", "FitConfig", "FitResult", "fit", "objective_value", "residuals",
]
