"""Fit-plus-witness analysis report and its JSON/CSV renderings."""
import json
from dataclasses import dataclass, field

import numpy as np

from ..errors import NoEntanglementTemperature
from ..thermo import ModelParams, chi_model, curie_asymptote, low_t_plateau
from ..witness import entanglement_temperature, te_empirical, witness_curve
from .dataset import DataSet, fmt
from .fitting import FitConfig, FitResult, fit

CURVE_POINTS = 500
CURVE_HEADER = "temperature_K,chi_muB_per_Oe,chiT_muBK_per_Oe,witness"
# plateau smaller than this fraction of the Curie asymptote is reported as absent
PLATEAU_REL = 1e-6


@dataclass(frozen=True, eq=False)
class Report:
    fit: FitResult
    te_numeric_K: float | None
    te_empirical_K: float
    curie_asymptote: float
    low_t_plateau: float
    witness_curve: list
    notes: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        p = self.fit.params
        return {
            "params": {"g": _num(p.g), "j_K": _num(p.j_K), "rho": _num(p.rho)},
            "sse": _num(self.fit.sse),
            "converged": bool(self.fit.converged),
            "iterations": int(self.fit.iterations),
            "te_numeric_K": None if self.te_numeric_K is None else _num(self.te_numeric_K),
            "te_empirical_K": _num(self.te_empirical_K),
            "curie_asymptote": _num(self.curie_asymptote),
            "witness_curve": [[_num(pt.t_K), _num(pt.w)] for pt in self.witness_curve],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _num(x) -> float:
    # round-trip through the 12-digit text form so JSON output is stable
    return float(fmt(x))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def analysis_grid(t_min: float, t_max: float, te: float | None, n: int = CURVE_POINTS) -> np.ndarray:
    upper = max(t_max, 1.5 * te) if te is not None else t_max
    return np.geomspace(t_min, upper, n)


def analyze(data: DataSet, config: FitConfig) -> Report:
    result = fit(data, config)
    p = result.params
    notes = []
    if not result.converged:
        notes.append(f"fit did not converge: {result.message}")
    try:
        te = entanglement_temperature(p).te_K
    except NoEntanglementTemperature as exc:
        te = None
        notes.append(f"no entanglement temperature: {exc}")
    plateau = low_t_plateau(p)
    asymptote = curie_asymptote(p)
    if p.j_K < 0:
        if plateau > PLATEAU_REL * asymptote:
            notes.append(f"low-T chiT plateau {fmt(plateau)} muB K/Oe from impurity fraction")
        else:
            notes.append("low-T chiT plateau absent (chiT -> 0)")
    grid = analysis_grid(float(data.t_K[0]), float(data.t_K[-1]), te)
    return Report(
        fit=result,
        te_numeric_K=te,
        te_empirical_K=te_empirical(p.j_K, p.s_bar),
        curie_asymptote=asymptote,
        low_t_plateau=plateau,
        witness_curve=witness_curve(p, grid),
        notes=tuple(notes),
    )


def curve_csv(p: ModelParams, grid) -> str:
    t = np.asarray(grid, dtype=float)
    chi = np.atleast_1d(chi_model(t, p))
    w = [pt.w for pt in witness_curve(p, t)]
    lines = [CURVE_HEADER]
    for ti, ci, wi in zip(t, chi, w):
        lines.append(",".join((fmt(ti), fmt(ci), fmt(ci * ti), fmt(wi))))
    return "\n".join(lines) + "\n"


def curve_records(p: ModelParams, grid) -> list:
    t = np.asarray(grid, dtype=float)
    chi = np.atleast_1d(chi_model(t, p))
    w = [pt.w for pt in witness_curve(p, t)]
    return [
        {"temperature_K": _num(ti), "chi_muB_per_Oe": _num(ci),
         "chiT_muBK_per_Oe": _num(ci * ti), "witness": _num(wi)}
        for ti, ci, wi in zip(t, chi, w)
    ]
