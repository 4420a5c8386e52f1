"""Levenberg-Marquardt fit of the impurity-corrected dimer model.

Bounded parameters are mapped to unconstrained ones through a logistic
transform, ``p = lo + (hi - lo) / (1 + exp(-u))``, and all Gauss-Newton
algebra happens in ``u``. The Jacobian is a central finite difference in
the physical parameters with relative step 1e-6, chained through dp/du.
Damping starts at 1e-3 and is divided by 10 after an accepted step and
multiplied by 10 after a rejected one (Marquardt scaling by the
normal-matrix diagonal).
"""
from dataclasses import dataclass, field

import numpy as np

from ..errors import InsufficientData, SingularNormalMatrix
from ..thermo import ModelParams, chi_model
from .dataset import DataSet

PARAM_NAMES = ("g", "j_K", "rho")
DEFAULT_BOUNDS = {"g": (1.0, 3.0), "j_K": (-5000.0, 5000.0), "rho": (0.0, 0.2)}
OBJECTIVES = ("chi", "chi-times-t")

LAMBDA_START = 1e-3
LAMBDA_MAX = 1e16
FD_STEP = 1e-6
# initial values sitting on a bound are nudged this far inside (as a fraction of the range)
EDGE = 1e-3
# |u| beyond this is indistinguishable from the bound itself
U_LIMIT = 40.0
# largest change of any u per step; the logistic slope varies by at most e**3
STEP_MAX = 3.0
# reciprocal condition number of the correlation matrix below which the fit is degenerate
RCOND_MIN = 1e-12
# SSE below this fraction of sum(obs**2) is round-off
SSE_FLOOR_REL = 1e-30


@dataclass(frozen=True)
class FitConfig:
    initial: ModelParams
    bounds: dict = field(default_factory=lambda: dict(DEFAULT_BOUNDS))
    max_iterations: int = 200
    tolerance: float = 1e-10
    objective: str = "chi-times-t"
    free_parameters: tuple = PARAM_NAMES

    def __post_init__(self):
        bounds = dict(DEFAULT_BOUNDS)
        bounds.update(self.bounds)
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "free_parameters", tuple(self.free_parameters))
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        unknown = set(self.free_parameters) - set(PARAM_NAMES)
        if unknown:
            raise ValueError(f"unknown free parameters: {sorted(unknown)}")
        for name in PARAM_NAMES:
            lo, hi = bounds[name]
            if not lo < hi:
                raise ValueError(f"empty bound interval for {name}")
            if not lo <= getattr(self.initial, name) <= hi:
                raise ValueError(f"initial {name} lies outside its bounds [{lo}, {hi}]")


@dataclass(frozen=True, eq=False)
class FitResult:
    params: ModelParams
    sse: float
    iterations: int
    converged: bool
    residuals: np.ndarray
    free_parameters: tuple
    std_errors: dict | None = None
    sse_history: tuple = ()
    message: str = ""


def _weights(data: DataSet, objective: str) -> np.ndarray | None:
    if data.sigma is None:
        return None
    sigma = data.sigma * data.t_K if objective == "chi-times-t" else data.sigma
    return 1.0 / sigma


def _observed(data: DataSet, objective: str) -> np.ndarray:
    return data.chi * data.t_K if objective == "chi-times-t" else data.chi


def residuals(data: DataSet, params: ModelParams, objective: str = "chi-times-t") -> np.ndarray:
    """sqrt(w_i) * (model_i - obs_i); the fit minimises the sum of squares."""
    model = np.asarray(chi_model(data.t_K, params))
    if objective == "chi-times-t":
        model = model * data.t_K
    r = model - _observed(data, objective)
    w = _weights(data, objective)
    return r if w is None else r * w


def objective_value(data: DataSet, params: ModelParams, objective: str = "chi-times-t") -> float:
    r = residuals(data, params, objective)
    return float(r @ r)


class _Transform:
    def __init__(self, config: FitConfig):
        self.names = config.free_parameters
        self.lo = np.array([config.bounds[n][0] for n in self.names], dtype=float)
        self.hi = np.array([config.bounds[n][1] for n in self.names], dtype=float)
        self.base = config.initial

    def to_u(self, params: ModelParams) -> np.ndarray:
        p = np.array([getattr(params, n) for n in self.names], dtype=float)
        f = (p - self.lo) / (self.hi - self.lo)
        # interior starting values are kept exactly; only pinned ones get nudged
        f = np.where((f > 0) & (f < 1), f, np.clip(f, EDGE, 1 - EDGE))
        return np.clip(np.log(f) - np.log1p(-f), -U_LIMIT, U_LIMIT)

    def to_p(self, u: np.ndarray) -> np.ndarray:
        return self.lo + (self.hi - self.lo) / (1 + np.exp(-u))

    def dp_du(self, u: np.ndarray) -> np.ndarray:
        s = 1 / (1 + np.exp(-u))
        return (self.hi - self.lo) * s * (1 - s)

    def params(self, p: np.ndarray) -> ModelParams:
        return self.base.replace(**dict(zip(self.names, p.tolist())))


def _jacobian(resid_p, p: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """d(residual)/d(p) by central differences, one-sided next to a bound."""
    cols = []
    for k in range(p.size):
        h = FD_STEP * max(abs(p[k]), 1e-3 * (hi[k] - lo[k]))
        up, dn = p.copy(), p.copy()
        up[k] = min(p[k] + h, hi[k])
        dn[k] = max(p[k] - h, lo[k])
        cols.append((resid_p(up) - resid_p(dn)) / (up[k] - dn[k]))
    return np.column_stack(cols)


def _correlation_scale(jac_p: np.ndarray, names) -> np.ndarray:
    """Column norms of the physical Jacobian; raises if the data cannot
    separate the free parameters."""
    a = jac_p.T @ jac_p
    d = np.sqrt(np.diag(a))
    if not np.all(np.isfinite(a)) or np.any(d == 0):
        bad = [n for n, x in zip(names, d) if not x > 0]
        raise SingularNormalMatrix(f"model is insensitive to {bad or list(names)}")
    corr = a / np.outer(d, d)
    if 1.0 / np.linalg.cond(corr) < RCOND_MIN:
        raise SingularNormalMatrix(
            f"normal matrix is numerically singular for free parameters {list(names)}")
    return d


def fit(data: DataSet, config: FitConfig) -> FitResult:
    """Minimise the weighted sum of squared residuals of chi or chi*T.

    Returns the best parameters found. ``converged`` is False when
    ``max_iterations`` runs out first; the result is still the best-so-far.
    Raises :class:`InsufficientData` for fewer than 4 points or no more
    points than free parameters, and :class:`SingularNormalMatrix` when the
    data cannot separate the free parameters.
    """
    n, k = len(data), len(config.free_parameters)
    if k == 0:
        raise ValueError("at least one parameter must be free")
    if n < 4 or n <= k:
        raise InsufficientData(f"{n} points cannot constrain {k} free parameters")

    tr = _Transform(config)

    def resid_p(p):
        return residuals(data, tr.params(p), config.objective)

    u = tr.to_u(config.initial)
    p = tr.to_p(u)
    r = resid_p(p)
    sse = float(r @ r)
    obs = _observed(data, config.objective)
    w = _weights(data, config.objective)
    sse_floor = SSE_FLOOR_REL * float(np.sum((obs if w is None else obs * w) ** 2))

    lam = LAMBDA_START
    history = [sse]
    converged = sse <= sse_floor
    message = "objective at round-off level" if converged else "maximum iterations reached"
    iterations = 0
    while not converged and iterations < config.max_iterations:
        iterations += 1
        jac_p = _jacobian(resid_p, p, tr.lo, tr.hi)
        d_p = _correlation_scale(jac_p, config.free_parameters)
        jac = jac_p * tr.dp_du(u)
        # solve in correlation-scaled coordinates: (C + lam I) y = -D^-1 g, step = D^-1 y
        d = d_p * tr.dp_du(u)
        d = np.where(d > 0, d, np.finfo(float).tiny)
        c = (jac.T @ jac) / np.outer(d, d)
        g = (jac.T @ r) / d
        accepted = False
        while lam <= LAMBDA_MAX:
            step = np.clip(np.linalg.solve(c + lam * np.eye(k), -g) / d, -STEP_MAX, STEP_MAX)
            u_new = np.clip(u + step, -U_LIMIT, U_LIMIT)
            p_new = tr.to_p(u_new)
            r_new = resid_p(p_new)
            sse_new = float(r_new @ r_new)
            if np.isfinite(sse_new) and sse_new < sse:
                accepted = True
                lam = max(lam / 10, 1e-300)
                break
            lam *= 10
        if not accepted:
            converged = True
            message = "no further decrease possible at machine precision"
            break
        rel = (sse - sse_new) / sse
        u, p, r, sse = u_new, p_new, r_new, sse_new
        history.append(sse)
        if rel <= config.tolerance:
            converged, message = True, "relative SSE change below tolerance"
        elif sse <= sse_floor:
            converged, message = True, "objective at round-off level"

    return FitResult(
        params=tr.params(p),
        sse=sse,
        iterations=iterations,
        converged=converged,
        residuals=r,
        free_parameters=config.free_parameters,
        std_errors=_std_errors(resid_p, tr, p, sse, n),
        sse_history=tuple(history),
        message=message,
    )


def _std_errors(resid_p, tr: _Transform, p: np.ndarray, sse: float, n: int) -> dict | None:
    """sqrt(diag((J^T J)^-1) * SSE / (n - k)) in physical units."""
    k = p.size
    jac = _jacobian(resid_p, p, tr.lo, tr.hi)
    try:
        cov = np.linalg.inv(jac.T @ jac) * (sse / (n - k))
    except np.linalg.LinAlgError:
        return None
    err = np.sqrt(np.clip(np.diag(cov), 0, None))
    return dict(zip(tr.names, err.tolist()))
