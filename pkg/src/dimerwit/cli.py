"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data/file error, 3 fit not
converged (or degenerate), 4 no entanglement temperature.
"""
import argparse
import sys

import numpy as np

from .errors import DimerWitError
from .fitdata.dataset import UNITS, atomic_write, fmt, format_csv, load_csv, synthesize
from .fitdata.fitting import DEFAULT_BOUNDS, OBJECTIVES, PARAM_NAMES, FitConfig
from .fitdata.report import analyze, curve_csv, curve_records, dumps
from .spincore import SpinValue, multiplet_spectrum
from .thermo import ModelParams
from .witness import entanglement_temperature, te_empirical

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_FIT, EXIT_NO_TE = 0, 1, 2, 3, 4

# published Fe(III) dimer fit, used as model defaults
FE3_G, FE3_J, FE3_RHO = 1.8, -282.0, 0.01


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _spin(text):
    try:
        return SpinValue.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_output(p, json_default=False):
    p.add_argument("--out", metavar="PATH", help="write to PATH (atomically) instead of stdout")
    if not json_default:
        p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")


def _add_model(p, g=FE3_G, j=FE3_J, rho=FE3_RHO, what="model"):
    p.add_argument("--g", type=float, default=g, help=f"{what} Lande factor (default {g})")
    p.add_argument("--j", type=float, default=j,
                   help=f"{what} exchange coupling J in K, H = -J S1.S2 (default {j})")
    p.add_argument("--rho", type=float, default=rho,
                   help=f"{what} impurity fraction in [0, 1] (default {rho})")
    p.add_argument("--s1", type=_spin, default=SpinValue(5),
                   help="per-ion spin, '5/2' or '2.5' (default 5/2)")
    p.add_argument("--s2", type=_spin, default=None, help="must equal --s1 if given")
    p.add_argument("--impurity-g", type=float, default=2.0,
                   help="g of the free-ion Curie tail (default 2.0)")


def _add_grid(p, tmin, tmax, steps, grid):
    p.add_argument("--tmin", type=float, default=tmin, help=f"lowest temperature in K (default {tmin})")
    p.add_argument("--tmax", type=float, default=tmax, help=f"highest temperature in K (default {tmax})")
    p.add_argument("--steps", type=int, default=steps, help=f"number of grid points (default {steps})")
    p.add_argument("--grid", choices=("log", "linear"), default=grid,
                   help=f"grid spacing (default {grid})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dimerwit",
                     description="Spin-dimer susceptibility, entanglement witness and fitting.",
                     epilog="exit codes: 0 ok, 1 usage, 2 data/file, 3 fit failed, 4 no T_e")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("levels", help="zero-field multiplet energies of a spin pair",
                       description="Multiplet spectrum of H = -J S1.S2 at B = 0, energies "
                                   "in K relative to the lowest total spin.")
    p.add_argument("--s1", type=_spin, default=SpinValue(5), help="spin 1 (default 5/2)")
    p.add_argument("--s2", type=_spin, default=SpinValue(5), help="spin 2 (default 5/2)")
    p.add_argument("--j", type=float, default=FE3_J, help=f"exchange J in K (default {FE3_J})")
    _add_output(p)

    for name, help_ in (("chi", "susceptibility curve chi(T), chiT and witness"),
                        ("witness", "witness curve W(T) with chi and chiT")):
        p = sub.add_parser(name, help=help_,
                           description=f"{help_}. chi in muB/Oe per dimer, chiT in muB K/Oe.")
        _add_model(p)
        _add_grid(p, 1.0, 1000.0, 500, "log")
        _add_output(p)

    p = sub.add_parser("te", help="entanglement temperature (JSON)",
                       description="Numerical root of W(T) = 0 and the empirical estimate "
                                   "-(9/20)(2S+1)J, both in K.")
    _add_model(p)
    _add_output(p, json_default=True)

    p = sub.add_parser("synth", help="synthetic dataset from the model",
                       description="Model chi on a grid with multiplicative Gaussian noise "
                                   "(numpy PCG64 seeded by --seed).")
    _add_model(p)
    _add_grid(p, 2.0, 300.0, 150, "linear")
    p.add_argument("--noise", type=float, default=0.0, help="relative noise level (default 0)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    p.add_argument("--units", choices=UNITS, default="mub-oe",
                   help="chi column units: muB/Oe per dimer or emu/mol (default mub-oe)")
    _add_output(p, json_default=True)

    p = sub.add_parser("fit", help="fit the model to a CSV dataset and report the witness",
                       description="Levenberg-Marquardt fit; prints the analysis report as JSON. "
                                   "--g/--j/--rho give the starting point.")
    p.add_argument("--data", required=True, metavar="PATH",
                   help="CSV with header temperature_K,chi[,sigma]")
    p.add_argument("--units", choices=UNITS, default="mub-oe",
                   help="chi column units (default mub-oe)")
    _add_model(p, g=2.0, j=-200.0, rho=0.0, what="initial")
    p.add_argument("--objective", choices=OBJECTIVES, default="chi-times-t",
                   help="fitted quantity (default chi-times-t)")
    p.add_argument("--free", default=",".join(PARAM_NAMES),
                   help="comma-separated free parameters from g,j_K,rho (default all)")
    p.add_argument("--max-iterations", type=int, default=200, help="default 200")
    p.add_argument("--tolerance", type=float, default=1e-10,
                   help="relative SSE change for convergence (default 1e-10)")
    _add_output(p, json_default=True)
    return parser


def _model_params(args) -> ModelParams:
    if args.s2 is not None and args.s2 != args.s1:
        raise UsageError("the model needs a symmetric dimer: --s2 must equal --s1")
    return ModelParams(args.g, args.j, args.rho, args.s1, args.impurity_g)


def _grid(args) -> np.ndarray:
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    if not 0 < args.tmin <= args.tmax:
        raise UsageError("need 0 < --tmin <= --tmax")
    if args.steps == 1:
        return np.array([args.tmin])
    space = np.geomspace if args.grid == "log" else np.linspace
    return space(args.tmin, args.tmax, args.steps)


def _emit(args, text: str, stdout) -> None:
    if getattr(args, "out", None):
        atomic_write(args.out, text)
    else:
        stdout.write(text)


def _cmd_levels(args, stdout):
    spec = multiplet_spectrum(args.s1, args.s2, args.j)
    if args.json:
        rows = [{"total_spin": str(m.total_spin), "degeneracy": m.degeneracy,
                 "energy_K": float(fmt(m.energy_K))} for m in spec.multiplets]
        text = dumps(rows)
    else:
        lines = ["total_spin,degeneracy,energy_K"]
        lines += [f"{m.total_spin},{m.degeneracy},{fmt(m.energy_K)}" for m in spec.multiplets]
        text = "\n".join(lines) + "\n"
    _emit(args, text, stdout)
    return EXIT_OK


def _cmd_curve(args, stdout):
    p = _model_params(args)
    grid = _grid(args)
    text = dumps(curve_records(p, grid)) if args.json else curve_csv(p, grid)
    _emit(args, text, stdout)
    return EXIT_OK


def _cmd_te(args, stdout):
    p = _model_params(args)
    res = entanglement_temperature(p)
    out = {
        "te_numeric_K": float(fmt(res.te_K)),
        "te_empirical_K": float(fmt(te_empirical(p.j_K, p.s_bar))),
        "bracket_K": [float(fmt(x)) for x in res.bracket],
        "iterations": res.iterations,
        "residual_w": float(fmt(res.residual_w)),
    }
    _emit(args, dumps(out), stdout)
    return EXIT_OK


def _cmd_synth(args, stdout):
    data = synthesize(_model_params(args), _grid(args), args.noise, args.seed)
    _emit(args, format_csv(data, args.units), stdout)
    return EXIT_OK


def _cmd_fit(args, stdout):
    alias = {"j": "j_K", "J": "j_K"}
    free = tuple(alias.get(x.strip(), x.strip()) for x in args.free.split(",") if x.strip())
    data = load_csv(args.data, args.units)
    initial = _model_params(args)
    bounds = dict(DEFAULT_BOUNDS)
    try:
        config = FitConfig(initial, bounds, args.max_iterations, args.tolerance,
                           args.objective, free)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = analyze(data, config)
    _emit(args, report.to_json(), stdout)
    if not report.fit.converged:
        print(f"dimerwit: fit did not converge: {report.fit.message}", file=sys.stderr)
        return EXIT_FIT
    return EXIT_OK


COMMANDS = {"levels": _cmd_levels, "chi": _cmd_curve, "witness": _cmd_curve,
            "te": _cmd_te, "synth": _cmd_synth, "fit": _cmd_fit}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, stdout)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    except DimerWitError as exc:
        print(f"dimerwit: {type(exc).__name__}: {exc}", file=stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"dimerwit: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "), file=stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"dimerwit: {exc}", file=stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
