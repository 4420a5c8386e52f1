"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line
that is printed in the terminal summary."""
import io
import json
import math
import time

import numpy as np

from dimerwit import (
    FitConfig, ModelParams, SpinValue, chi_dimer, chi_fluctuation, curie_constant,
    entanglement_temperature, fit, multiplet_spectrum, synthesize, te_empirical, witness_curve,
)
from dimerwit.cli import run

from conftest import SPINS
from test_witness import _pure_dimer_root

FIVE_HALVES, HALF = SpinValue(5), SpinValue(1)


def _best_time(fn, repeats=5):
    best, value = math.inf, None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def _check(acceptance_line, number, ok, detail):
    acceptance_line(number, ok, detail)
    assert ok, detail


def test_criterion_01_multiplet_table(acceptance_line):
    j = -282.0
    elapsed, spec = _best_time(lambda: multiplet_spectrum(FIVE_HALVES, FIVE_HALVES, j))
    ok = (spec.energies.tolist() == [0, -j, -3 * j, -6 * j, -10 * j, -15 * j]
          and spec.degeneracies.tolist() == [1, 3, 5, 7, 9, 11] and elapsed < 1e-3)
    _check(acceptance_line, 1, ok,
           f"energies {spec.energies.tolist()} degeneracies {spec.degeneracies.tolist()} "
           f"in {elapsed * 1e3:.3f} ms")


def test_criterion_02_curie_constants(acceptance_line):
    c52, c12 = curie_constant(2, FIVE_HALVES), curie_constant(2, HALF)
    ok = abs(c52 / 7.84e-4 - 1) <= 0.01 and abs(c12 / 0.67e-4 - 1) <= 0.01
    _check(acceptance_line, 2, ok, f"C(5/2) = {c52:.5e}, C(1/2) = {c12:.5e} muB K/Oe")


def test_criterion_03_empirical_formula(acceptance_line):
    value = te_empirical(-282.0, FIVE_HALVES)
    _check(acceptance_line, 3, value == 761.4, f"te_empirical(-282, 5/2) = {value!r} K")


def test_criterion_04_headline_temperature(acceptance_line):
    p = ModelParams(g=1.8, j_K=-282.0, rho=0.01, s_bar=FIVE_HALVES, impurity_g=2.0)
    elapsed, res = _best_time(lambda: entanglement_temperature(p))
    ok = abs(res.te_K / 732.0 - 1) <= 0.02 and elapsed < 10e-3
    _check(acceptance_line, 4, ok, f"T_e = {res.te_K:.6f} K in {elapsed * 1e3:.2f} ms")


def test_criterion_05_pure_dimer_frontier(acceptance_line):
    te = entanglement_temperature(ModelParams(1.8, -282.0, 0.0)).te_K
    oracle = _pure_dimer_root(-282.0)
    ok = (750 <= te <= 765 and abs(te / 761.4 - 1) <= 0.02
          and abs(te / oracle - 1) <= 1e-10)
    _check(acceptance_line, 5, ok,
           f"T_e = {te:.6f} K (oracle {oracle:.6f}, {abs(te / 761.4 - 1):.2%} from 761.4)")


def test_criterion_06_spin_half_closed_form(acceptance_line):
    worst = 0.0
    for j in (-1.0, -10.0, -282.0):
        te = entanglement_temperature(ModelParams(2.0, j, 0.0, HALF)).te_K
        worst = max(worst, abs(te / (-j / math.log(3)) - 1))
    _check(acceptance_line, 6, worst <= 1e-9, f"max relative error {worst:.2e}")


def test_criterion_07_fluctuation_equivalence(acceptance_line):
    grid = np.geomspace(0.1, 1e5, 50)
    t0 = time.perf_counter()
    worst = 0.0
    for s in SPINS:
        for j in (-500.0, -1.0, 50.0):
            closed = chi_dimer(grid, 2.0, j, s)
            brute = np.array([chi_fluctuation(t, s, s, j, 2.0) for t in grid])
            # deep in the gap both forms underflow to exactly zero
            scale = np.where(closed > 0, closed, 1.0)
            worst = max(worst, float(np.max(np.abs(brute - closed) / scale)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 1.0
    _check(acceptance_line, 7, ok, f"max relative deviation {worst:.2e} in {elapsed:.3f} s")


def test_criterion_08_witness_limits(acceptance_line):
    # stated target for the high-T limit is 1/S; the model gives S (see README)
    j, rows, ok = -282.0, [], True
    for s in SPINS:
        p = ModelParams(2.0, j, 0.0, s)
        (hot,) = witness_curve(p, [1e7 * abs(j)])
        (cold,) = witness_curve(p, [abs(j) / 100])
        ok &= abs(hot.w - 1 / s.value) <= 1e-3 and abs(cold.w + 1) <= 1e-3
        rows.append(f"S={s}: W(hot)={hot.w:.4f} vs 1/S={1 / s.value:.4f}, W(cold)={cold.w:.4f}")
    _check(acceptance_line, 8, ok, "; ".join(rows))


def test_criterion_09_fit_round_trip(acceptance_line):
    truth, start = ModelParams(1.8, -282.0, 0.01), ModelParams(2.0, -200.0, 0.0)
    grid = np.linspace(2.0, 300.0, 150)
    t0 = time.perf_counter()
    exact = fit(synthesize(truth, grid), FitConfig(start)).params
    worst = max(abs(getattr(exact, n) / getattr(truth, n) - 1) for n in ("g", "j_K", "rho"))
    errs = [abs(fit(synthesize(truth, grid, 0.01, seed), FitConfig(start)).params.j_K / -282.0 - 1)
            for seed in range(20)]
    elapsed = time.perf_counter() - t0
    median = float(np.median(errs))
    ok = worst <= 1e-6 and median <= 0.02 and elapsed < 5.0
    _check(acceptance_line, 9, ok,
           f"zero-noise max rel error {worst:.1e}, 1% noise median J error {median:.2%}, "
           f"{elapsed:.2f} s")


def test_criterion_10_cli_pipeline(acceptance_line, tmp_path):
    def cli(argv):
        out = io.StringIO()
        return run(argv, out, io.StringIO()), out.getvalue()

    data = tmp_path / "synth.csv"
    codes = [cli(["synth", "--g", "1.8", "--j", "-282", "--rho", "0.01", "--noise", "0.01",
                  "--seed", "1", "--out", str(data)])[0]]
    code, first = cli(["fit", "--data", str(data)])
    codes.append(code)
    code, second = cli(["fit", "--data", str(data)])
    codes.append(code)
    p = json.loads(first)["params"]
    code, te_out = cli(["te", "--g", repr(p["g"]), "--j", repr(p["j_K"]), "--rho", repr(p["rho"])])
    codes.append(code)
    te = json.loads(te_out)["te_numeric_K"]
    stable = first.encode() == second.encode()
    ok = codes == [0, 0, 0, 0] and abs(te / 732.0 - 1) <= 0.02 and stable
    _check(acceptance_line, 10, ok,
           f"exit codes {codes}, T_e = {te:.3f} K, report byte-stable: {stable}")
