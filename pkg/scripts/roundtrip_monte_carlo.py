"""Monte Carlo study of fit recovery versus noise level.

For each noise level, synthesize 2-300 K data from the published
parameters with many seeds, refit, and summarise the spread of g, J, rho
and the derived entanglement temperature.
"""
import argparse

import numpy as np

from dimerwit import FitConfig, ModelParams, entanglement_temperature, fit, synthesize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--noise", type=float, nargs="+", default=[0.001, 0.01, 0.03])
    args = ap.parse_args()

    truth = ModelParams(1.8, -282.0, 0.01)
    start = FitConfig(ModelParams(2.0, -200.0, 0.0))
    grid = np.linspace(2.0, 300.0, 150)
    te_true = entanglement_temperature(truth).te_K
    print("noise  med|dg/g|  med|dJ/J|  med|drho|  med|dTe/Te|  converged")
    for noise in args.noise:
        rows = []
        for seed in range(args.seeds):
            res = fit(synthesize(truth, grid, noise, seed), start)
            p = res.params
            rows.append((abs(p.g / truth.g - 1), abs(p.j_K / truth.j_K - 1),
                         abs(p.rho - truth.rho),
                         abs(entanglement_temperature(p).te_K / te_true - 1), res.converged))
        a = np.array(rows, dtype=float)
        med = np.median(a[:, :4], axis=0)
        print(f"{noise:5.3f}  {med[0]:9.2e}  {med[1]:9.2e}  {med[2]:9.2e}  {med[3]:10.2e}"
              f"  {int(a[:, 4].sum())}/{args.seeds}")


if __name__ == "__main__":
    main()
