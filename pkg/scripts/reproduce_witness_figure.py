"""Susceptibility and witness curves for the published Fe(III) dimer fit.

Writes a CSV with chi, chiT and W(T) on a log grid plus the pure-dimer
comparison, and prints both entanglement temperatures. Pass --plot to
render a PNG with matplotlib (not a package dependency).
"""
import argparse
import pathlib

import numpy as np

from dimerwit import ModelParams, entanglement_temperature, te_empirical
from dimerwit.fitdata.dataset import atomic_write
from dimerwit.fitdata.report import curve_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("out"))
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    fitted = ModelParams(g=1.8, j_K=-282.0, rho=0.01)
    pure = fitted.replace(rho=0.0)
    grid = np.geomspace(1.0, 1500.0, 500)
    for name, p in (("fitted", fitted), ("pure_dimer", pure)):
        atomic_write(args.out_dir / f"curve_{name}.csv", curve_csv(p, grid))
        te = entanglement_temperature(p).te_K
        print(f"{name:>10}: T_e = {te:.2f} K (empirical {te_empirical(p.j_K, p.s_bar):.1f} K)")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 7))
        for name in ("fitted", "pure_dimer"):
            d = np.genfromtxt(args.out_dir / f"curve_{name}.csv", delimiter=",", names=True)
            ax1.plot(d["temperature_K"], d["chiT_muBK_per_Oe"], label=name)
            ax2.plot(d["temperature_K"], d["witness"], label=name)
        ax2.axhline(0.0, color="k", lw=0.5)
        ax1.set_ylabel(r"$\chi T$ ($\mu_B$ K/Oe)")
        ax2.set_ylabel("W")
        ax2.set_xlabel("T (K)")
        ax1.legend()
        fig.tight_layout()
        fig.savefig(args.out_dir / "witness.png", dpi=150)


if __name__ == "__main__":
    main()
