"""Numerical entanglement temperature against the linear estimate
-(9/20)(2S+1)J for each ion spin, pure dimers."""
from dimerwit import ModelParams, SpinValue, entanglement_temperature, te_empirical


def main():
    j = -100.0
    print("S      T_e/|J|   empirical/|J|   rel.diff")
    for twice in range(1, 6):
        s = SpinValue(twice)
        te = entanglement_temperature(ModelParams(2.0, j, 0.0, s)).te_K
        emp = te_empirical(j, s)
        print(f"{str(s):5}  {te / -j:8.4f}  {emp / -j:13.4f}  {(emp - te) / te:+9.2%}")


if __name__ == "__main__":
    main()
