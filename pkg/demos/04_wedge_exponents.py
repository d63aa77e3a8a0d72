"""Survival exponents of constrained walks: how long does a blind walk
stay inside its region?

The survival probability at time n decays like n^-rho. For a planar
wedge of opening theta the exponent is pi/(2*theta); for the
quarter-plane step sets it is a known algebraic number; for a cone in
3d it comes from the first zero of a Legendre function. The script fits
rho from survivor counts at a ladder of sizes and compares.
"""

import math

from dmlaw import core, samplers, stats

SEED = 20260822
SIZES = (128, 256, 512, 1024, 2048)


def fit(model, attempts, **kwargs):
    rows = samplers.survival_counts(model, SIZES, attempts, SEED, **kwargs)
    return stats.survival_exponent(rows)


def main():
    print(f"{'walk':<22} {'fit':>8} {'stderr':>8} {'predicted':>10}")

    f = fit("motzkin", 20000)
    print(f"{'nonnegative prefix':<22} {f.estimate:8.4f} {f.stderr:8.4f} {0.5:10.4f}")

    for theta, label in ((math.pi / 2.0, "wedge pi/2"),
                         (math.pi, "half plane"),
                         (2.0 * math.pi, "slit plane")):
        f = fit("wedge", (20000, 40000, 80000, 160000, 320000), theta=theta)
        print(f"{label:<22} {f.estimate:8.4f} {f.stderr:8.4f} "
              f"{core.wedge_alpha(theta):10.4f}")

    f = fit("gessel", (20000, 30000, 45000, 70000, 100000))
    print(f"{'quarter plane (G)':<22} {f.estimate:8.4f} {f.stderr:8.4f} "
          f"{2 / 3:10.4f}")
    f = fit("kreweras3", (20000, 30000, 45000, 70000, 100000))
    print(f"{'quarter plane (K)':<22} {f.estimate:8.4f} {f.stderr:8.4f} "
          f"{0.75:10.4f}")

    nu = core.legendre_nu(math.acos(1.0 / math.sqrt(3.0)))
    print(f"\n3d diagonal cone: smallest Legendre degree with a root at "
          f"cos(theta)=1/sqrt(3) is {nu:.8f} (exactly 2)")


if __name__ == "__main__":
    main()
