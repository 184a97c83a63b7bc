#!/usr/bin/env python3
"""Probability-density panels: |psi|^2 grids for levels x couplings.

Assembles the ground, first-excited and seventh-excited states at a few
couplings and writes each normalized density grid as CSV (x1, x2, rho).
Plot-ready; no rendering here.
"""

import argparse
from pathlib import Path

import numpy as np

from massbox.bethe import enumerate_spectrum
from massbox.wavefunction import assemble_coefficients, density_grid, special_state


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--res", type=int, default=128)
    ap.add_argument("--levels", type=int, nargs="+", default=[0, 1, 7])
    ap.add_argument("--gammas", type=float, nargs="+", default=[0.1, 1.0, 10.0])
    ap.add_argument("--outdir", type=Path, default=Path("density_panels"))
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    for gamma in args.gammas:
        levels = enumerate_spectrum(gamma, max(args.levels) + 1)
        for idx in args.levels:
            lv = levels[idx]
            if lv.interaction_independent:
                xs = np.linspace(-0.5, 0.5, args.res)
                x1g, x2g = np.meshgrid(xs, xs, indexing="ij")
                rho = special_state(*lv.quantum_numbers).evaluate(x1g, x2g) ** 2
                rho /= float(np.trapezoid(np.trapezoid(rho, xs), xs))
            else:
                grid = density_grid(assemble_coefficients(lv.root, gamma), args.res)
                xs, rho = grid.axis, grid.values
            path = args.outdir / f"density_level{idx}_gamma{gamma:g}.csv"
            lines = ["x1,x2,rho"]
            for i in range(args.res):
                for j in range(args.res):
                    lines.append(f"{xs[i]:.12g},{xs[j]:.12g},{rho[i, j]:.12g}")
            path.write_text("\n".join(lines) + "\n")
            print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
