#!/usr/bin/env python3
"""Window-size sweep for the reciprocal kernel: how the finite-section top
eigenvalue approaches the multiplier supremum pi.

The gap follows the window-curvature law pi - lambda_max ~ (pi^3/2)(pi/2L)^2,
so the reference tolerance 1e-3 is reachable only near L ~ 200. This table is
the backing data for the deliberately red acceptance check.
"""

import argparse
import math

import numpy as np

from hankelscope import (LogGrid, QuasiCarlemanKernel, RealPolynomial,
                         build_hankel_matrix, eigen_sym)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--N", type=int, default=1024)
    parser.add_argument("--windows", default="6,10,14,20,30,60")
    args = parser.parse_args()

    kernel = QuasiCarlemanKernel(RealPolynomial(np.array([1.0])))
    print(f"{'L':>6} {'N':>6} {'lambda_max':>14} {'pi - lambda_max':>16} "
          f"{'curvature model':>16} {'min eig':>12}")
    for L in (float(tok) for tok in args.windows.split(",")):
        rep = eigen_sym(build_hankel_matrix(kernel, LogGrid(L=L, N=args.N)))
        top = rep.eigenvalues[-1]
        model = (math.pi**3 / 2.0) * (math.pi / (2.0 * L)) ** 2
        print(f"{L:6.1f} {args.N:6d} {top:14.9f} {math.pi - top:16.3e} "
              f"{model:16.3e} {rep.eigenvalues[0]:12.2e}")


if __name__ == "__main__":
    main()
