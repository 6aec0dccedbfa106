"""Independent closed form for the spectrum of a uniform-flux magnetic cycle.

A cycle on n vertices with unit weights, vertex measure mu = degree = 2 and a
single edge carrying the phase e^{2*pi*i*j/k} is switching-equivalent to the
cycle where every edge carries the uniform phase a = 2*pi*j/(k*n). Its
normalized magnetic Laplacian is then the circulant matrix with first row
c_0 = 1, c_1 = -e^{ia}/2, c_{n-1} = -e^{-ia}/2, and circulant eigenvalues are
the DFT of the first row:

    lambda_m = 1 - (e^{ia} w^m + e^{-ia} w^{-m}) / 2,   w = e^{2*pi*i/n},

computed below directly from that sum (no linear algebra library involved).
"""

import cmath
import math


def magnetic_cycle_spectrum(n, k, j):
    a = 2.0 * math.pi * j / (k * n)
    lams = []
    for m in range(n):
        w = cmath.exp(2j * math.pi * m / n)
        val = 1.0 - 0.5 * (cmath.exp(1j * a) * w + cmath.exp(-1j * a) / w)
        lams.append(val.real)
    return sorted(lams)


if __name__ == "__main__":
    for n in range(3, 9):
        print(n, ["%.12f" % x for x in magnetic_cycle_spectrum(n, 4, 1)])
