# Walsh functions on a dyadic grid, the fast transform, and XOR convolution.
from fractions import Fraction

import numpy as np

from walshlog.grid import GridFunction, fwht, ifwht, xor_convolve
from walshlog.kernels import dirichlet
from walshlog.walsh import dyadic_expectation, maximal_function, partial_sum, walsh_function

N = 3

# w_n on the 8 cells of [0,1); rows are n = 0..7 in Paley order
for n in range(1 << N):
    print(n, list(walsh_function(n, N, exact=False).values.astype(int)))

# a step function and its coefficients, exactly
f = GridFunction.exact([Fraction(k * k, 7) for k in range(8)])
c = fwht(f)
print("coefficients:", [str(v) for v in c.coeffs])
print("round trip exact:", ifwht(c).equals(f))

# D_4 is 4 on the first quarter, so convolving with it averages over quarters
print("D_4:", [str(v) for v in dirichlet(4, N).values])
print("f * D_4 == E_2 f:", xor_convolve(f, dirichlet(4, N)).equals(dyadic_expectation(f, 2)))
print("S_5 f:", [str(v) for v in partial_sum(f, 5).values])

# the maximal function of a spike
spike = GridFunction.indicator(0, 1, 6) * 64
print("E* of the spike:", [int(v) for v in maximal_function(spike).values[:16]])
