"""Logarithmic means of Walsh-Fourier series on dyadic grids.

Exact and double-precision kernels, the four-part decomposition of the
logarithmic kernel sums, variation functionals of the index and the
experiments built on them.
"""
from .dyadic import DyadicPoint, harmonic, harmonic_exact, harmonic_float
from .grid import GridFunction, Spectrum, fwht, ifwht, xor_convolve
from .kernels import (KernelDecomposition, KernelSpec, NorlundWeights, decompose, dirichlet,
                      direct_log_kernel_sum, fejer, log_kernel_sum, lower_bound_witness,
                      norlund_kernel, norlund_log_kernel, riesz_log_kernel)
from .means import apply_mean, error_curve, lebesgue_constant_curve, log_mean, modulus
from .variation import condition_profile, mem_sum, sequence, vl, vs
from .walsh import maximal_function, partial_sum, walsh_function

__version__ = "0.1.0"
