"""Walsh-Paley functions, partial sums, dyadic expectations and the maximal function."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .dyadic import DyadicPoint, bit_reverse, parity
from .grid import GridFunction, Spectrum, fwht, ifwht

__all__ = [
    "rademacher",
    "walsh_eval",
    "rademacher_function",
    "walsh_function",
    "coefficients",
    "partial_sum",
    "dyadic_expectation",
    "maximal_function",
    "weak_type_sup",
]


def rademacher(n: int, x: DyadicPoint) -> int:
    if not 0 <= n < x.resolution:
        raise ValueError(f"rho_{n} needs resolution > {n}, got {x.resolution}")
    return 1 - 2 * x.bit(n)


def walsh_eval(n: int, x: DyadicPoint) -> int:
    if n < 0:
        raise ValueError("Walsh index must be non-negative")
    if n.bit_length() > x.resolution:
        raise ValueError(f"w_{n} is not resolved at N={x.resolution}")
    point_bits = bit_reverse(x.cell, x.resolution) if x.resolution else 0
    return 1 - 2 * (bin(n & point_bits).count("1") & 1)


def walsh_function(n: int, N: int, exact: bool = True) -> GridFunction:
    """w_n sampled on all cells at resolution N."""
    if n.bit_length() > N:
        raise ValueError(f"w_{n} is not resolved at N={N}")
    cells = np.arange(1 << N, dtype=np.int64)
    vals = 1 - 2 * parity(np.int64(n) & bit_reverse(cells, N))
    return GridFunction.exact(vals) if exact else GridFunction.double(vals)


def rademacher_function(n: int, N: int, exact: bool = True) -> GridFunction:
    return walsh_function(1 << n, N, exact)


def coefficients(f: GridFunction) -> Spectrum:
    """Walsh-Fourier coefficients f^(i) for i < 2**N."""
    return fwht(f)


def partial_sum(f: GridFunction, M: int) -> GridFunction:
    """S_M f = sum_{i<M} f^(i) w_i."""
    N = f.resolution
    if not 0 <= M <= 1 << N:
        raise ValueError(f"S_{M} needs M <= 2**{N}")
    c = fwht(f).coeffs.copy()
    c[M:] = Fraction(0) if f.is_exact else 0.0
    return ifwht(Spectrum(c))


def dyadic_expectation(f: GridFunction, n: int) -> GridFunction:
    """E_n f: the average of f over each I_n(x)."""
    N = f.resolution
    if not 0 <= n <= N:
        raise ValueError(f"E_{n} needs n <= N={N}")
    return f.coarsen(N - n).refine(N - n)


def maximal_function(f: GridFunction) -> GridFunction:
    """E* f = max over 0 <= n <= N of E_n |f|; levels beyond N add nothing."""
    af = abs(f)
    best = af
    for n in range(f.resolution):
        best = GridFunction(np.maximum(best.values, dyadic_expectation(af, n).values))
    return best


def weak_type_sup(g: GridFunction):
    """sup over lambda > 0 of lambda * |{|g| > lambda}|.

    For a step function the sup is approached as lambda rises to one of the
    attained values v, where it equals v * |{|g| >= v}|.
    """
    a = np.abs(g.values)
    vals, counts = np.unique(a, return_counts=True)
    at_least = np.cumsum(counts[::-1])[::-1]
    size = len(a)
    best = Fraction(0) if g.is_exact else 0.0
    for v, c in zip(vals, at_least):
        if v > 0:
            best = max(best, v * Fraction(int(c), size) if g.is_exact else float(v) * int(c) / size)
    return best
