"""Summability means applied to functions, the test-function corpus, moduli
of continuity, and the convergence / Lebesgue-constant sweeps."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .dyadic import order
from .grid import GridFunction, Spectrum, fwht, ifwht, xor_convolve
from .kernels import KernelSpec, h1_part, log_kernel_l1, norlund_log_kernel
from .variation import IndexSequence, vl
from .walsh import maximal_function, walsh_function, weak_type_sup

__all__ = [
    "apply_mean",
    "log_mean",
    "TestFunction",
    "corpus",
    "get_function",
    "ModulusCurve",
    "modulus",
    "error_curve",
    "lebesgue_constant_curve",
    "spike_weak_type",
    "h1_weak_type",
]


def apply_mean(kernel: KernelSpec | GridFunction, f: GridFunction) -> GridFunction:
    """The mean with the given kernel: (f * kernel)(x) = integral of f(t) kernel(x+t) dt."""
    if isinstance(kernel, KernelSpec):
        kernel = kernel.build()
    if kernel.resolution != f.resolution:
        raise ValueError(f"kernel at N={kernel.resolution} but f at N={f.resolution}")
    return xor_convolve(f, kernel)


def log_mean(f: GridFunction, n: int) -> GridFunction:
    """L_n f, the Norlund logarithmic mean, at the resolution of f."""
    return apply_mean(norlund_log_kernel(n, f.resolution, exact=f.is_exact), f)


# ---------------------------------------------------------------------------
# corpus

@dataclass(frozen=True)
class TestFunction:
    name: str
    build: Callable[..., GridFunction]
    smoothness: str
    scale: int = 0  # resolutions at or above this refine consistently

    __test__ = False  # keep pytest from collecting this class

    def __call__(self, N: int, exact: bool = False) -> GridFunction:
        return self.build(N, exact)


def _identity(N, exact):
    # cell averages of x, i.e. the midpoints
    size = 1 << N
    if exact:
        return GridFunction.exact([Fraction(2 * c + 1, 2 * size) for c in range(size)])
    return GridFunction.double((2 * np.arange(size) + 1) / (2 * size))


def _constant(N, exact):
    return GridFunction.constant(1, N, exact)


def _walsh_poly(N, exact):
    # 1 + w_1/2 - w_3/4 + w_6/8: a Walsh polynomial of degree < 8
    g = GridFunction.constant(1, N, exact)
    for k, c in ((1, Fraction(1, 2)), (3, Fraction(-1, 4)), (6, Fraction(1, 8))):
        g = g + walsh_function(k, N, exact) * (c if exact else float(c))
    return g


def _indicator(m):
    def build(N, exact):
        return GridFunction.indicator(0, 1 << (N - m), N, exact)
    return build


def spike(m: int, N: int | None = None, exact: bool = False) -> GridFunction:
    """2**m on I_m(0), zero elsewhere; L1 norm 1."""
    N = m if N is None else N
    return GridFunction.indicator(0, 1 << (N - m), N, exact) * (1 << m)


def _log_modulus(N, exact):
    # 1/(k+1) on [2**-(k+1), 2**-k); cell 0 holds the average over I_N(0)
    size = 1 << N
    cells = np.arange(1, size)
    k = N - np.floor(np.log2(cells)).astype(int) - 1
    vals = np.empty(size)
    vals[1:] = 1.0 / (k + 1)
    vals[0] = sum(2.0 ** (N - j - 1) / (j + 1) for j in range(N, N + 80))
    return GridFunction.double(vals)


def corpus() -> list[TestFunction]:
    return [
        TestFunction("constant", _constant, "Walsh polynomial of degree 0"),
        TestFunction("identity", _identity, "Lipschitz, omega(d) ~ d"),
        TestFunction("walsh_poly", _walsh_poly, "Walsh polynomial of degree < 8", 3),
        TestFunction("indicator1", _indicator(1), "indicator of I_1(0)", 1),
        TestFunction("indicator3", _indicator(3), "indicator of I_3(0)", 3),
        TestFunction("spike4", lambda N, exact: spike(4, N, exact), "2^4 on I_4(0)", 4),
        TestFunction("spike8", lambda N, exact: spike(8, N, exact), "2^8 on I_8(0)", 8),
        TestFunction("log_modulus", _log_modulus, "omega(d) ~ 1/log(1/d)"),
    ]


def get_function(name: str) -> TestFunction:
    for tf in corpus():
        if tf.name == name:
            return tf
    raise ValueError(f"unknown test function {name!r}; known: {[t.name for t in corpus()]}")


# ---------------------------------------------------------------------------
# modulus of continuity

@dataclass(frozen=True)
class ModulusCurve:
    norm: str
    points: tuple[tuple[int, float], ...]  # (k, omega(2**-k, f))


def modulus(f: GridFunction, norm: str = "sup", k_max: int | None = None,
            k_min: int = 0) -> ModulusCurve:
    """omega(2**-k, f) = max over dyadic shifts 0 < h <= 2**-k of ||f(. + h) - f||,
    for k_min <= k <= k_max.

    Shifts are the grid points h = c / 2**N; adding h is XOR with cell c.
    """
    if norm not in ("sup", "l1"):
        raise ValueError("norm must be 'sup' or 'l1'")
    N = f.resolution
    k_max = N if k_max is None else min(k_max, N)
    v = f.to_double().values
    idx = np.arange(1 << N)
    last = min(1 << (N - k_min), (1 << N) - 1)
    per_shift = np.zeros(last + 1)
    for c in range(1, last + 1):
        d = np.abs(v[idx ^ c] - v)
        per_shift[c] = d.max() if norm == "sup" else d.mean()
    running = np.maximum.accumulate(per_shift)
    pts = tuple((k, float(running[min(1 << (N - k), last)])) for k in range(k_min, k_max + 1))
    return ModulusCurve(norm, pts)


# ---------------------------------------------------------------------------
# sweeps

def error_curve(seq: IndexSequence, f: TestFunction, A_max: int, A_min: int | None = None):
    """Rows ``A,n,error_sup,error_L1`` of ||L_{m_A} f - f|| with f sampled at |m_A| + 1."""
    rows = []
    for A, n in seq.terms(A_max, A_min):
        if n < 2:
            continue
        N = order(n) + 1
        g = f(N)
        err = log_mean(g, n) - g
        rows.append({"A": A, "n": n, "error_sup": float(err.sup_norm()),
                     "error_L1": float(err.l1_norm())})
    return rows


def lebesgue_constant_curve(seq: IndexSequence, A_max: int, A_min: int | None = None):
    """Rows ``A,n,F_l1,VL,ratio`` where ratio = ||F_n||_1 / (1 + V_L(n))."""
    rows = []
    for A, n in seq.terms(A_max, A_min):
        if n < 2:
            continue
        F = log_kernel_l1(n)
        v = float(vl(n, exact=False))
        rows.append({"A": A, "n": n, "F_l1": F, "VL": v, "ratio": F / (1 + v)})
    return rows


def spike_weak_type(m: int, N: int | None = None):
    """sup_lambda lambda |{E* f > lambda}| / ||f||_1 for the spike 2**m 1_{I_m(0)}."""
    f = spike(m, m + 2 if N is None else N, exact=True)
    return weak_type_sup(maximal_function(f)) / f.l1_norm()


def h1_weak_type(f: GridFunction, ns):
    """Weak-type quotient of sup over n in ns of |f * H1_n| / |n|.

    Every H1_n is refined to the resolution of f, which must be >= |n| + 1.
    """
    N = f.resolution
    fhat = fwht(f.to_double()).coeffs
    best = np.zeros(1 << N)
    for n in ns:
        h1 = h1_part(n, exact=False)
        h1 = h1.refine(N - h1.resolution)
        conv = ifwht(Spectrum(fhat * fwht(h1).coeffs)).values
        best = np.maximum(best, np.abs(conv) / order(n))
    return weak_type_sup(GridFunction.double(best)) / float(f.l1_norm())
