"""Dirichlet, Fejer, Riesz and Norlund kernels, and the split of the
logarithmic kernel numerator into the parts H1, H21, H22, H23, H3.

All kernels are built from their Walsh spectra (a kernel that is a
combination of D_k, k < n, has coefficient ``sum of weights of D_k, k > i``
at index i) and transformed back with :func:`~walshlog.grid.ifwht`.
:func:`dirichlet_table` and :func:`direct_log_kernel_sum` sum the defining
series cell by cell instead and serve as independent references.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .dyadic import block_runs, eps, harmonic_array, harmonic_exact, harmonic_float, order, truncate
from .grid import GridFunction, Spectrum, ifwht, walsh_matrix
from .walsh import rademacher_function, walsh_function

__all__ = [
    "default_resolution",
    "dirichlet",
    "dirichlet_table",
    "fejer",
    "norlund_log_kernel",
    "log_kernel_sum",
    "direct_log_kernel_sum",
    "riesz_log_kernel",
    "NorlundWeights",
    "norlund_kernel",
    "KernelSpec",
    "paley_shift_identity_check",
    "KernelDecomposition",
    "decompose",
    "h1_part",
    "h1_closed_form",
    "h1_closed_form_check",
    "BlockWitness",
    "LowerBoundWitness",
    "lower_bound_witness",
    "log_kernel_l1",
    "edge_sum",
]


def default_resolution(n: int) -> int:
    """|n| + 1: the smallest N at which every D_k, k <= n, is exact."""
    return order(n) + 1 if n >= 1 else 0


def _resolve(n, N):
    N = default_resolution(n) if N is None else N
    if n > 1 << N:
        raise ValueError(f"index {n} is not representable at resolution {N}")
    return N


def _from_spectrum(head, N: int, exact: bool) -> GridFunction:
    # head holds the coefficients of indices 0..len(head)-1; the rest vanish
    size = 1 << N
    if exact:
        c = np.full(size, Fraction(0), dtype=object)
        c[:len(head)] = [Fraction(v) for v in head]
    else:
        c = np.zeros(size)
        c[:len(head)] = np.asarray(head, dtype=float)
    return ifwht(Spectrum(c))


def _power_dirichlet(j: int, N: int) -> np.ndarray:
    """D_{2^j} as an int array: 2**j on I_j(0), zero elsewhere."""
    v = np.zeros(1 << N, dtype=np.int64)
    v[: 1 << (N - j)] = 1 << j
    return v


def dirichlet(n: int, N: int | None = None, exact: bool = True) -> GridFunction:
    """D_n = w_0 + ... + w_{n-1}; D_0 = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    N = _resolve(n, N)
    c = np.zeros(1 << N, dtype=np.int64)
    c[:n] = 1
    g = ifwht(Spectrum(c))
    return g if exact else g.to_double()


def dirichlet_table(kmax: int, N: int) -> np.ndarray:
    """Rows D_0..D_kmax, summed directly from the Walsh matrix (int64)."""
    if kmax > 1 << N:
        raise ValueError(f"D_{kmax} is not representable at resolution {N}")
    W = walsh_matrix(N)[:kmax]
    out = np.zeros((kmax + 1, 1 << N), dtype=np.int64)
    np.cumsum(W, axis=0, out=out[1:])
    return out


def fejer(n: int, N: int | None = None, exact: bool = False) -> GridFunction:
    """K_n = (D_1 + ... + D_n) / n."""
    if n < 1:
        raise ValueError("Fejer kernel needs n >= 1")
    N = _resolve(n, N)
    if exact:
        head = [Fraction(n - i, n) for i in range(n)]
    else:
        head = (n - np.arange(n)) / n
    return _from_spectrum(head, N, exact)


def log_kernel_sum(n: int, N: int | None = None, exact: bool = False) -> GridFunction:
    """The numerator sum_{j=1}^{n-1} D_{n-j}/j = l_n F_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    N = _resolve(n, N)
    if exact:
        head = [harmonic_exact(n - i) for i in range(n)]
    else:
        head = harmonic_array(n)[n - np.arange(n)]
    return _from_spectrum(head, N, exact)


def norlund_log_kernel(n: int, N: int | None = None, exact: bool = False) -> GridFunction:
    """F_n = (1/l_n) sum_{k=1}^{n-1} D_k / (n-k)."""
    if n < 2:
        raise ValueError("logarithmic kernel needs n >= 2")
    total = log_kernel_sum(n, N, exact)
    return total / (harmonic_exact(n) if exact else harmonic_float(n))


def direct_log_kernel_sum(n: int, N: int | None = None, exact: bool = True,
                          table: np.ndarray | None = None) -> GridFunction:
    """sum_{j=1}^{n-1} D_{n-j}/j summed term by term.

    ``table`` may be a precomputed :func:`dirichlet_table` with at least n rows.
    """
    N = _resolve(n, N)
    D = dirichlet_table(n, N) if table is None else table
    if not exact:
        j = np.arange(1, n)
        return GridFunction.double((1.0 / j) @ D[n - j])
    den = math.lcm(*range(1, n)) if n > 1 else 1
    acc = np.zeros(1 << N, dtype=object)
    acc[:] = 0
    for j in range(1, n):
        acc = acc + D[n - j].astype(object) * (den // j)
    return GridFunction(np.array([Fraction(int(v), den) for v in acc], dtype=object))


def riesz_log_kernel(n: int, N: int | None = None, exact: bool = False) -> GridFunction:
    """(1/l_n) sum_{k=1}^{n-1} D_k / k."""
    if n < 2:
        raise ValueError("Riesz logarithmic kernel needs n >= 2")
    N = _resolve(n, N)
    if exact:
        ln = harmonic_exact(n)
        head = [(ln - harmonic_exact(i + 1)) / ln for i in range(n)]
    else:
        l = harmonic_array(n)
        head = (l[n] - l[1:n + 1]) / l[n]
    return _from_spectrum(head, N, exact)


@dataclass(frozen=True)
class NorlundWeights:
    """Non-negative weights q_k, k >= 1 (q_0 is never used by the means)."""

    q: Callable[[int], Fraction]
    name: str = "custom"

    def Q(self, n: int) -> Fraction:
        return sum((self.q(k) for k in range(1, n + 1)), Fraction(0))

    @classmethod
    def logarithmic(cls) -> "NorlundWeights":
        return cls(lambda k: Fraction(1, k), "1/k")

    @classmethod
    def constant(cls) -> "NorlundWeights":
        return cls(lambda k: Fraction(1), "1")

    @classmethod
    def from_sequence(cls, q) -> "NorlundWeights":
        seq = [Fraction(v) for v in q]
        return cls(lambda k: seq[k], "sequence")


def norlund_kernel(w: NorlundWeights, n: int, N: int | None = None,
                   exact: bool = False) -> GridFunction:
    """(1/Q_n) sum_{k=0}^{n-1} q_{n-k} D_k."""
    Q = w.Q(n)
    if Q == 0:
        raise ValueError("Q_n vanishes")
    N = _resolve(n, N)
    head = [Fraction(0)] * n
    acc = Fraction(0)
    for i in range(n - 2, -1, -1):
        acc += w.q(n - (i + 1))
        head[i] = acc / Q
    if not exact:
        head = [float(v) for v in head]
    return _from_spectrum(head, N, exact)


@dataclass(frozen=True)
class KernelSpec:
    kind: str
    n: int
    weights: NorlundWeights | None = None
    resolution: int | None = None
    exact: bool = False

    def build(self) -> GridFunction:
        if self.kind == "dirichlet":
            return dirichlet(self.n, self.resolution, self.exact)
        if self.kind == "fejer":
            return fejer(self.n, self.resolution, self.exact)
        if self.kind == "norlund_log":
            return norlund_log_kernel(self.n, self.resolution, self.exact)
        if self.kind == "riesz_log":
            return riesz_log_kernel(self.n, self.resolution, self.exact)
        if self.kind == "norlund_general":
            if self.weights is None:
                raise ValueError("norlund_general needs weights")
            return norlund_kernel(self.weights, self.n, self.resolution, self.exact)
        raise ValueError(f"unknown kernel kind {self.kind!r}")


KERNEL_KINDS = ("dirichlet", "fejer", "norlund_log", "riesz_log", "norlund_general")


def paley_shift_identity_check(j: int, k: int, N: int) -> bool:
    """D_{2^j - k} == D_{2^j} - w_{2^j - 1} D_k, cell for cell."""
    if not 1 <= k <= (1 << j) - 1 or j >= N:
        raise ValueError(f"need 1 <= k < 2**j and j < N (got j={j}, k={k}, N={N})")
    lhs = dirichlet((1 << j) - k, N)
    rhs = dirichlet(1 << j, N) - walsh_function((1 << j) - 1, N) * dirichlet(k, N)
    return lhs.equals(rhs)


# ---------------------------------------------------------------------------
# the decomposition of sum_j D_{n-j}/j

@dataclass(frozen=True, eq=False)
class KernelDecomposition:
    n: int
    h1: GridFunction
    h21: GridFunction
    h22: GridFunction
    h23: GridFunction
    h3: GridFunction
    total: GridFunction

    @property
    def h2(self) -> GridFunction:
        return self.h21 + self.h22 + self.h23

    def parts_sum(self) -> GridFunction:
        return self.h1 + self.h21 + self.h22 + self.h23 + self.h3

    def norms(self) -> dict:
        return {name: float(getattr(self, name).l1_norm())
                for name in ("h1", "h21", "h22", "h23", "h3")}


def _inner_dirichlet_sum(j: int, m: int, N: int, exact: bool) -> GridFunction:
    """sum_{k=1}^{2^j - 1} D_k / (k + m)."""
    size = 1 << j
    if exact:
        head = [Fraction(0)] * size
        acc = Fraction(0)
        for i in range(size - 2, -1, -1):
            acc += Fraction(1, i + 1 + m)
            head[i] = acc
    else:
        w = 1.0 / (np.arange(1, size) + m)
        head = np.zeros(size)
        head[:size - 1] = np.cumsum(w[::-1])[::-1]
    return _from_spectrum(head, N, exact)


def h1_part(n: int, exact: bool = True) -> GridFunction:
    """H1 = w_n sum_{j=2}^{|n|} eps_j(n) D_{2^j} rho_j l_{n(j-1)} at resolution |n|+1."""
    if n < 4:
        raise ValueError(f"H1 needs n >= 4, got {n}")
    top = order(n)
    N = top + 1
    l = harmonic_exact if exact else harmonic_float
    wn = walsh_function(n, N, exact=False).values.astype(np.int64)
    acc = np.full(1 << N, Fraction(0), dtype=object) if exact else np.zeros(1 << N)
    for j in range(2, top + 1):
        if eps(n, j):
            rho = rademacher_function(j, N, exact=False).values.astype(np.int64)
            acc = acc + (wn * _power_dirichlet(j, N) * rho).astype(object if exact else float) \
                * l(truncate(n, j - 1))
    return GridFunction(acc)


def decompose(n: int, exact: bool = True) -> KernelDecomposition:
    """Split sum_{j=1}^{n-1} D_{n-j}/j at resolution |n|+1.

    Every level-j term carries the sign factor prod_{s>j} rho_s^{eps_s(n)},
    which is w_{n - n(j)}. The k = 0 term of the level-j block,
    D_{2^j}/n(j-1), only exists when n(j-1) >= 1.
    """
    if n < 4:
        raise ValueError(f"decompose needs n >= 4 (|n| >= 2), got {n}")
    top = order(n)
    N = top + 1
    size = 1 << N
    if exact:
        zero = lambda: np.full(size, Fraction(0), dtype=object)
        num = lambda v: np.asarray(v, dtype=object)
        frac = Fraction
    else:
        zero = lambda: np.zeros(size)
        num = lambda v: np.asarray(v, dtype=float)
        frac = lambda a, b=1: a / b
    h21, h22, h23 = zero(), zero(), zero()
    for j in range(2, top + 1):
        if not eps(n, j):
            continue
        m = truncate(n, j - 1)
        sign = walsh_function(n - truncate(n, j), N, exact=False).values.astype(np.int64)
        d = _power_dirichlet(j, N)
        if m >= 1:
            h21 = h21 + num(d * sign) * frac(1, m)
        tail = sum((frac(1, k + m) for k in range(1, 1 << j)), frac(0))
        h22 = h22 + num(d * sign) * tail
        inner = _inner_dirichlet_sum(j, m, N, exact)
        w_low = walsh_function((1 << j) - 1, N, exact=False).values.astype(np.int64)
        h23 = h23 - inner.values * num(w_low * sign)

    low = truncate(n, 1)
    if low >= 2:
        h3 = log_kernel_sum(low, N, exact).values * num(
            walsh_function(n - low, N, exact=False).values.astype(np.int64))
    else:
        h3 = zero()
    total = log_kernel_sum(n, N, exact)
    return KernelDecomposition(n, h1_part(n, exact), GridFunction(h21), GridFunction(h22),
                               GridFunction(h23), GridFunction(h3), total)


def h1_closed_form(n: int, exact: bool = True) -> GridFunction:
    """w_n sum_{j=2}^{|n|} eps_j(n) l_{n(j-1)} (D_{2^{j+1}} - D_{2^j}) at resolution |n|+1."""
    top = order(n)
    N = top + 1
    l = harmonic_exact if exact else harmonic_float
    wn = walsh_function(n, N, exact=False).values.astype(np.int64)
    acc = np.full(1 << N, Fraction(0), dtype=object) if exact else np.zeros(1 << N)
    for j in range(2, top + 1):
        if eps(n, j):
            diff = _power_dirichlet(j + 1, N) - _power_dirichlet(j, N)
            acc = acc + (wn * diff).astype(object if exact else float) * l(truncate(n, j - 1))
    return GridFunction(acc)


def h1_closed_form_check(n: int) -> bool:
    if n < 4:
        raise ValueError("h1_closed_form_check needs n >= 4")
    return decompose(n).h1.equals(h1_closed_form(n))


def edge_sum(n: int, exact: bool = True):
    """sum_{k=1}^{|n|} |eps_k(n) - eps_{k+1}(n)| l_{n(k-1)}."""
    l = harmonic_exact if exact else harmonic_float
    acc = Fraction(0) if exact else 0.0
    for k in range(1, order(n) + 1):
        if eps(n, k) != eps(n, k + 1):
            acc += l(truncate(n, k - 1))
    return acc


# ---------------------------------------------------------------------------
# lower bound for ||H1||_1

@dataclass(frozen=True)
class BlockWitness:
    block: int
    kind: str  # "A" or "B"
    level: int  # the interval is [2**-(level+1), 2**-level)
    integral: Fraction
    threshold: Fraction

    @property
    def passed(self) -> bool:
        return self.integral >= self.threshold


@dataclass(frozen=True)
class LowerBoundWitness:
    n: int
    records: tuple[BlockWitness, ...]
    h1_l1: Fraction
    h1_threshold: Fraction
    resolution: int = field(default=0)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records) and self.h1_l1 >= self.h1_threshold

    def failures(self) -> list:
        out = [r for r in self.records if not r.passed]
        if self.h1_l1 < self.h1_threshold:
            out.append(("H1", self.h1_l1, self.h1_threshold))
        return out


def lower_bound_witness(n: int, h1: GridFunction | None = None) -> LowerBoundWitness:
    """Integrals of |H1| over A_k = [2**-(a_k+1), 2**-a_k) and
    B_k = [2**-(b_k+2), 2**-(b_k+1)) against l_{n(a_k-1)}/4 and l_{n(b_k-1)}/4.
    """
    if n < 4:
        raise ValueError(f"lower_bound_witness needs n >= 4, got {n}")
    if h1 is None:
        h1 = h1_part(n)
    # B_s for the top block sits at level |n|+1, one below the kernel's resolution
    fine = h1.refine(1)
    records = []
    for k, (a, b) in enumerate(block_runs(n), start=1):
        records.append(BlockWitness(k, "A", a, fine.annulus_integral(a),
                                    harmonic_exact(truncate(n, a - 1)) / 4))
        records.append(BlockWitness(k, "B", b + 1, fine.annulus_integral(b + 1),
                                    harmonic_exact(truncate(n, b - 1)) / 4))
    return LowerBoundWitness(n, tuple(records), h1.l1_norm(), edge_sum(n) / 4,
                             fine.resolution)


def log_kernel_l1(n: int, N: int | None = None) -> float:
    """||F_n||_1 in double precision."""
    return float(norlund_log_kernel(n, N, exact=False).l1_norm())
