"""Binary expansions of integers and dyadic points.

Integers are plain Python ints; their binary digits are read with
:func:`eps`. Points of [0, 1) at resolution ``N`` are identified with one
of the ``2**N`` dyadic cells, most significant point bit first, so that
``x_0`` is bit ``N-1`` of the cell number.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "eps",
    "order",
    "truncate",
    "block_runs",
    "from_runs",
    "HarmonicValue",
    "harmonic",
    "harmonic_exact",
    "harmonic_float",
    "harmonic_array",
    "DyadicPoint",
    "dyadic_add",
    "bit_reverse",
    "parity",
    "EXACT_HARMONIC_LIMIT",
]


def eps(n: int, j: int) -> int:
    """j-th binary digit of n."""
    if j < 0:
        raise ValueError("bit position must be non-negative")
    return (n >> j) & 1


def order(n: int) -> int:
    """|n|, the position of the leading one bit, so 2**|n| <= n < 2**(|n|+1)."""
    if n < 1:
        raise ValueError(f"order is undefined for n={n}")
    return n.bit_length() - 1


def truncate(n: int, k: int) -> int:
    """n(k): the low k+1 bits of n.

    ``k = -1`` gives the empty sum 0, which the lower-bound formulas need
    for a block starting at bit 0.
    """
    if k < -1:
        raise ValueError("truncation level must be >= -1")
    return n & ((1 << (k + 1)) - 1)


def block_runs(n: int) -> tuple[tuple[int, int], ...]:
    """Maximal runs (a_i, b_i) of one bits of n, lowest run first."""
    if n < 1:
        raise ValueError("block_runs needs n >= 1")
    runs = []
    j = 0
    while n >> j:
        if (n >> j) & 1:
            a = j
            while (n >> (j + 1)) & 1:
                j += 1
            runs.append((a, j))
        j += 1
    return tuple(runs)


def from_runs(runs) -> int:
    return sum((1 << (b + 1)) - (1 << a) for a, b in runs)


# ---------------------------------------------------------------------------
# harmonic numbers l_n = 1 + 1/2 + ... + 1/(n-1)

EULER_GAMMA = 0.57721566490153286060651209
EXACT_HARMONIC_LIMIT = 1 << 14
_SMALL = 64

_exact_table = [Fraction(0), Fraction(0)]
_exact_lock = threading.Lock()


def harmonic_exact(n: int) -> Fraction:
    """l_n as an exact rational, from an append-only memo table."""
    if n < 0:
        raise ValueError("harmonic needs n >= 0")
    if n < len(_exact_table):
        return _exact_table[n]
    with _exact_lock:
        acc = _exact_table[-1]
        for k in range(len(_exact_table) - 1, n):
            acc = acc + Fraction(1, k)
            _exact_table.append(acc)
    return _exact_table[n]


def _asymptotic(m):
    # H_m for m >= 64; truncation error below 1e-20
    inv = 1.0 / m
    inv2 = inv * inv
    return (np.log(m) + EULER_GAMMA + 0.5 * inv
            - inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 / 252)))


def harmonic_float(n: int) -> float:
    if n < 0:
        raise ValueError("harmonic needs n >= 0")
    if n <= _SMALL:
        return float(harmonic_exact(n))
    return float(_asymptotic(float(n - 1)))


def harmonic_array(nmax: int) -> np.ndarray:
    """Float table ``l[0..nmax]``."""
    small = [float(harmonic_exact(k)) for k in range(min(nmax, _SMALL) + 1)]
    out = np.empty(nmax + 1)
    out[:len(small)] = small
    if nmax > _SMALL:
        m = np.arange(_SMALL + 1, nmax + 1, dtype=float) - 1.0
        out[_SMALL + 1:] = _asymptotic(m)
    return out


@dataclass(frozen=True)
class HarmonicValue:
    n: int
    exact: Fraction
    approx: float


def harmonic(n: int) -> HarmonicValue:
    return HarmonicValue(n, harmonic_exact(n), harmonic_float(n))


# ---------------------------------------------------------------------------
# points

def bit_reverse(cells, N: int):
    """Reverse the low N bits of each cell (array or int)."""
    scalar = np.isscalar(cells)
    c = np.asarray(cells, dtype=np.int64)
    out = np.zeros_like(c)
    for b in range(N):
        out |= ((c >> b) & 1) << (N - 1 - b)
    return int(out) if scalar else out


def parity(a):
    """Parity of the popcount, elementwise for int64 arrays."""
    a = np.asarray(a, dtype=np.int64).copy()
    p = np.zeros_like(a)
    while np.any(a):
        p ^= a & 1
        a >>= 1
    return p


@dataclass(frozen=True)
class DyadicPoint:
    """The dyadic interval I_N(x) of a point x, stored as a cell number."""

    resolution: int
    cell: int

    def __post_init__(self):
        if self.resolution < 0 or not 0 <= self.cell < (1 << self.resolution):
            raise ValueError(f"cell {self.cell} out of range at resolution {self.resolution}")

    def bit(self, j: int) -> int:
        """Point digit x_j."""
        if not 0 <= j < self.resolution:
            raise ValueError(f"digit {j} not resolved at resolution {self.resolution}")
        return (self.cell >> (self.resolution - 1 - j)) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self.bit(j) for j in range(self.resolution))

    @property
    def left(self) -> Fraction:
        return Fraction(self.cell, 1 << self.resolution)

    @classmethod
    def from_bits(cls, bits) -> "DyadicPoint":
        cell = 0
        for b in bits:
            cell = (cell << 1) | int(b)
        return cls(len(bits), cell)

    @classmethod
    def from_fraction(cls, x, resolution: int) -> "DyadicPoint":
        """Cell containing x (the terminating expansion is used for dyadic rationals)."""
        x = Fraction(x)
        if not 0 <= x < 1:
            raise ValueError("point must lie in [0, 1)")
        return cls(resolution, math.floor(x * (1 << resolution)))


def dyadic_add(x: DyadicPoint, y: DyadicPoint) -> DyadicPoint:
    if x.resolution != y.resolution:
        raise ValueError("dyadic_add needs equal resolutions")
    return DyadicPoint(x.resolution, x.cell ^ y.cell)
