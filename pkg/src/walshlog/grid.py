"""Step functions on [0, 1) at dyadic resolution and the Walsh-Paley transform.

A :class:`GridFunction` holds ``2**N`` cell values. Exact mode stores
``Fraction`` objects in an object array; double mode stores ``float64``.
Cell ``c`` covers ``[c/2**N, (c+1)/2**N)``.
"""
from __future__ import annotations

import csv
import functools
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dyadic import bit_reverse, parity

__all__ = [
    "GridFunction",
    "Spectrum",
    "fwht",
    "ifwht",
    "xor_convolve",
    "naive_fwht",
    "naive_xor_convolve",
    "walsh_matrix",
    "to_exact_array",
]


def to_exact_array(values) -> np.ndarray:
    arr = np.asarray(values, dtype=object).ravel()
    return np.array([Fraction(v) for v in arr], dtype=object)


def _resolution_of(length: int) -> int:
    N = length.bit_length() - 1
    if length < 1 or 1 << N != length:
        raise ValueError(f"length {length} is not a power of two")
    return N


@dataclass(frozen=True, eq=False)
class GridFunction:
    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if not isinstance(v, np.ndarray) or v.dtype not in (object, np.float64):
            v = np.asarray(v)
            if v.dtype.kind in "iub":
                v = to_exact_array(v)
            elif v.dtype != object:
                v = v.astype(np.float64)
        v = v.ravel()
        _resolution_of(len(v))
        if v.flags.writeable:
            v = v.copy()
            v.flags.writeable = False
        object.__setattr__(self, "values", v)

    # construction -------------------------------------------------------
    @classmethod
    def exact(cls, values) -> "GridFunction":
        return cls(to_exact_array(values))

    @classmethod
    def double(cls, values) -> "GridFunction":
        return cls(np.asarray(values, dtype=np.float64))

    @classmethod
    def constant(cls, c, N: int, exact: bool = True) -> "GridFunction":
        if exact:
            return cls(np.full(1 << N, Fraction(c), dtype=object))
        return cls(np.full(1 << N, float(c)))

    @classmethod
    def indicator(cls, start: int, stop: int, N: int, exact: bool = True) -> "GridFunction":
        """Indicator of the cell range [start, stop)."""
        v = np.zeros(1 << N, dtype=np.int64)
        v[start:stop] = 1
        return cls.exact(v) if exact else cls.double(v)

    # properties ---------------------------------------------------------
    @property
    def resolution(self) -> int:
        return _resolution_of(len(self.values))

    @property
    def is_exact(self) -> bool:
        return self.values.dtype == object

    @property
    def mode(self) -> str:
        return "exact" if self.is_exact else "double"

    def __len__(self):
        return len(self.values)

    def __getitem__(self, cell):
        return self.values[cell]

    def __repr__(self):
        return f"GridFunction(N={self.resolution}, mode={self.mode})"

    # conversion ---------------------------------------------------------
    def to_double(self) -> "GridFunction":
        if not self.is_exact:
            return self
        return GridFunction(np.array([float(v) for v in self.values]))

    def to_exact(self) -> "GridFunction":
        if self.is_exact:
            return self
        return GridFunction.exact(self.values)

    def refine(self, levels: int = 1) -> "GridFunction":
        """Same function at resolution N + levels."""
        return GridFunction(np.repeat(self.values, 1 << levels))

    def coarsen(self, levels: int = 1) -> "GridFunction":
        """Cell averages at resolution N - levels."""
        block = self.values.reshape(-1, 1 << levels)
        s = block.sum(axis=1)
        return GridFunction(s / (1 << levels) if not self.is_exact
                            else np.array([v / (1 << levels) for v in s], dtype=object))

    # arithmetic ---------------------------------------------------------
    def _other(self, other):
        if isinstance(other, GridFunction):
            if other.resolution != self.resolution:
                raise ValueError("resolution mismatch")
            a, b = self.values, other.values
            if self.is_exact != other.is_exact:
                a, b = self.to_double().values, other.to_double().values
            return a, b
        if self.is_exact and isinstance(other, float):
            return self.to_double().values, other
        if isinstance(other, (int, Fraction, np.integer)):
            other = Fraction(other) if self.is_exact else float(other)
        return self.values, other

    def __add__(self, other):
        a, b = self._other(other)
        return GridFunction(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._other(other)
        return GridFunction(a - b)

    def __rsub__(self, other):
        a, b = self._other(other)
        return GridFunction(b - a)

    def __mul__(self, other):
        a, b = self._other(other)
        return GridFunction(a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GridFunction):
            raise TypeError("pointwise division is not supported")
        a, b = self._other(other)
        return GridFunction(a / b)

    def __neg__(self):
        return GridFunction(-self.values)

    def __abs__(self):
        return GridFunction(np.abs(self.values))

    def equals(self, other: "GridFunction") -> bool:
        """Cell-for-cell equality (exact comparison in exact mode)."""
        return (self.resolution == other.resolution
                and bool(np.all(self.values == other.values)))

    def first_mismatch(self, other: "GridFunction"):
        """Index of the first cell where the two differ, or None."""
        diff = np.nonzero(self.values != other.values)[0]
        return int(diff[0]) if len(diff) else None

    def max_abs_diff(self, other: "GridFunction") -> float:
        return float(np.max(np.abs(self.to_double().values - other.to_double().values)))

    # norms --------------------------------------------------------------
    def integral(self):
        s = self.values.sum()
        return s / (1 << self.resolution)

    def l1_norm(self):
        return np.abs(self.values).sum() / (1 << self.resolution)

    def sup_norm(self):
        return np.abs(self.values).max()

    def annulus_integral(self, level: int, absolute: bool = True):
        """Integral over I_level(0) minus I_{level+1}(0), i.e. the interval [2**-(level+1), 2**-level).

        Needs level + 1 <= N.
        """
        N = self.resolution
        if not 0 <= level < N:
            raise ValueError(f"annulus at level {level} not resolved at N={N}")
        seg = self.values[1 << (N - level - 1): 1 << (N - level)]
        if absolute:
            seg = np.abs(seg)
        return seg.sum() / (1 << N)

    # serialization ------------------------------------------------------
    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.is_exact:
            w.writerow(["cell", "value_num", "value_den"])
            for c, v in enumerate(self.values):
                w.writerow([c, v.numerator, v.denominator])
        else:
            w.writerow(["cell", "value"])
            for c, v in enumerate(self.values):
                w.writerow([c, format(float(v), ".12g")])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GridFunction":
        rows = list(csv.reader(io.StringIO(text)))
        head, body = rows[0], rows[1:]
        body.sort(key=lambda r: int(r[0]))
        if head == ["cell", "value_num", "value_den"]:
            return cls.exact([Fraction(int(r[1]), int(r[2])) for r in body])
        return cls.double([float(r[1]) for r in body])

    def to_json(self) -> str:
        if self.is_exact:
            vals = [f"{v.numerator}/{v.denominator}" for v in self.values]
        else:
            vals = [float(v) for v in self.values]
        return json.dumps({"resolution": self.resolution, "mode": self.mode, "values": vals})

    @classmethod
    def from_json(cls, text: str) -> "GridFunction":
        d = json.loads(text)
        if d["mode"] == "exact":
            return cls.exact([Fraction(v) for v in d["values"]])
        return cls.double(d["values"])


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Walsh-Paley coefficients, ``coeffs[i]`` belongs to w_i."""

    coeffs: np.ndarray

    @property
    def resolution(self) -> int:
        return _resolution_of(len(self.coeffs))

    @property
    def is_exact(self) -> bool:
        return self.coeffs.dtype == object

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)


# ---------------------------------------------------------------------------
# transforms

def _common_integers(values: np.ndarray):
    den = math.lcm(*[v.denominator for v in values])
    ints = np.array([v.numerator * (den // v.denominator) for v in values], dtype=object)
    return ints, den


def _from_integers(ints, den) -> np.ndarray:
    return np.array([Fraction(int(v), den) for v in ints], dtype=object)


def _butterflies(x: np.ndarray, N: int) -> np.ndarray:
    # x has shape (2,)*N; transform every axis in place of itself
    for axis in range(N):
        a = x.take(0, axis=axis)
        b = x.take(1, axis=axis)
        x = np.stack([a + b, a - b], axis=axis)
    return x


def _reverse_axes(x: np.ndarray, N: int) -> np.ndarray:
    return x.reshape((2,) * N).transpose(tuple(range(N - 1, -1, -1))).reshape(-1)


def _paley_forward(v: np.ndarray, N: int) -> np.ndarray:
    if N == 0:
        return v.copy()
    # axis k of the cell tensor is point digit x_k; after the butterflies it is
    # index digit i_k, which must become bit k of the Paley index
    return _reverse_axes(_butterflies(v.reshape((2,) * N), N), N)


def _paley_inverse(c: np.ndarray, N: int) -> np.ndarray:
    if N == 0:
        return c.copy()
    x = _reverse_axes(c, N).reshape((2,) * N)
    return _butterflies(x, N).reshape(-1)


def fwht(f: GridFunction) -> Spectrum:
    """Walsh-Paley coefficients ``2**-N * sum_t f(t) w_i(t)`` in O(N 2**N)."""
    N = f.resolution
    if f.is_exact:
        ints, den = _common_integers(f.values)
        return Spectrum(_from_integers(_paley_forward(ints, N), den << N))
    return Spectrum(_paley_forward(f.values, N) / (1 << N))


def ifwht(c: Spectrum | np.ndarray) -> GridFunction:
    """Sum of ``c[i] * w_i``; inverse of :func:`fwht`."""
    coeffs = c.coeffs if isinstance(c, Spectrum) else np.asarray(c)
    N = _resolution_of(len(coeffs))
    if coeffs.dtype == object or coeffs.dtype.kind in "iu":
        vals = to_exact_array(coeffs) if coeffs.dtype != object else coeffs
        if any(not isinstance(v, Fraction) for v in vals):
            vals = to_exact_array(vals)
        ints, den = _common_integers(vals)
        return GridFunction(_from_integers(_paley_inverse(ints, N), den))
    return GridFunction(_paley_inverse(coeffs.astype(np.float64), N))


def xor_convolve(f: GridFunction, g: GridFunction, method: str = "spectral") -> GridFunction:
    """``(f*g)(x) = 2**-N sum_t f(t) g(x XOR t)``."""
    if f.resolution != g.resolution:
        raise ValueError("xor_convolve needs equal resolutions")
    if method == "naive":
        return naive_xor_convolve(f, g)
    if method != "spectral":
        raise ValueError(f"unknown method {method!r}")
    if f.is_exact != g.is_exact:
        f, g = f.to_double(), g.to_double()
    return ifwht(Spectrum(fwht(f).coeffs * fwht(g).coeffs))


# ---------------------------------------------------------------------------
# reference implementations straight from the definitions

@functools.lru_cache(maxsize=16)
def walsh_matrix(N: int) -> np.ndarray:
    """``W[i, c] = w_i`` on cell c, from the parity of shared digits (read-only)."""
    idx = np.arange(1 << N, dtype=np.int64)
    point_bits = bit_reverse(idx, N)
    W = 1 - 2 * parity(np.bitwise_and.outer(idx, point_bits))
    W.flags.writeable = False
    return W


def naive_fwht(f: GridFunction) -> Spectrum:
    N = f.resolution
    W = walsh_matrix(N)
    if f.is_exact:
        ints, den = _common_integers(f.values)
        return Spectrum(_from_integers(W.astype(object) @ ints, den << N))
    return Spectrum(W @ f.values / (1 << N))


def naive_xor_convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    if f.resolution != g.resolution:
        raise ValueError("xor_convolve needs equal resolutions")
    N = f.resolution
    idx = np.arange(1 << N)
    shifted = g.values[np.bitwise_xor.outer(idx, idx)]
    if f.is_exact and g.is_exact:
        out = shifted @ f.values
        return GridFunction(np.array([v / (1 << N) for v in out], dtype=object))
    return GridFunction(shifted.astype(float) @ f.to_double().values / (1 << N))
