"""Batch experiments: kernel-norm sweeps over n and exact identity verification."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from .dyadic import order
from .kernels import (decompose, direct_log_kernel_sum, h1_closed_form, log_kernel_l1,
                      paley_shift_identity_check)
from .variation import sequence, vl, vs

__all__ = [
    "SweepRecord",
    "theorem1_record",
    "family_indices",
    "theorem1_sweep",
    "fit_band",
    "VerifyFailure",
    "verify_identities",
    "parallel_map",
    "format_value",
]


def format_value(v) -> str:
    """12 significant digits for floats, p/q for rationals."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def parallel_map(fn, items, jobs: int = 1):
    """Ordered map, in worker processes when jobs > 1."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


@dataclass(frozen=True)
class SweepRecord:
    n: int
    order: int
    VS: int
    VL: float
    F_l1: float
    ratio: float
    H1_l1: float
    H21_l1: float
    H22_l1: float
    H23_l1: float
    H3_l1: float
    wall_time: float = 0.0

    def as_row(self, timing: bool = False) -> dict:
        row = asdict(self)
        if not timing:
            row.pop("wall_time")
        return row


def theorem1_record(n: int) -> SweepRecord:
    """Kernel norm, V_L and the L1 norms of the decomposition parts for one n >= 4."""
    t0 = time.perf_counter()
    F = log_kernel_l1(n)
    v = float(vl(n, exact=False))
    parts = decompose(n, exact=False).norms()
    return SweepRecord(n, order(n), vs(n), v, F, F / (1 + v),
                       parts["h1"], parts["h21"], parts["h22"], parts["h23"], parts["h3"],
                       time.perf_counter() - t0)


def family_indices(nmax: int = 4096, nmin: int = 4) -> list[int]:
    """Members of 2**A - 1, the alternating-digit family and 2**a + 2**b within [nmin, nmax]."""
    out = set()
    for name in ("pow2minus1", "alternating"):
        seq = sequence(name)
        A = seq.start
        while seq(A) <= nmax:
            out.add(seq(A))
            A += 1
    for a in range(nmax.bit_length()):
        for b in range(a):
            out.add((1 << a) + (1 << b))
    return sorted(n for n in out if nmin <= n <= nmax)


def theorem1_sweep(nmin: int = 4, nmax: int = 512, family_max: int = 4096,
                   jobs: int = 1) -> list[SweepRecord]:
    if nmin < 4:
        raise ValueError("the sweep needs n >= 4")
    ns = set(range(nmin, nmax + 1))
    if family_max:
        ns.update(family_indices(family_max, nmin))
    return parallel_map(theorem1_record, sorted(ns), jobs)


def fit_band(records) -> dict:
    """Realized band [c, C] of ||F_n||_1 / (1 + V_L(n))."""
    lo = min(records, key=lambda r: r.ratio)
    hi = max(records, key=lambda r: r.ratio)
    return {"c": lo.ratio, "C": hi.ratio, "n_at_c": lo.n, "n_at_C": hi.n,
            "C_over_c": hi.ratio / lo.ratio, "count": len(records)}


# ---------------------------------------------------------------------------
# identity verification

@dataclass(frozen=True)
class VerifyFailure:
    n: int
    check: str
    cell: int | None
    detail: str = ""


def _verify_one(args):
    n, fault, mode = args
    if mode == "exact":
        d = decompose(n, exact=True)
        reference = direct_log_kernel_sum(n)
        if fault is not None and fault[0] == n:
            vals = reference.values.copy()
            vals[fault[1]] += 1
            reference = type(reference)(vals)
        for name, got in (("decomposition", d.parts_sum()), ("spectral_total", d.total)):
            cell = got.first_mismatch(reference)
            if cell is not None:
                return VerifyFailure(n, name, cell, f"{got[cell]} != {reference[cell]}")
        cell = d.h1.first_mismatch(h1_closed_form(n))
        if cell is not None:
            return VerifyFailure(n, "h1_closed_form", cell)
        return None
    d = decompose(n, exact=False)
    reference = direct_log_kernel_sum(n, exact=False)
    if fault is not None and fault[0] == n:
        vals = reference.values.copy()
        vals[fault[1]] += 1.0
        reference = type(reference)(vals)
    diff = abs(d.parts_sum() - reference).values
    if diff.max() >= 1e-9:
        return VerifyFailure(n, "decomposition", int(diff.argmax()), f"abs error {diff.max():.3g}")
    return None


def _paley_one(args):
    j, k = args
    if not paley_shift_identity_check(j, k, j + 1):
        return VerifyFailure(0, f"paley j={j} k={k}", None)
    return None


def verify_identities(nmin: int, nmax: int, mode: str = "exact", jobs: int = 1,
                      inject_fault: tuple[int, int] | None = None, paley_max_j: int = 6):
    """Run the decomposition, closed-form H1 and Paley identity checks.

    Returns ``(checked, failures)``. ``inject_fault=(n, cell)`` perturbs the
    reference at one cell, to exercise the failure path.
    """
    if nmin < 4 or nmax < nmin:
        raise ValueError(f"verify range must satisfy 4 <= nmin <= nmax, got {nmin}..{nmax}")
    if mode not in ("exact", "double"):
        raise ValueError("mode must be exact or double")
    ns = list(range(nmin, nmax + 1))
    results = parallel_map(_verify_one, [(n, inject_fault, mode) for n in ns], jobs)
    pairs = [(j, k) for j in range(1, paley_max_j + 1) for k in range(1, 1 << j)]
    results += parallel_map(_paley_one, pairs, jobs)
    failures = [r for r in results if r is not None]
    return len(ns) + len(pairs), failures
