"""Binary variation V_S, logarithmic variation V_L, and index sequences."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .dyadic import EXACT_HARMONIC_LIMIT, eps, harmonic_exact, harmonic_float, order, truncate

__all__ = [
    "vs",
    "vl",
    "mem_sum",
    "VariationReport",
    "variation_report",
    "IndexSequence",
    "sequence",
    "SEQUENCES",
    "konyagin_hypotheses",
    "classify",
    "condition_profile",
]


def vs(n: int) -> int:
    """sum_i |eps_i(n) - eps_{i+1}(n)| + eps_0(n)."""
    if n <= 0:
        return 0
    return bin(n ^ (n >> 1)).count("1") + (n & 1)


def _weighted(n: int, use_bit: Callable[[int], bool], exact):
    if n < 2:
        raise ValueError(f"|n| vanishes for n={n}")
    top = order(n)
    ks = [k for k in range(1, top + 1) if use_bit(k)]
    if exact is None:
        # exact only while every needed l_m is cheap to form
        exact = all(truncate(n, k - 1) <= EXACT_HARMONIC_LIMIT for k in ks)
    if exact:
        return sum((harmonic_exact(truncate(n, k - 1)) for k in ks), Fraction(0)) / top
    return math.fsum(harmonic_float(truncate(n, k - 1)) for k in ks) / top


def vl(n: int, exact: bool | None = None):
    """V_L(n) = (1/|n|) sum_{k=1}^{|n|} |eps_k - eps_{k+1}| l_{n(k-1)}.

    Returns a Fraction when computed exactly. ``exact=None`` picks exact
    arithmetic unless some l_{n(k-1)} has argument above
    ``EXACT_HARMONIC_LIMIT``.
    """
    return _weighted(n, lambda k: eps(n, k) != eps(n, k + 1), exact)


def mem_sum(n: int, exact: bool | None = None):
    """(1/|n|) sum_{k=1}^{|n|} eps_k(n) l_{n(k-1)}."""
    return _weighted(n, lambda k: eps(n, k) == 1, exact)


@dataclass(frozen=True)
class VariationReport:
    n: int
    vs: int
    vl: Fraction | float
    mem_sum: Fraction | float
    l_truncations: tuple = ()


def variation_report(n: int, exact: bool | None = None) -> VariationReport:
    top = order(n)
    lt = tuple((k, harmonic_float(truncate(n, k - 1))) for k in range(1, top + 1))
    return VariationReport(n, vs(n), vl(n, exact), mem_sum(n, exact), lt)


# ---------------------------------------------------------------------------
# sequences

@dataclass(frozen=True)
class IndexSequence:
    name: str
    rule: Callable[[int], int]
    start: int = 1
    params: dict = field(default_factory=dict)

    def __call__(self, A: int) -> int:
        if A < self.start:
            raise ValueError(f"{self.name} starts at A={self.start}")
        return self.rule(A)

    def terms(self, A_max: int, A_min: int | None = None) -> list[tuple[int, int]]:
        lo = self.start if A_min is None else max(A_min, self.start)
        return [(A, self.rule(A)) for A in range(lo, A_max + 1)]


def _alternating(A: int) -> int:
    # A binary digits 1010..., leading digit at position A-1
    return sum(1 << (A - 1 - 2 * i) for i in range((A + 1) // 2))


SEQUENCES = {
    "pow2": (lambda A: 1 << A, 1),
    "pow2minus1": (lambda A: (1 << A) - 1, 2),
    "konyagin": (lambda A: (1 << (A * A)) * sum(4 ** i for i in range(A + 1)), 1),
    "alternating": (_alternating, 2),
}


def sequence(name: str, **params) -> IndexSequence:
    """Named index sequence m_A.

    ``pow2`` 2**A, ``pow2minus1`` 2**A - 1, ``konyagin`` 2**(A*A) sum_{i<=A} 4**i,
    ``alternating`` the A-digit number 1010...; ``two_bits`` 2**A + 2**gap
    with ``gap`` fixed (default 0).
    """
    if name == "two_bits":
        gap = params.get("gap", 0)
        return IndexSequence(name, lambda A: (1 << A) + (1 << gap), gap + 1, {"gap": gap})
    if name not in SEQUENCES:
        raise ValueError(f"unknown sequence {name!r}; known: {sorted(SEQUENCES) + ['two_bits']}")
    rule, start = SEQUENCES[name]
    return IndexSequence(name, rule, params.get("start", start), dict(params))


def konyagin_hypotheses(A_max: int) -> bool:
    """2**k_A divides n_{A+1} with k_A = floor(log2 n_A) + 1, for A < A_max."""
    seq = sequence("konyagin")
    for A in range(1, A_max):
        n, nxt = seq(A), seq(A + 1)
        if n >= nxt or nxt % (1 << (order(n) + 1)):
            return False
    return True


def classify(values, factor: float = 1.5) -> str:
    """``growing`` when the last-quarter max exceeds factor times the first-quarter max."""
    q = max(1, len(values) // 4)
    first, last = max(values[:q]), max(values[-q:])
    return "growing" if last > factor * first + 1e-12 else "bounded-so-far"


def condition_profile(seq: IndexSequence, A_max: int, A_min: int | None = None):
    """Rows of V_S, V_L and the mem sum along seq, with running maxima.

    Returns ``(rows, classes)``; rows are dicts keyed by the CSV columns
    ``A,n,bits,VS,VL,mem_sum,runmax_VL,runmax_mem``.
    """
    if A_max < 1:
        raise ValueError("A_max must be >= 1")
    rows = []
    run_vl = run_mem = 0.0
    for A, n in seq.terms(A_max, A_min):
        v = float(vl(n, exact=False))
        m = float(mem_sum(n, exact=False))
        run_vl, run_mem = max(run_vl, v), max(run_mem, m)
        rows.append({"A": A, "n": n, "bits": format(n, "b"), "VS": vs(n), "VL": v,
                     "mem_sum": m, "runmax_VL": run_vl, "runmax_mem": run_mem})
    classes = {key: classify([r[key] for r in rows]) for key in ("VS", "VL", "mem_sum")} if rows else {}
    return rows, classes
