import math
from fractions import Fraction

import pytest

from walshlog.dyadic import block_runs, harmonic_exact, harmonic_float, order
from walshlog.variation import (classify, condition_profile, konyagin_hypotheses, mem_sum, sequence,
                                variation_report, vl, vs)


def test_vs_examples():
    assert vs(1) == 2
    for k in range(1, 40):
        assert vs(1 << k) == 2
    assert vs(5) == 4
    assert vs(0) == 0


def test_vs_is_twice_run_count():
    for n in range(1, 1 << 16):
        assert vs(n) == 2 * len(block_runs(n))


def test_vl_examples():
    for k in range(1, 31):
        assert vl(1 << k) == 0
    assert vl(15) == Fraction(49, 60)
    v = float(vl((1 << 20) - 1))
    assert 0.9 * math.log(2) <= v <= 1.1 * math.log(2)
    assert v == pytest.approx(harmonic_float((1 << 19) - 1) / 19, rel=1e-12)
    with pytest.raises(ValueError):
        vl(1)


def test_mem_sum_examples():
    for k in range(1, 31):
        assert mem_sum(1 << k) == 0
    assert mem_sum(15) == Fraction(79, 60)
    assert float(mem_sum((1 << 30) - 1)) > 2 * float(mem_sum((1 << 10) - 1))


def test_exact_and_double_agree():
    for n in range(2, 3000, 7):
        assert float(vl(n, exact=True)) == pytest.approx(vl(n, exact=False), rel=1e-12)
        assert float(mem_sum(n, exact=True)) == pytest.approx(mem_sum(n, exact=False), rel=1e-12)
    assert isinstance(vl(15), Fraction)
    assert isinstance(vl((1 << 40) - 1), float)


def test_vl_zero_set():
    # V_L(n) = 0 exactly when no edge k has n(k-1) >= 2; over 4 <= n < 2**12
    # that is the powers of two together with 2**k + 1
    zeros = []
    for n in range(4, 1 << 12):
        edges = [k for k in range(1, order(n) + 1) if (n >> k & 1) != (n >> (k + 1) & 1)]
        assert (vl(n) == 0) == all(n & ((1 << k) - 1) <= 1 for k in edges), n
        if vl(n) == 0:
            zeros.append(n)
    assert zeros == sorted({1 << k for k in range(2, 12)} | {(1 << k) + 1 for k in range(2, 12)})


def test_mem_controls_vl():
    for n in range(2, 1 << 16):
        lhs = vl(n, exact=False)
        rhs = 2 * mem_sum(n, exact=False) + 2 * harmonic_float(n) / order(n)
        assert lhs <= rhs + 1e-12, n


def test_variation_report():
    r = variation_report(15)
    assert (r.vs, r.vl, r.mem_sum) == (2, Fraction(49, 60), Fraction(79, 60))
    assert [k for k, _ in r.l_truncations] == [1, 2, 3]
    assert r.l_truncations[2][1] == pytest.approx(float(harmonic_exact(7)))


def test_sequence_examples():
    assert sequence("konyagin")(2) == 336
    assert sequence("pow2")(5) == 32
    assert sequence("pow2minus1")(5) == 31
    assert sequence("alternating")(6) == 0b101010
    assert sequence("two_bits", gap=2)(5) == 36
    with pytest.raises(ValueError):
        sequence("primes")


@pytest.mark.parametrize("name", ["pow2", "pow2minus1", "konyagin", "alternating"])
def test_sequences_strictly_increasing(name):
    ns = [n for _, n in sequence(name).terms(20)]
    assert all(a < b for a, b in zip(ns, ns[1:]))


def test_konyagin_self_check():
    assert konyagin_hypotheses(8)
    seq = sequence("konyagin")
    for A in range(1, 8):
        k = order(seq(A)) + 1
        assert seq(A + 1) % (1 << k) == 0


def test_classify():
    assert classify([1, 1, 1, 1, 1, 1, 1, 1]) == "bounded-so-far"
    assert classify([1, 2, 3, 4, 5, 6, 7, 8]) == "growing"
    assert classify([0, 0, 0, 0]) == "bounded-so-far"


def test_condition_profile_examples():
    rows, classes = condition_profile(sequence("pow2"), 20)
    assert all(r["VL"] == 0 for r in rows)
    assert classes["VL"] == "bounded-so-far"
    rows, classes = condition_profile(sequence("pow2minus1"), 30)
    assert classes["VL"] == "bounded-so-far" and classes["mem_sum"] == "growing"
    assert rows[-1]["VL"] == pytest.approx(math.log(2), rel=0.1)
    rows, classes = condition_profile(sequence("alternating"), 30)
    assert classes["VL"] == "growing"
    # roughly linear in |n|: V_L(n) / |n| settles
    slopes = [r["VL"] / order(r["n"]) for r in rows[-6:]]
    assert max(slopes) / min(slopes) < 1.3
    rows, classes = condition_profile(sequence("konyagin"), 6)
    assert len(rows) == 6 and classes["VS"] == "growing"
    assert [r["VS"] for r in rows] == sorted(set(r["VS"] for r in rows))
    assert rows[0]["bits"] == format(rows[0]["n"], "b")
    with pytest.raises(ValueError):
        condition_profile(sequence("pow2"), 0)
