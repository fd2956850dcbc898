import math
from fractions import Fraction

import numpy as np
import pytest

from walshlog.dyadic import harmonic_exact
from walshlog.grid import GridFunction, xor_convolve
from walshlog.kernels import KernelSpec, dirichlet, direct_log_kernel_sum, log_kernel_l1, norlund_log_kernel
from walshlog.means import (apply_mean, corpus, error_curve, get_function, h1_weak_type,
                            lebesgue_constant_curve, log_mean, modulus, spike, spike_weak_type)
from walshlog.variation import sequence
from walshlog.walsh import partial_sum, walsh_function


def random_exact(rng, N):
    return GridFunction.exact([Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(1 << N)])


def test_apply_mean_examples(rng):
    for n in range(2, 65):
        N = n.bit_length()
        assert log_mean(GridFunction.constant(1, N), n).equals(GridFunction.constant(1, N))
    for n in range(2, 16):
        for k in range(n, 16):
            assert log_mean(walsh_function(k, 4), n).equals(GridFunction.constant(0, 4))
    f = random_exact(rng, 3)
    oracle = sum((partial_sum(f, k) / (5 - k) for k in range(1, 5)), GridFunction.constant(0, 3))
    assert log_mean(f, 5).equals(oracle / harmonic_exact(5))
    with pytest.raises(ValueError):
        apply_mean(dirichlet(3, 2), f)


def test_dirichlet_mean_is_partial_sum(rng):
    f = random_exact(rng, 6)
    for M in range(0, 65):
        assert apply_mean(KernelSpec("dirichlet", M, resolution=6, exact=True), f).equals(partial_sum(f, M))


def test_young_inequality(rng):
    gen = np.random.default_rng(7)
    for n in (2, 3, 7, 12, 29, 64, 100):
        N = n.bit_length() + 1
        F = norlund_log_kernel(n, N)
        FL = float(F.l1_norm())
        for _ in range(5):
            f = GridFunction.double(gen.normal(size=1 << N))
            g = apply_mean(F, f)
            assert g.sup_norm() <= FL * f.sup_norm() + 1e-12
            assert g.l1_norm() <= FL * f.l1_norm() + 1e-12


def test_corpus_members():
    names = [tf.name for tf in corpus()]
    for required in ("constant", "identity", "walsh_poly", "indicator1", "spike4", "log_modulus"):
        assert required in names
    for m in range(0, 9):
        assert spike(m, m + 3, exact=True).l1_norm() == 1
    assert get_function("identity")(6, exact=True).integral() == Fraction(1, 2)
    with pytest.raises(ValueError):
        get_function("nope")


def test_corpus_refinement_consistency():
    for tf in corpus():
        if tf.name in ("identity", "log_modulus"):
            continue  # cell averages of a non-step function, only consistent under coarsening
        N = max(tf.scale, 2)
        assert tf(N + 1, exact=True).equals(tf(N, exact=True).refine())
    ident = get_function("identity")
    assert ident(7, exact=True).coarsen(2).equals(ident(5, exact=True))


def test_modulus_examples():
    curve = modulus(GridFunction.constant(1, 6))
    assert all(w == 0 for _, w in curve.points)
    N = 12
    x = get_function("identity")(N)
    for k, w in modulus(x, "sup", k_max=10).points:
        assert 2.0 ** (-k - 1) <= w <= 2.0 ** -k
    ind = get_function("indicator1")(5)
    assert dict(modulus(ind).points)[1] == 1.0
    ws = [w for _, w in modulus(get_function("walsh_poly")(6), "l1").points]
    assert all(a >= b for a, b in zip(ws, ws[1:]))


def test_modulus_brute_force():
    # compare with the definition, all shifts c/2**N with c <= 2**(N-k)
    f = get_function("log_modulus")(8)
    v = f.values
    idx = np.arange(256)
    for k, w in modulus(f).points:
        brute = max(np.abs(v[idx ^ c] - v).max() for c in range(1, min(1 << (8 - k), 255) + 1))
        assert w == brute


def test_log_modulus_rate():
    N = 14
    pts = dict(modulus(get_function("log_modulus")(N), "sup", k_max=12, k_min=4).points)
    scaled = [pts[k] * k for k in range(4, 13)]
    assert 0.15 <= min(scaled) and max(scaled) <= 1.0


def test_error_curve_identity_pow2():
    rows = error_curve(sequence("pow2"), get_function("identity"), 12, 3)
    errs = [r["error_sup"] for r in rows]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-2


def test_walsh_poly_along_pow2():
    f = get_function("walsh_poly")
    for A in range(3, 12):
        N = A + 1
        g = f(N, exact=True)
        assert partial_sum(g, 1 << A).equals(g)
    rows = error_curve(sequence("pow2"), f, 12, 3)
    errs = [r["error_sup"] for r in rows]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    for A in (3, 6):
        n = 1 << A
        g = f(A + 1, exact=True)
        oracle = GridFunction.exact(direct_log_kernel_sum(n, A + 1).values) / harmonic_exact(n)
        err = xor_convolve(g, oracle) - g
        assert float(err.sup_norm()) == pytest.approx(rows[A - 3]["error_sup"], rel=1e-12)


def test_error_curve_alternating_identity():
    # Lipschitz functions converge along every index sequence, so this curve tends to 0 too
    alt = [r["error_sup"] for r in error_curve(sequence("alternating"), get_function("identity"), 12, 3)]
    pw = [r["error_sup"] for r in error_curve(sequence("pow2"), get_function("identity"), 12, 3)]
    assert alt[-1] < alt[0]
    assert min(alt) / pw[-1] < 5


def test_lebesgue_curves():
    pm1 = lebesgue_constant_curve(sequence("pow2minus1"), 14, 3)
    F = [r["F_l1"] for r in pm1]
    assert max(F) / min(F) <= 2
    p2 = lebesgue_constant_curve(sequence("pow2"), 12, 2)
    assert all(r["VL"] == 0 for r in p2)
    assert max(r["F_l1"] for r in p2) <= 2
    alt = lebesgue_constant_curve(sequence("alternating"), 12, 3)
    Fa = [r["F_l1"] for r in alt]
    assert all(a < b for a, b in zip(Fa[::2], Fa[2::2]))
    assert Fa[-1] > Fa[0]
    for r in alt:
        assert r["ratio"] == pytest.approx(r["F_l1"] / (1 + r["VL"]))
        assert r["F_l1"] == log_kernel_l1(r["n"])


def test_spike_weak_type():
    for m in range(0, 11):
        c = spike_weak_type(m)
        assert c <= 2
    assert spike_weak_type(4) == 1


def test_h1_weak_type_finite():
    N = 9
    ns = [(1 << A) - 1 for A in range(3, N + 1)]
    consts = [h1_weak_type(spike(m, N), ns) for m in range(0, 8)]
    assert all(math.isfinite(c) and c > 0 for c in consts)
