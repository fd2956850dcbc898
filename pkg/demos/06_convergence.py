# Error curves of the logarithmic means and the Lebesgue constants behind them.
from walshlog.means import error_curve, get_function, lebesgue_constant_curve, modulus
from walshlog.variation import sequence

x = get_function("identity")
for r in error_curve(sequence("pow2"), x, 12, 3):
    print(f"pow2 A={r['A']:2d}  sup error {r['error_sup']:.3e}")

# bounded Lebesgue constants along 2^A - 1, slowly growing ones along 1010...
for name in ("pow2minus1", "alternating"):
    rows = lebesgue_constant_curve(sequence(name), 16, 3)
    print(name, " ".join(f"{r['F_l1']:.3f}" for r in rows))

# a function whose modulus of continuity decays only like 1/log(1/delta)
for k, w in modulus(get_function("log_modulus")(12), k_min=2, k_max=10).points:
    print(f"omega(2^-{k}) = {w:.4f}   times k = {w * k:.3f}")
