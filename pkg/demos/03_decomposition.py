# The logarithmic kernel numerator split into H1 + (H21 + H22 + H23) + H3, checked exactly,
# and the lower bound for |H1| on the intervals A_k and B_k.
from walshlog.dyadic import block_runs
from walshlog.kernels import decompose, direct_log_kernel_sum, h1_closed_form, lower_bound_witness

n = 0b101101
d = decompose(n)
print("n =", n, "blocks", block_runs(n))
print("parts sum equals the direct sum:", d.parts_sum().equals(direct_log_kernel_sum(n)))
print("H1 closed form agrees:", d.h1.equals(h1_closed_form(n)))
for name, v in d.norms().items():
    print(f"  |{name}|_1 = {v:.4f}")

w = lower_bound_witness(n)
for r in w.records:
    print(f"  block {r.block} {r.kind}: integral {float(r.integral):.4f} >= {float(r.threshold):.4f}")
print(f"  |H1|_1 = {float(w.h1_l1):.4f} >= {float(w.h1_threshold):.4f}")

# exhaustive over a small range
bad = [m for m in range(4, 128) if not decompose(m).parts_sum().equals(direct_log_kernel_sum(m))]
print("mismatches for 4 <= n < 128:", bad)
