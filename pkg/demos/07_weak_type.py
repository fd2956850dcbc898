# Weak type (1,1) experiments: E* of spikes, and the H1 maximal operator along 2^A - 1.
from walshlog.means import h1_weak_type, spike, spike_weak_type

for m in range(0, 11):
    print(f"spike 2^{m}: sup lambda |{{E* f > lambda}}| / |f|_1 = {float(spike_weak_type(m)):.4f}")

N = 10
ns = [(1 << A) - 1 for A in range(3, N + 1)]
for m in (0, 3, 6, 9):
    print(f"spike 2^{m}: H1 weak-type quotient {h1_weak_type(spike(m, N), ns):.4f}")
