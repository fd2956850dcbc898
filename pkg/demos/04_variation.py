# V_S, V_L and the mem sum along the sequences that separate the convergence conditions.
import math

from walshlog.variation import condition_profile, sequence, vl

print("V_L(2^20 - 1) =", float(vl((1 << 20) - 1)), " ln 2 =", math.log(2))

for name in ("pow2", "pow2minus1", "alternating", "konyagin"):
    amax = 6 if name == "konyagin" else 24
    rows, classes = condition_profile(sequence(name), amax)
    last = rows[-1]
    print(f"{name:12s} A={last['A']:2d}  VS={last['VS']:3d}  VL={last['VL']:.3f}"
          f"  mem={last['mem_sum']:.3f}  {classes}")
