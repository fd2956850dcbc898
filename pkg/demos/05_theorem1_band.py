# |F_n|_1 against 1 + V_L(n): the ratio stays in a narrow band while both sides grow.
from walshlog.sweeps import fit_band, theorem1_sweep

records = theorem1_sweep(4, 256, family_max=2048, jobs=1)
band = fit_band(records)
print(f"{band['count']} indices, ratio in [{band['c']:.4f}, {band['C']:.4f}],"
      f" C/c = {band['C_over_c']:.3f}")

for r in records:
    if r.n in (255, 341, 512, 682, 1023, 1365, 2047):
        print(f"n={r.n:5d}  VL={r.VL:.3f}  |F|_1={r.F_l1:.4f}  ratio={r.ratio:.4f}")
