# Dirichlet, Fejer and logarithmic kernels, and how their L1 norms behave.
import numpy as np

from walshlog.kernels import dirichlet, fejer, log_kernel_l1, norlund_log_kernel, riesz_log_kernel

# D_n is unbounded in L1 along general n, but D_{2^k} has norm 1
for n in (4, 5, 7, 21, 42, 85, 170, 341):
    print(f"n={n:4d}  |D_n|_1={float(dirichlet(n).l1_norm()):.4f}"
          f"  |K_n|_1={float(fejer(n).l1_norm()):.4f}"
          f"  |F_n|_1={log_kernel_l1(n):.4f}")

# both logarithmic kernels integrate to 1
n = 37
print("int F_n =", norlund_log_kernel(n, exact=True).integral())
print("int R_n =", riesz_log_kernel(n, exact=True).integral())

# Fejer stays bounded over a long range
norms = np.array([float(fejer(n).l1_norm()) for n in range(1, 2049)])
print("max |K_n|_1 for n <= 2048:", norms.max(), "at n =", norms.argmax() + 1)
