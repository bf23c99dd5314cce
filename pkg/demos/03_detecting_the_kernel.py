"""Integer ranks of the images of sigma_m and sigma_m^{j,s} in IA(W_{n,d})^ab.

The ranks grow linearly in d, which is the finite shadow of K_n^ab not being
finitely generated.

Run: python3 demos/03_detecting_the_kernel.py
"""

import time

from magnus_kernel.detect import rank1_rows, rank2_rows

print("sigma_m, n = 3")
print(" d  rank  d-2   seconds")
for d in range(3, 10):
    start = time.perf_counter()
    r = rank1_rows(3, d).rank()
    print(f"{d:2d}  {r:4d}  {d - 2:3d}   {time.perf_counter() - start:.2f}")

print("\nsigma_m^{j,s}")
print(" n  d  rank  (d-2)(n-1)(n-2)")
for n, d in [(3, 4), (3, 6), (4, 3), (4, 4), (4, 5)]:
    r = rank2_rows(n, d).rank()
    print(f"{n:2d} {d:2d}  {r:4d}  {(d - 2) * (n - 1) * (n - 2):4d}")
