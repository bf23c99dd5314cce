"""An element of K_4 invisible to every W_{4,d} but caught by the fourth Johnson homomorphism.

Run: python3 demos/04_johnson_tau4.py
"""

from magnus_kernel import SubgroupContext, johnson_depth, kernel_member, pi, tau
from magnus_kernel.detect import expected_tau4_tensor, undetected_conjugator, undetected_sigma
from magnus_kernel.series import format_tensor

n = 4
c = undetected_conjugator(n)
sigma = undetected_sigma(n)
print(f"c = [[x2,x3],[x2,x4]] = {c}")
print(f"sigma: x -> c x c^-1 is in K_4: {kernel_member(sigma)}")
for d in (3, 4, 5):
    print(f"  pi_(4,{d})(sigma) is zero: {not any(pi(sigma, SubgroupContext(n, d)))}")

print(f"\nJohnson depth: {johnson_depth(sigma, 5)}")
image = tau(sigma, 4)
print(image)
for i in range(2, n + 1):
    same = image.tensors[i] == expected_tau4_tensor(n, i)
    print(f"row {i} equals [[[x4,x2],x{i}],[x2,x3]] - [[[x3,x2],x{i}],[x2,x4]]: {same}")
print("\nrow 1 as a tensor:", format_tensor(image.tensors[1])[:120], "...")
