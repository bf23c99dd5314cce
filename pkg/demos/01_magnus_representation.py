"""Fox calculus and the Magnus representation on a few small automorphisms.

Run: python3 demos/01_magnus_representation.py
"""

from magnus_kernel import fox_ab, kernel_member, magnus_matrix, parse_automorphism, parse_word
from magnus_kernel.fox import crossed_rhs
from magnus_kernel.sampling import non_ia_example

n = 3
w = parse_word("[x1,x2] x3^2", n)
print(f"w = {w}")
for i in range(1, n + 1):
    print(f"  abelianized d w / d x{i} = {fox_ab(w, i)}")

print("\nMagnus matrix of K_12 (x1 -> x2^-1 x1 x2):")
print(magnus_matrix(parse_automorphism("K 1 2", n)))

# The representation is only a crossed homomorphism off IA_n.
s = parse_automorphism("K 1 3", n)
t = non_ia_example(n)
print("\nr_M(st) == r_M(s) r_M(t)?      ", magnus_matrix(s * t) == magnus_matrix(s) * magnus_matrix(t))
print("r_M(st) == r_M(s)^{t*} r_M(t)?", magnus_matrix(s * t) == crossed_rhs(s, t))

for spec in ("K 1 2 3", "sigma 2 2 3", "inner [[x1,x2],[x1,x3]]"):
    print(f"\n{spec!r} in the kernel K_3: {kernel_member(parse_automorphism(spec, n))}")
