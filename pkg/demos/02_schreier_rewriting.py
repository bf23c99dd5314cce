"""The finite-index subgroup W_{3,4}: its free basis, rewriting, and how sigma_2 acts on it.

Run: python3 demos/02_schreier_rewriting.py
"""

from magnus_kernel import SubgroupContext, make_sigma, parse_word, restrict, rewrite

ctx = SubgroupContext(3, 4)
print(f"W_{{3,4}} is free of rank {ctx.rank}:")
for line in ctx.basis_strings():
    print("  " + line)

w = parse_word("x1^5 x2 x1^-2 x3 x1^-3", 3)
sw = rewrite(w, ctx)
print(f"\n{w}\n  rewrites to {sw}\n  and evaluates back to {sw.evaluate()}")

sigma = make_sigma(2, 2, 3, 3)
image = restrict(sigma, ctx)
print("\nsigma_2 restricted to W_{3,4} moves only the b[k,2]:")
for idx in image.moved():
    print(f"  {ctx.label(idx)} -> {ctx.format(image.images[idx - 1])}")
