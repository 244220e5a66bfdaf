"""Minimum-entropy colorings, the entropy sandwich, and OR powers.

The coloring with least cell entropy is an upper bound on graph entropy;
colorings of OR powers, normalized by the power, close the gap.
"""

from graphentropy import Distribution, builtin, min_entropy_coloring
from graphentropy.chromatic import chromatic_entropy_bounds, or_product_convergence

c5 = builtin("c_5")
p = [0.3, 0.2, 0.2, 0.1, 0.2]
coloring, h = min_entropy_coloring(c5, p)
print(f"C5 with P={p}: cells {list(coloring.cells)}, H_chi = {h:.6f} bits")

for name in ["c_5", "petersen", "star_7", "k_4"]:
    g = builtin(name)
    ch = chromatic_entropy_bounds(g, Distribution.uniform(g.n))
    print(
        f"{name:9s} -log a = {ch.neg_log_alpha_bits:.4f} <= H = {ch.entropy_bits:.4f}"
        f" <= H_chi = {ch.chromatic_entropy_bits:.4f} <= log chi = {ch.log_chi_bits:.4f}"
    )

p4 = builtin("p_4")
levels = or_product_convergence(p4, Distribution.uniform(4), 2)
print("P4 normalized chromatic entropies of OR powers:", [round(x, 6) for x in levels])
