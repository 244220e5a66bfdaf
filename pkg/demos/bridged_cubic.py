"""A cubic graph with a bridge is not a k-graph, and its line graph shows it.

The bridge gives an odd vertex set with a cut of size 1, which pushes the
fractional edge chromatic number to 7/2.  The line graph's uniform entropy
then stays strictly below log2 of that value.
"""

import math

from graphentropy import Distribution, builtin, graph_entropy, is_k_graph, line_graph
from graphentropy import fractional_edge_chromatic_number
from graphentropy.graph import bridges

g = builtin("fig3")
print("bridges:", bridges(g))
value, witness = fractional_edge_chromatic_number(g)
print(f"chi'_f = {value} attained on U = {witness}")
ok, cut = is_k_graph(g)
print("k-graph:", ok, "odd set with small cut:", cut)

lg, _ = line_graph(g)
res = graph_entropy(lg, Distribution.uniform(lg.n))
print(f"H(L(G), U) = {res.value_bits:.6f} (gap {res.gap_bits:.1e}) vs log2 3.5 = {math.log2(3.5):.6f}")
