"""Exact cycle statistics of the interchange process on a weighted graph."""
import numpy as np

from cyclespec import WeightedGraph, chuk_bound, expected_k_cycles, laplacian_eigenvalues
from cyclespec import matrix_tree_check, prob_full_cycle

g = WeightedGraph(5, {(0, 1): 1.0, (1, 2): 0.5, (2, 3): 2.0, (3, 4): 1.0, (0, 4): 0.3, (1, 3): 0.8})
ts = np.array([0.1, 0.5, 1.0, 3.0, 10.0])

print("P(single 5-cycle):", np.round(prob_full_cycle(g, ts), 6))
lam1 = laplacian_eigenvalues(g)[1]
for k in range(1, g.n + 1):
    e = expected_k_cycles(g, k, ts)
    b = chuk_bound(g.n, k, ts, lam1)
    print(f"E s_{k}:", np.round(e, 5), " bound holds:", bool(np.all(np.abs(e - 1 / k) <= b)))

# at small t the full-cycle probability is t^(n-1) times the weighted tree sum
res = matrix_tree_check(g)
print(f"spectral={res.spectral_value:.6f} tree_sum={res.tree_sum:.6f} trees={res.tree_count}")
t = 1e-3
print("small-t ratio", prob_full_cycle(g, t) / (t ** (g.n - 1) * res.tree_sum))
