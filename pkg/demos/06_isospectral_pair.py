"""Two graphs with one Laplacian spectrum but different cycle statistics."""
from cyclespec import expected_k_cycles, irrep_laplacian_eigenvalues, isospectral_pair_search
from cyclespec import laplacian_eigenvalues

pair = isospectral_pair_search(n=4, seed=0)
for name, g in (("first", pair.first), ("second", pair.second)):
    print(name, [(i, j, round(w, 4)) for i, j, w in g.edges])
    print("  Laplacian", laplacian_eigenvalues(g).round(6))
    print("  [2,2]    ", irrep_laplacian_eigenvalues(g, (2, 2)).eigenvalues.round(6))
    # full-cycle probability depends on the graph spectrum alone; 3-cycles do not
    print("  E s_4(1) =", round(expected_k_cycles(g, 4, 1.0), 8),
          " E s_3(1) =", round(expected_k_cycles(g, 3, 1.0), 8))
