"""Decomposing the k-cycle counting function into irreducible characters."""
from cyclespec import a_rho_closed_form, alpha_k, decompose, mn_character
from cyclespec.partitions import Partition, enumerate_partitions
from cyclespec.symfun import derive_a_rho_via_pieri

n = 5

# a few character values, computed by bead moves on beta-sets
for rho in enumerate_partitions(n):
    row = [mn_character(rho, mu) for mu in enumerate_partitions(n)]
    print(f"chi{rho!r:<12}", row)

# alpha_k(sigma) counts k-cycles; its coefficients are integers over k
for k in range(1, n + 1):
    coeffs = decompose(alpha_k(n, k))
    scaled = {rho: int(c * k) for rho, c in coeffs.items()}
    assert scaled == a_rho_closed_form(n, k)
    assert derive_a_rho_via_pieri(n, k).coeffs == scaled
    print(f"k={k}:", ", ".join(f"{a:+d}*{rho!r}" for rho, a in scaled.items()))

# only [n] and the shapes [a, b, 1^c] appear at all
print(a_rho_closed_form(8, 3)[Partition([5, 2, 1])])
