"""Spectra of the graph Laplacian pushed through irreducible representations."""
import numpy as np

from cyclespec import build_graph, hook_eigenvalues_bacher, irrep_laplacian_eigenvalues
from cyclespec import laplacian_eigenvalues, permutation_module_spectrum
from cyclespec.partitions import enumerate_partitions
from cyclespec.symfun import kostka

g = build_graph("path", n=5)
eigs = laplacian_eigenvalues(g)
print("graph spectrum", np.round(eigs, 4))

for rho in enumerate_partitions(g.n):
    spec = irrep_laplacian_eigenvalues(g, rho).eigenvalues
    print(f"{rho!r:<14} dim={len(spec):<3} min={spec[0]:.4f}  max={spec[-1]:.4f}")

# hook shapes need no diagonalisation: sums of i distinct graph eigenvalues
hook = irrep_laplacian_eigenvalues(g, (3, 1, 1)).eigenvalues
print("hook [3,1,1] matches subset sums:",
      np.allclose(hook, hook_eigenvalues_bacher(eigs[1:], 2)))

# a permutation module splits into irreps with Kostka multiplicities
lam = (3, 2)
parts = enumerate_partitions(g.n)
assembled = np.sort(np.concatenate([
    np.repeat(irrep_laplacian_eigenvalues(g, mu).eigenvalues, kostka(mu, lam)) for mu in parts]))
print("Young's rule on [3,2]:", np.allclose(permutation_module_spectrum(lam, g), assembled))

# no nontrivial irrep goes below the spectral gap
gaps = [irrep_laplacian_eigenvalues(g, mu).eigenvalues[0] for mu in parts[1:]]
print("smallest nontrivial eigenvalue", min(gaps), "gap", eigs[1])
