"""Invariant checks run by ``cyclespec verify``.

Each check returns a :class:`CheckResult`; details are deterministic
strings so the whole table is reproducible byte for byte.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import characters as ch
from . import formulas as fm
from . import spectra as sp
from . import symfun as sf
from .partitions import (
    class_size,
    dimension,
    dominates,
    enumerate_partitions,
    hook_dimension_formula,
    hook_shape,
)

SEED = 20240601


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{self.name:<34} {'PASS' if self.passed else 'FAIL'}  {self.detail}"


def sample_graphs(n_max: int, seed: int = SEED, n_min: int = 2) -> list[tuple[str, sp.WeightedGraph]]:
    """Deterministic family of small test graphs with ``n_min <= n <= n_max``."""
    rng = np.random.default_rng(seed)
    out = []
    for n in range(n_min, n_max + 1):
        out.append((f"complete:{n}", sp.build_graph("complete", n=n)))
        out.append((f"path:{n}", sp.build_graph("path", n=n)))
        if n >= 3:
            out.append((f"cycle:{n}", sp.build_graph("cycle", n=n)))
        out.append((f"random:{n}:a", sp.random_weighted_graph(n, rng)))
        out.append((f"random:{n}:b", sp.random_weighted_graph(n, rng, density=0.4)))
    d = 1
    while 2**d <= n_max:
        if 2**d >= n_min:
            out.append((f"hypercube:{d}", sp.build_graph("hypercube", d=d)))
        d += 1
    return out


def check_partition_identities(n_max: int) -> CheckResult:
    worst = []
    for n in range(1, min(n_max, 10) + 1):
        parts = enumerate_partitions(n)
        if sum(class_size(mu) for mu in parts) != math.factorial(n):
            worst.append(f"class sizes n={n}")
        if sum(dimension(lam) ** 2 for lam in parts) != math.factorial(n):
            worst.append(f"burnside n={n}")
        for a in range(1, n + 1):
            for b in range(1, a + 1):
                c = n - a - b
                if c >= 0 and hook_dimension_formula(a, b, c) != dimension(hook_shape(a, b, c)):
                    worst.append(f"hook dim {(a, b, c)}")
        for x in parts:
            for y in parts:
                if dominates(x, y) and dominates(y, x) and x != y:
                    worst.append(f"antisymmetry {x} {y}")
    return CheckResult("partition identities", not worst, "; ".join(worst[:3]) or "ok")


def check_kostka(n_max: int) -> CheckResult:
    bad = []
    for n in range(1, min(n_max, 8) + 1):
        parts = enumerate_partitions(n)
        for a, mu in enumerate(parts):
            if sf.kostka(mu, mu) != 1:
                bad.append(f"K[{mu},{mu}]")
            for lam in parts[:a]:
                if sf.kostka(mu, lam) != 0:
                    bad.append(f"K[{mu},{lam}] != 0")
            for i in range(n):
                hook = hook_shape(n - i, 0, i)
                if sf.kostka(hook, mu) != math.comb(len(mu) - 1, i):
                    bad.append(f"hook K[{hook},{mu}]")
    return CheckResult("kostka triangularity + hooks", not bad, "; ".join(bad[:3]) or "ok")


def check_coefficient_table(n_max: int) -> CheckResult:
    bad = []
    cases = 0
    for n in range(1, min(n_max, 8) + 1):
        for k in range(1, n + 1):
            cases += 1
            closed = {rho: Fraction(c) for rho, c in ch.a_rho_closed_form(n, k).items()}
            brute = {rho: c * k for rho, c in ch.decompose(ch.alpha_k(n, k)).items()}
            pieri = dict(sf.derive_a_rho_via_pieri(n, k).coeffs)
            via_ch = dict((sf.monomial_to_schur(sf.ch_alpha_k(n, k)) * k).coeffs)
            if not (closed == brute == pieri == via_ch):
                bad.append(f"(n,k)=({n},{k})")
    return CheckResult("a_rho closed form = brute = pieri", not bad,
                       "; ".join(bad[:3]) or f"{cases} cases exact")


def check_character_orthogonality(n_max: int) -> CheckResult:
    bad = []
    for n in range(1, min(n_max, 7) + 1):
        table = ch.character_table(n)
        parts = list(table)
        fact = math.factorial(n)
        for r in parts:
            for s in parts:
                row = sum(class_size(mu) * table[r][mu] * table[s][mu] for mu in parts)
                if row != (fact if r == s else 0):
                    bad.append(f"rows {r},{s}")
        for mu in parts:
            for nu in parts:
                col = sum(table[r][mu] * table[r][nu] for r in parts)
                if col != (fact // class_size(mu) if mu == nu else 0):
                    bad.append(f"cols {mu},{nu}")
    return CheckResult("character orthogonality", not bad, "; ".join(bad[:3]) or "ok")


def check_youngs_rule(n_max: int) -> CheckResult:
    bad = []
    for n in range(1, min(n_max, 7) + 1):
        parts = enumerate_partitions(n)
        for k in range(1, n + 1):
            f = ch.alpha_k(n, k)
            chis = {mu: ch.inner_product(f, ch.character(mu)) for mu in parts}
            for lam in parts:
                lhs = ch.psi_inner_product(f, lam)
                rhs = sum(sf.kostka(mu, lam) * chis[mu] for mu in parts)
                if lhs != rhs or lhs != Fraction(sf.beta(lam, k), k):
                    bad.append(f"n={n} k={k} {lam}")
    return CheckResult("young's rule (psi averages)", not bad, "; ".join(bad[:3]) or "ok")


def check_eriksen_hultman(n_max: int) -> CheckResult:
    bad = []
    for n in range(2, min(n_max, 8) + 1):
        tables = {k: ch.a_rho_closed_form(n, k) for k in range(1, n + 1)}
        for rho in enumerate_partitions(n):
            if len(rho) < 2 or (len(rho) > 2 and rho[2] > 1):
                continue
            signs = [tables[k][rho] for k in tables if rho in tables[k]]
            if len(signs) != 2 or signs[0] != -signs[1]:
                bad.append(f"{rho}: {signs}")
    return CheckResult("two-k opposite-sign pattern", not bad, "; ".join(bad[:3]) or "ok")


def check_yor(n_max: int) -> CheckResult:
    worst = 0.0
    for n in range(2, min(n_max, 7) + 1):
        for rho in enumerate_partitions(n):
            d = dimension(rho)
            for i in range(n):
                for j in range(i + 1, n):
                    U = sp.yor_transposition(rho, i, j)
                    worst = max(worst, float(np.max(np.abs(U.T @ U - np.eye(d)))),
                                float(np.max(np.abs(U @ U - np.eye(d)))))
    return CheckResult("YOR orthogonal + involutive", worst <= 1e-10, f"max err {worst:.1e}")


def check_bacher(n_max: int, graphs=None) -> CheckResult:
    worst = 0.0
    for _, g in graphs or sample_graphs(min(n_max, 7)):
        eigs = sp.laplacian_eigenvalues(g)[1:]
        for i in range(g.n):
            yor = sp.irrep_laplacian_eigenvalues(g, hook_shape(g.n - i, 0, i)).eigenvalues
            bacher = sp.hook_eigenvalues_bacher(eigs, i)
            worst = max(worst, float(np.max(np.abs(yor - bacher))))
    return CheckResult("bacher hook eigenvalues", worst <= 1e-8, f"max err {worst:.1e}")


def check_permutation_modules(n_max: int, graphs=None) -> CheckResult:
    worst = 0.0
    for _, g in graphs or sample_graphs(min(n_max, 6)):
        parts = enumerate_partitions(g.n)
        irreps = {mu: sp.irrep_laplacian_eigenvalues(g, mu).eigenvalues for mu in parts}
        for lam in parts:
            direct = sp.permutation_module_spectrum(lam, g)
            pieces = [np.repeat(irreps[mu], sf.kostka(mu, lam)) for mu in parts]
            assembled = np.sort(np.concatenate(pieces))
            worst = max(worst, float(np.max(np.abs(direct - assembled))))
    return CheckResult("young's rule (spectra)", worst <= 1e-8, f"max err {worst:.1e}")


def check_clr(n_max: int, count: int = 50, seed: int = SEED) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    worst = math.inf
    for c in range(count):
        n = 3 + c % (min(n_max, 7) - 2) if n_max >= 4 else 3
        g = sp.random_weighted_graph(n, rng, density=0.5)
        gap = sp.laplacian_eigenvalues(g)[1]
        for rho in enumerate_partitions(n)[1:]:
            low = sp.irrep_laplacian_eigenvalues(g, rho).eigenvalues[0]
            worst = min(worst, float(low - gap))
    return CheckResult("spectral gap lower bound", worst >= -1e-8, f"min margin {worst:.1e}")


def check_product_formula(n_max: int, graphs=None, times=(0.1, 1.0, 10.0)) -> CheckResult:
    worst = 0.0
    for _, g in graphs or sample_graphs(min(n_max, 8)):
        exp_n = fm.CycleExpectation(g, g.n)
        for t in times:
            p = fm.prob_full_cycle(g, t)
            worst = max(worst, abs(p - fm.hook_sum_replay(g, t)), abs(p - exp_n(t)))
    return CheckResult("product formula = hook replay", worst <= 1e-10, f"max err {worst:.1e}")


def check_matrix_tree(n_max: int, graphs=None) -> CheckResult:
    worst = 0.0
    for _, g in graphs or sample_graphs(min(n_max, 6)):
        if not g.is_connected():
            continue
        res = fm.matrix_tree_check(g)
        worst = max(worst, abs(res.spectral_value - res.tree_sum) / res.tree_sum)
    return CheckResult("matrix-tree identity", worst <= 1e-9, f"max rel err {worst:.1e}")


CHECKS: list[Callable[[int], CheckResult]] = [
    check_partition_identities,
    check_kostka,
    check_coefficient_table,
    check_character_orthogonality,
    check_youngs_rule,
    check_eriksen_hultman,
    check_yor,
    check_bacher,
    check_permutation_modules,
    check_clr,
    check_product_formula,
    check_matrix_tree,
]


def run_all(n_max: int) -> list[CheckResult]:
    return [check(n_max) for check in CHECKS]
