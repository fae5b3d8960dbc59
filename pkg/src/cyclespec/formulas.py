"""Closed-form cycle statistics of the interchange process.

Spectra are floating point; the character coefficients they are combined
with are exact integers.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .characters import a_rho_closed_form
from .errors import DomainError
from .spectra import (
    DEFAULT_DIM_CAP,
    WeightedGraph,
    hook_eigenvalues_bacher,
    irrep_laplacian_eigenvalues,
    laplacian_eigenvalues,
    torus_laplacian_eigenvalues,
)

MAX_TREE_N = 9


@dataclass(frozen=True)
class TimeGrid:
    times: tuple[float, ...]

    def __post_init__(self):
        ts = tuple(float(t) for t in self.times)
        if not ts:
            raise DomainError("time grid is empty")
        if any(not math.isfinite(t) or t < 0 for t in ts):
            raise DomainError("times must be finite and nonnegative")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DomainError("times must be strictly increasing")
        object.__setattr__(self, "times", ts)

    def __iter__(self):
        return iter(self.times)

    def __len__(self):
        return len(self.times)

    def as_array(self) -> np.ndarray:
        return np.array(self.times)


def _positive_part(eigs: np.ndarray) -> np.ndarray:
    return np.asarray(eigs, dtype=float)[1:]


def log_prob_full_cycle_from_spectrum(eigs: Sequence[float], t) -> np.ndarray:
    """``log P(s_n(t) = 1)`` given all n Laplacian eigenvalues (zero included)."""
    eigs = np.asarray(eigs, dtype=float)
    n = len(eigs)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    pos = eigs[1:]
    with np.errstate(divide="ignore"):
        logs = np.log1p(-np.exp(-np.outer(t, pos)))
    return -math.log(n) + logs.sum(axis=1)


def prob_full_cycle_from_spectrum(eigs: Sequence[float], t):
    out = np.exp(log_prob_full_cycle_from_spectrum(eigs, t))
    return out if np.ndim(t) else float(out[0])


def prob_full_cycle(A: WeightedGraph, t):
    """Probability that the process is a single n-cycle at time ``t``."""
    if np.any(np.asarray(t) < 0):
        raise DomainError("t must be nonnegative")
    if A.n == 1:
        return np.ones(np.shape(t)) if np.ndim(t) else 1.0
    return prob_full_cycle_from_spectrum(laplacian_eigenvalues(A), t)


def _elementary_symmetric(xs: np.ndarray) -> np.ndarray:
    """``e_0..e_m`` of each column of ``xs`` (shape ``(m, T)``)."""
    m, T = xs.shape
    e = np.zeros((m + 1, T))
    e[0] = 1.0
    for r in range(m):
        e[1:r + 2] = e[1:r + 2] + xs[r] * e[0:r + 1]
    return e


def hook_traces(eigs: Sequence[float], t) -> np.ndarray:
    """``tr exp(-t U_[n-i,1^i](Delta))`` for ``i = 0..n-1``, shape ``(n, T)``.

    The Bacher eigenvalues are sums of i-subsets, so the trace is the i-th
    elementary symmetric polynomial of ``exp(-t lambda_j)``.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    pos = _positive_part(np.asarray(eigs))
    return _elementary_symmetric(np.exp(-np.outer(pos, t)))


def hook_sum_replay(A: WeightedGraph, t: float) -> float:
    """``(1/n) sum_i (-1)^i sum_{hook i eigenvalues} exp(-t mu)``, term by term."""
    eigs = _positive_part(laplacian_eigenvalues(A))
    total = 0.0
    for i in range(A.n):
        total += (-1) ** i * float(np.sum(np.exp(-t * hook_eigenvalues_bacher(eigs, i))))
    return total / A.n


class CycleExpectation:
    """Precomputed spectra for evaluating ``E s_k(t)`` on many times.

    Hook shapes use the elementary-symmetric Bacher shortcut unless
    ``use_bacher=False``; every other shape is diagonalised in Young's
    orthogonal form.
    """

    def __init__(self, A: WeightedGraph, k: int, use_bacher: bool = True,
                 dim_cap: int = DEFAULT_DIM_CAP):
        if not 1 <= k <= A.n:
            raise DomainError(f"need 1 <= k <= n, got n={A.n}, k={k}")
        self.graph = A
        self.k = k
        self.coeffs = a_rho_closed_form(A.n, k)
        self.graph_eigs = laplacian_eigenvalues(A)
        self.use_bacher = use_bacher
        self.spectra: dict = {}
        for rho in self.coeffs:
            if use_bacher and rho.is_hook():
                continue
            self.spectra[rho] = irrep_laplacian_eigenvalues(A, rho, dim_cap).eigenvalues

    def __call__(self, t):
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(ts < 0):
            raise DomainError("t must be nonnegative")
        total = np.zeros(len(ts))
        hooks = None
        for rho, a in self.coeffs.items():
            if rho in self.spectra:
                tr = np.exp(-np.outer(ts, self.spectra[rho])).sum(axis=1)
            else:
                if hooks is None:
                    hooks = hook_traces(self.graph_eigs, ts)
                tr = hooks[len(rho) - 1]
            total += a * tr
        out = total / self.k
        return out if np.ndim(t) else float(out[0])


def expected_k_cycles(A: WeightedGraph, k: int, t, use_bacher: bool = True):
    """Expected number of k-cycles at time ``t``."""
    return CycleExpectation(A, k, use_bacher)(t)


def chuk_bound(n: int, k: int, t, lambda1: float):
    """``(3^n / k) exp(-t lambda1)``, bounding ``|E s_k(t) - 1/k|``."""
    return 3.0**n / k * np.exp(-np.asarray(t, dtype=float) * lambda1)


def spanning_trees(A: WeightedGraph):
    """Yield every spanning tree of ``A`` as a tuple of edges ``(i, j, w)``."""
    n = A.n
    edges = A.edges
    if n == 1:
        yield ()
        return

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(start: int, chosen: list, parent: list):
        if len(chosen) == n - 1:
            yield tuple(chosen)
            return
        need = n - 1 - len(chosen)
        for idx in range(start, len(edges) - need + 1):
            i, j, w = edges[idx]
            ri, rj = find(parent, i), find(parent, j)
            if ri == rj:
                continue
            nxt = list(parent)
            nxt[ri] = rj
            chosen.append(edges[idx])
            yield from rec(idx + 1, chosen, nxt)
            chosen.pop()

    yield from rec(0, [], list(range(n)))


@dataclass(frozen=True)
class MatrixTreeResult:
    spectral_value: float
    tree_sum: float | None
    tree_count: int | None

    @property
    def brute_force_skipped(self) -> bool:
        return self.tree_sum is None


def matrix_tree_check(A: WeightedGraph, max_n: int = MAX_TREE_N) -> MatrixTreeResult:
    """Both sides of the weighted matrix-tree identity.

    The spectral side is ``(1/n) prod_{i>=1} lambda_i``; the other side
    sums ``prod_e w_e`` over enumerated spanning trees (skipped above
    ``max_n`` vertices).
    """
    eigs = laplacian_eigenvalues(A)
    spectral = float(np.prod(eigs[1:])) / A.n
    if A.n > max_n:
        return MatrixTreeResult(spectral, None, None)
    total = 0.0
    count = 0
    for tree in spanning_trees(A):
        total += math.prod(w for _, _, w in tree)
        count += 1
    return MatrixTreeResult(spectral, total, count)


def hypercube_prob_profile(d: int, times) -> np.ndarray:
    """``P(s_n(t) = 1)`` on ``{0,1}^d`` with unit weights, log-domain."""
    if not 1 <= d <= 40:
        raise DomainError("hypercube dimension must be in [1, 40]")
    ts = np.atleast_1d(np.asarray(list(times) if not np.isscalar(times) else times, dtype=float))
    logp = np.full(len(ts), -d * math.log(2.0))
    with np.errstate(divide="ignore"):
        for k in range(1, d + 1):
            logp += math.comb(d, k) * np.log1p(-np.exp(-2.0 * k * ts))
    return np.exp(logp)


INFINITE_TIME = math.inf


def equilibration_time_from_spectrum(eigs: Sequence[float], threshold_fraction: float = 0.5,
                                     rel_tol: float = 1e-6) -> float:
    """Smallest ``t`` with ``P(s_n(t) = 1) >= threshold_fraction / n``."""
    eigs = np.asarray(eigs, dtype=float)
    n = len(eigs)
    if n < 2:
        return 0.0
    lam1 = float(eigs[1])
    if lam1 <= 0:
        return INFINITE_TIME
    if not 0 < threshold_fraction < 1:
        raise DomainError("threshold_fraction must lie in (0, 1)")
    target = math.log(threshold_fraction / n)

    def f(t):
        return float(log_prob_full_cycle_from_spectrum(eigs, t)[0])

    lo, hi = 0.0, 64.0 / lam1
    while f(hi) < target:
        lo, hi = hi, 2.0 * hi
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def equilibration_time(A: WeightedGraph, threshold_fraction: float = 0.5) -> float:
    if not A.is_connected():
        return INFINITE_TIME
    return equilibration_time_from_spectrum(laplacian_eigenvalues(A), threshold_fraction)


def torus_equilibration(sides: Iterable[int], dim: int = 3,
                        threshold_fraction: float = 0.5) -> list[tuple[int, float]]:
    """``(m, T(m))`` for unit-weight tori with closed-form spectra."""
    return [
        (m, equilibration_time_from_spectrum(torus_laplacian_eigenvalues(m, dim), threshold_fraction))
        for m in sides
    ]


def emit(times: Sequence[float], values: Sequence[float], fmt: str = "json") -> str:
    """Render a profile as CSV ``t,value`` rows or JSON ``{times, values}``."""
    times = [float(t) for t in times]
    values = [float(v) for v in values]
    if fmt == "json":
        return json.dumps({"times": times, "values": values})
    if fmt == "csv":
        return "t,value\n" + "".join(f"{t!r},{v!r}\n" for t, v in zip(times, values))
    raise DomainError(f"unknown format {fmt!r}")
