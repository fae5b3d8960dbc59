"""Weighted graphs, their Laplacian spectra, and the Laplacian in each irrep.

The Laplacian of a weighted graph ``A`` is the group-ring element
``sum_{i<j} a_ij (1 - (i j))``. In the irreducible representation ``rho``
it becomes a symmetric positive semidefinite matrix, built here from
Young's orthogonal form.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import CapabilityError, DomainError
from .partitions import Partition, dimension, hook_shape

DEFAULT_DIM_CAP = 5000
DEFAULT_COSET_CAP = 5000
CLAMP_REL = 1e-10


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected graph on vertices ``0..n-1`` with nonnegative edge weights.

    ``weights`` maps ``(i, j)`` with ``i < j`` to a weight; absent pairs have
    weight zero.
    """

    n: int
    weights: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("a graph needs at least one vertex")
        clean: dict[tuple[int, int], float] = {}
        for (i, j), w in self.weights.items():
            i, j, w = int(i), int(j), float(w)
            if i == j:
                raise DomainError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise DomainError(f"edge ({i}, {j}) out of range for n={self.n}")
            if not math.isfinite(w) or w < 0:
                raise DomainError(f"edge ({i}, {j}) has invalid weight {w}")
            key = (min(i, j), max(i, j))
            if key in clean:
                raise DomainError(f"duplicate edge {key}")
            if w > 0:
                clean[key] = w
        object.__setattr__(self, "weights", dict(sorted(clean.items())))

    def weight(self, i: int, j: int) -> float:
        return self.weights.get((min(i, j), max(i, j)), 0.0)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [(i, j, w) for (i, j), w in self.weights.items()]

    @property
    def total_weight(self) -> float:
        return float(sum(self.weights.values()))

    def laplacian(self) -> np.ndarray:
        L = np.zeros((self.n, self.n))
        for (i, j), w in self.weights.items():
            L[i, j] -= w
            L[j, i] -= w
            L[i, i] += w
            L[j, j] += w
        return L

    def degree(self, v: int) -> int:
        return sum(1 for (i, j) in self.weights if v in (i, j))

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for i, j in self.weights:
            adj[i].append(j)
            adj[j].append(i)
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def to_edge_list(self) -> str:
        lines = [f"n {self.n}"]
        lines += [f"{i} {j} {w!r}" for i, j, w in self.edges]
        return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> WeightedGraph:
    """Parse ``i j w`` lines; ``#`` starts a comment, ``n <count>`` may lead."""
    n = None
    weights: dict[tuple[int, int], float] = {}
    seen_edge = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if seen_edge or n is not None or len(tokens) != 2:
                raise DomainError(f"line {lineno}: header 'n <count>' must come first")
            n = int(tokens[1])
            continue
        if len(tokens) != 3:
            raise DomainError(f"line {lineno}: expected 'i j w', got {raw!r}")
        i, j, w = int(tokens[0]), int(tokens[1]), float(tokens[2])
        key = (min(i, j), max(i, j))
        if key in weights:
            raise DomainError(f"line {lineno}: duplicate edge {key}")
        weights[key] = w
        seen_edge = True
    if n is None:
        if not weights:
            raise DomainError("empty edge list without an 'n' header")
        n = 1 + max(max(k) for k in weights)
    return WeightedGraph(n, weights)


def read_graph(path: str | Path) -> WeightedGraph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def _torus_index(coords: Iterable[int], side: int) -> int:
    idx = 0
    for c in coords:
        idx = idx * side + c
    return idx


def build_graph(kind: str, **params) -> WeightedGraph:
    """Standard graph families.

    kinds: ``complete(n, w=1)``, ``hypercube(d, w=1)``, ``torus(side, dim, w=1)``,
    ``path(n, w=1)``, ``cycle(n, w=1)``, ``from_edges(n, edges)``.
    """
    w = float(params.pop("w", 1.0))
    try:
        if kind == "complete":
            n = int(params.pop("n"))
            weights = {(i, j): w for i, j in combinations(range(n), 2)}
        elif kind == "path":
            n = int(params.pop("n"))
            weights = {(i, i + 1): w for i in range(n - 1)}
        elif kind == "cycle":
            n = int(params.pop("n"))
            if n < 3:
                raise DomainError("a cycle needs at least 3 vertices")
            weights = {(i, (i + 1) % n): w for i in range(n)}
        elif kind == "hypercube":
            d = int(params.pop("d"))
            if d < 1:
                raise DomainError("hypercube dimension must be >= 1")
            n = 2**d
            weights = {(v, v ^ (1 << b)): w for v in range(n) for b in range(d) if not v >> b & 1}
        elif kind == "torus":
            side, dim = int(params.pop("side")), int(params.pop("dim"))
            if side < 3 or dim < 1:
                raise DomainError("torus needs side >= 3 and dim >= 1")
            n = side**dim
            weights = {}
            for coords in product(range(side), repeat=dim):
                u = _torus_index(coords, side)
                for axis in range(dim):
                    nb = list(coords)
                    nb[axis] = (nb[axis] + 1) % side
                    v = _torus_index(nb, side)
                    weights[(min(u, v), max(u, v))] = w
        elif kind == "from_edges":
            n = int(params.pop("n"))
            weights = {}
            for i, j, wij in params.pop("edges"):
                key = (min(i, j), max(i, j))
                if key in weights:
                    raise DomainError(f"duplicate edge {key}")
                weights[key] = wij
        else:
            raise DomainError(f"unknown graph kind {kind!r}")
    except KeyError as exc:
        raise DomainError(f"{kind}: missing parameter {exc}") from None
    if params:
        raise DomainError(f"{kind}: unexpected parameters {sorted(params)}")
    if n < 1:
        raise DomainError(f"{kind}: need at least one vertex")
    return WeightedGraph(n, weights)


def random_weighted_graph(n: int, rng: np.random.Generator, density: float = 1.0,
                          low: float = 0.1, high: float = 2.0) -> WeightedGraph:
    """Random weights on a random spanning-connected edge set."""
    weights = {}
    # a random spanning tree keeps the graph connected
    order = rng.permutation(n)
    for a in range(1, n):
        b = int(rng.integers(a))
        i, j = int(order[a]), int(order[b])
        weights[(min(i, j), max(i, j))] = float(rng.uniform(low, high))
    for i, j in combinations(range(n), 2):
        if (i, j) not in weights and rng.random() < density:
            weights[(i, j)] = float(rng.uniform(low, high))
    return WeightedGraph(n, weights)


# -- symmetric eigensolvers ------------------------------------------------

def _clamp(vals: np.ndarray) -> np.ndarray:
    vals = np.sort(vals)
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    vals[vals < CLAMP_REL * scale] = 0.0
    return vals


def jacobi_eigenvalues(M: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Cyclic Jacobi rotations for a real symmetric matrix. Unsorted eigenvalues."""
    A = np.array(M, dtype=float, copy=True)
    d = A.shape[0]
    if d <= 1:
        return np.diag(A).copy()
    scale = max(float(np.linalg.norm(np.diag(A))), 1e-300)
    for _ in range(max_sweeps):
        off = math.sqrt(max(float(np.sum(A * A) - np.sum(np.diag(A) ** 2)), 0.0))
        if off < tol * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.diag(A).copy()


def symmetric_eigenvalues(M: np.ndarray, method: str = "lapack") -> np.ndarray:
    """Sorted eigenvalues of a symmetric PSD matrix, tiny values clamped to 0."""
    M = np.asarray(M, dtype=float)
    if method == "lapack":
        vals = np.linalg.eigvalsh(M)
    elif method == "jacobi":
        vals = jacobi_eigenvalues(M)
    else:
        raise DomainError(f"unknown eigensolver {method!r}")
    return _clamp(vals)


def laplacian_eigenvalues(A: WeightedGraph, method: str = "lapack") -> np.ndarray:
    """All n Laplacian eigenvalues, ascending; the first is exactly 0."""
    vals = symmetric_eigenvalues(A.laplacian(), method)
    vals[0] = 0.0
    return vals


def hypercube_laplacian_eigenvalues(d: int, w: float = 1.0) -> np.ndarray:
    vals = [2.0 * w * k for k in range(d + 1) for _ in range(math.comb(d, k))]
    return np.array(vals)


def torus_laplacian_eigenvalues(side: int, dim: int, w: float = 1.0) -> np.ndarray:
    """Closed-form spectrum of the discrete torus ``(Z/side)^dim``."""
    one_d = 2.0 * w * (1.0 - np.cos(2.0 * np.pi * np.arange(side) / side))
    grids = np.meshgrid(*([one_d] * dim), indexing="ij")
    vals = np.sort(np.sum(grids, axis=0).ravel())
    vals[0] = 0.0
    return vals


# -- Young's orthogonal form -----------------------------------------------

@lru_cache(maxsize=None)
def standard_tableaux(rho: Partition) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Standard tableaux of shape ``rho`` as cell positions of entries 0..n-1.

    Ordered lexicographically by row-reading word.
    """
    rho = Partition(rho)
    n = rho.n
    found = []

    def grow(filled: list[int], cells: list[tuple[int, int]]):
        if len(cells) == n:
            found.append(tuple(cells))
            return
        for r in range(len(rho)):
            c = filled[r]
            if c < rho[r] and (r == 0 or filled[r - 1] > c):
                filled[r] += 1
                cells.append((r, c))
                grow(filled, cells)
                cells.pop()
                filled[r] -= 1

    grow([0] * len(rho), [])

    def reading_word(cells):
        grid = [[0] * p for p in rho]
        for v, (r, c) in enumerate(cells):
            grid[r][c] = v
        return tuple(v for row in grid for v in row)

    found.sort(key=reading_word)
    return tuple(found)


@dataclass(frozen=True)
class AdjacentYOR:
    """Sparse form of ``U_rho((k k+1))``: ``U e_t = diag[t] e_t + off[t] e_partner[t]``."""

    diag: np.ndarray
    off: np.ndarray
    partner: np.ndarray

    def dense(self) -> np.ndarray:
        d = len(self.diag)
        U = np.diag(self.diag)
        U[np.arange(d), self.partner] += self.off
        return U

    def left(self, M: np.ndarray) -> np.ndarray:
        return self.diag[:, None] * M + self.off[:, None] * M[self.partner]

    def right(self, M: np.ndarray) -> np.ndarray:
        return M * self.diag[None, :] + M[:, self.partner] * self.off[None, :]


@lru_cache(maxsize=None)
def yor_adjacent(rho: Partition, k: int) -> AdjacentYOR:
    """Young's orthogonal form of the adjacent transposition ``(k, k+1)``."""
    rho = Partition(rho)
    if not 0 <= k < rho.n - 1:
        raise DomainError(f"adjacent transposition ({k}, {k + 1}) out of range")
    tabs = standard_tableaux(rho)
    index = {t: i for i, t in enumerate(tabs)}
    d = len(tabs)
    diag = np.empty(d)
    off = np.zeros(d)
    partner = np.arange(d)
    for i, cells in enumerate(tabs):
        (r1, c1), (r2, c2) = cells[k], cells[k + 1]
        axial = (c2 - r2) - (c1 - r1)
        diag[i] = 1.0 / axial
        if abs(axial) > 1:
            swapped = list(cells)
            swapped[k], swapped[k + 1] = swapped[k + 1], swapped[k]
            partner[i] = index[tuple(swapped)]
            off[i] = math.sqrt(1.0 - 1.0 / axial**2)
    return AdjacentYOR(diag, off, partner)


def _check_dim(rho: Partition, cap: int) -> int:
    d = dimension(rho)
    if d > cap:
        raise CapabilityError(f"dim {rho} = {d} exceeds the irrep dimension cap {cap}")
    return d


def yor_transposition(rho: Partition, i: int, j: int) -> np.ndarray:
    """Dense ``U_rho((i j))`` as the conjugate chain of adjacent factors."""
    rho = Partition(rho)
    i, j = min(i, j), max(i, j)
    if i == j or not 0 <= i < j < rho.n:
        raise DomainError(f"invalid transposition ({i} {j})")
    U = yor_adjacent(rho, i).dense()
    for m in range(i + 1, j):
        s = yor_adjacent(rho, m)
        U = s.right(s.left(U))
    return U


def irrep_laplacian(A: WeightedGraph, rho: Partition, dim_cap: int = DEFAULT_DIM_CAP) -> np.ndarray:
    """``U_rho(Delta_A) = sum_{i<j} a_ij (I - U_rho((i j)))``."""
    rho = Partition(rho)
    if rho.n != A.n:
        raise DomainError(f"{rho} is not a partition of n={A.n}")
    d = _check_dim(rho, dim_cap)
    M = np.eye(d) * A.total_weight
    if A.n == 1:
        return M
    for i in range(A.n - 1):
        U = yor_adjacent(rho, i).dense()
        for j in range(i + 1, A.n):
            if j > i + 1:
                s = yor_adjacent(rho, j - 1)
                U = s.right(s.left(U))
            w = A.weight(i, j)
            if w:
                M -= w * U
    return 0.5 * (M + M.T)


@dataclass(frozen=True, eq=False)
class IrrepSpectrum:
    rho: Partition
    eigenvalues: np.ndarray

    def to_json(self) -> str:
        return json.dumps([float(x) for x in self.eigenvalues])


def irrep_laplacian_eigenvalues(A: WeightedGraph, rho: Partition,
                                dim_cap: int = DEFAULT_DIM_CAP,
                                method: str = "lapack") -> IrrepSpectrum:
    rho = Partition(rho)
    M = irrep_laplacian(A, rho, dim_cap)
    return IrrepSpectrum(rho, symmetric_eigenvalues(M, method))


def hook_eigenvalues_bacher(graph_eigs: Iterable[float], i: int) -> np.ndarray:
    """All sums of ``i`` distinct nonzero-index graph eigenvalues, sorted.

    ``graph_eigs`` holds ``lambda_1..lambda_{n-1}`` (the zero eigenvalue
    already dropped). These are the eigenvalues in the hook ``[n-i, 1^i]``.
    """
    eigs = list(graph_eigs)
    if not 0 <= i <= len(eigs):
        raise DomainError(f"hook index {i} out of range for {len(eigs)} eigenvalues")
    return np.sort(np.array([sum(c) for c in combinations(eigs, i)], dtype=float))


# -- permutation modules ---------------------------------------------------

def _colourings(lam: Partition) -> list[tuple[int, ...]]:
    n = lam.n
    out = []

    def rec(pos: int, left: list[int], acc: list[int]):
        if pos == n:
            out.append(tuple(acc))
            return
        for colour, cnt in enumerate(left):
            if cnt:
                left[colour] -= 1
                acc.append(colour)
                rec(pos + 1, left, acc)
                acc.pop()
                left[colour] += 1

    rec(0, list(lam), [])
    return out


def permutation_module_laplacian(lam: Partition, A: WeightedGraph,
                                 coset_cap: int = DEFAULT_COSET_CAP) -> np.ndarray:
    """Generator of the coloured exclusion process with colour counts ``lam``."""
    lam = Partition(lam)
    if lam.n != A.n:
        raise DomainError(f"{lam} is not a partition of n={A.n}")
    size = math.factorial(lam.n)
    for p in lam:
        size //= math.factorial(p)
    if size > coset_cap:
        raise CapabilityError(f"V_{lam} has {size} cosets, above the cap {coset_cap}")
    states = _colourings(lam)
    index = {s: k for k, s in enumerate(states)}
    M = np.zeros((size, size))
    for i, j, w in A.edges:
        for k, s in enumerate(states):
            if s[i] == s[j]:
                continue
            t = list(s)
            t[i], t[j] = t[j], t[i]
            M[k, k] += w
            M[k, index[tuple(t)]] -= w
    return M


def permutation_module_spectrum(lam: Partition, A: WeightedGraph,
                                coset_cap: int = DEFAULT_COSET_CAP) -> np.ndarray:
    return symmetric_eigenvalues(permutation_module_laplacian(lam, A, coset_cap))


# -- isospectral pairs -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class IsospectralPair:
    first: WeightedGraph
    second: WeightedGraph
    attempts: int
    seed: int
    spectrum_gap: float
    irrep_gap: float


def _graph_from_laplacian(L: np.ndarray) -> WeightedGraph:
    n = L.shape[0]
    return WeightedGraph(n, {(i, j): -L[i, j] for i, j in combinations(range(n), 2)})


def isospectral_pair_search(n: int = 4, seed: int = 0, attempts: int = 10**6,
                            rotation_scale: float = 0.3) -> IsospectralPair | None:
    """Search for isospectral weighted graphs that differ in the ``[2, 2]`` irrep.

    Each attempt draws generic weights for ``A1`` and conjugates its Laplacian
    by a random orthogonal matrix fixing the all-ones vector (a Cayley
    transform of a skew matrix killing that vector). Candidates with a
    positive off-diagonal entry are rejected. Returns ``None`` if nothing
    is found.
    """
    if n != 4:
        raise DomainError("the isospectral search is defined for n = 4")
    rng = np.random.default_rng(seed)
    ones = np.ones(n) / math.sqrt(n)
    proj = np.eye(n) - np.outer(ones, ones)
    rho = hook_shape(2, 2)
    for attempt in range(1, attempts + 1):
        weights = {(i, j): float(rng.uniform(0.5, 1.5)) for i, j in combinations(range(n), 2)}
        A1 = WeightedGraph(n, weights)
        K = rng.normal(size=(n, n)) * rotation_scale
        S = proj @ (K - K.T) @ proj
        Q = np.linalg.solve(np.eye(n) - S, np.eye(n) + S)
        L2 = Q @ A1.laplacian() @ Q.T
        L2 = 0.5 * (L2 + L2.T)
        off = L2[~np.eye(n, dtype=bool)]
        if np.any(off > 0):
            continue
        A2 = _graph_from_laplacian(L2)
        spec_gap = float(np.max(np.abs(laplacian_eigenvalues(A1) - laplacian_eigenvalues(A2))))
        if spec_gap > 1e-9:
            continue
        e1 = irrep_laplacian_eigenvalues(A1, rho).eigenvalues
        e2 = irrep_laplacian_eigenvalues(A2, rho).eigenvalues
        irrep_gap = float(np.max(np.abs(e1 - e2)))
        if irrep_gap > 1e-3:
            return IsospectralPair(A1, A2, attempt, seed, spec_gap, irrep_gap)
    return None
