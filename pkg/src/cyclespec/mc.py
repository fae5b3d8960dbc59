"""Event-driven Monte Carlo of the interchange process.

One aggregate exponential clock of rate ``W = sum a_ij`` drives the
process; each ring picks edge ``{i, j}`` with probability ``a_ij / W``
from an alias table and swaps the two marbles.

Random numbers come from a counter-based SplitMix64 construction.
Replica ``r`` has key ``mix(mix(master_seed) + (r + 1) * GAMMA)``; draw
number ``c`` of that replica is ``mix(key + (c + 1) * GAMMA)``. Event
``e`` (0-based) of a replica uses draws ``2e`` (waiting time) and
``2e + 1`` (edge). A replica's trajectory therefore depends only on
``(master_seed, r)``, never on batching or thread count, and all
cross-replica reductions are integer sums.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError
from .formulas import TimeGrid
from .spectra import WeightedGraph

GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
CHUNK = 1 << 16


def _mix(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def replica_keys(master_seed: int, replicas: np.ndarray) -> np.ndarray:
    base = _mix(np.array([master_seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64))
    r = np.asarray(replicas, dtype=np.uint64) + np.uint64(1)
    return _mix(base + r * GAMMA)


def uniforms(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Uniform doubles in (0, 1) for draw ``counters`` of each key."""
    bits = _mix(keys + (np.asarray(counters, dtype=np.uint64) + np.uint64(1)) * GAMMA)
    return ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


@dataclass(frozen=True, eq=False)
class AliasTable:
    prob: np.ndarray
    alias: np.ndarray

    @classmethod
    def build(cls, weights: Sequence[float]) -> "AliasTable":
        """Vose's alias method."""
        w = np.asarray(weights, dtype=float)
        m = len(w)
        scaled = w * m / w.sum()
        prob = np.zeros(m)
        alias = np.arange(m)
        small = [i for i in range(m) if scaled[i] < 1.0]
        large = [i for i in range(m) if scaled[i] >= 1.0]
        while small and large:
            s, l = small.pop(), large.pop()
            prob[s] = scaled[s]
            alias[s] = l
            scaled[l] = scaled[l] + scaled[s] - 1.0
            (small if scaled[l] < 1.0 else large).append(l)
        for i in small + large:
            prob[i] = 1.0
        return cls(prob, alias)

    def sample(self, u: np.ndarray) -> np.ndarray:
        m = len(self.prob)
        x = u * m
        idx = np.minimum(x.astype(np.int64), m - 1)
        frac = x - idx
        return np.where(frac < self.prob[idx], idx, self.alias[idx])


def cycle_lengths(perms: np.ndarray) -> np.ndarray:
    """Length of the cycle through each position, row by row."""
    perms = np.atleast_2d(perms)
    R, n = perms.shape
    ident = np.arange(n)
    lengths = np.zeros((R, n), dtype=np.int64)
    cur = perms.copy()
    for m in range(1, n + 1):
        hit = (cur == ident) & (lengths == 0)
        lengths[hit] = m
        if m < n:
            cur = np.take_along_axis(perms, cur, axis=1)
    return lengths


@dataclass(frozen=True)
class CycleObservables:
    counts: tuple[int, ...]  # counts[k-1] = number of k-cycles
    origin_length: int
    total_cycles: int


def cycle_observables(perm: Sequence[int]) -> CycleObservables:
    """Cycle counts ``s_1..s_n``, the cycle length through 0, and the cycle count."""
    perm = list(perm)
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise DomainError(f"not a permutation of 0..{n - 1}: {perm}")
    seen = [False] * n
    counts = [0] * n
    origin = 0
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        counts[length - 1] += 1
        if start == 0:
            origin = length
    return CycleObservables(tuple(counts), origin, sum(counts))


OBSERVABLE_KINDS = ("full_cycle", "origin_cycle_length", "total_cycles", "magnetization_weight")


@dataclass(frozen=True, eq=False)
class SimConfig:
    graph: WeightedGraph
    checkpoints: TimeGrid
    replicas: int
    master_seed: int
    observables: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.checkpoints, TimeGrid):
            object.__setattr__(self, "checkpoints", TimeGrid(tuple(self.checkpoints)))
        if self.replicas < 1:
            raise DomainError("replicas must be >= 1")
        if self.graph.total_weight <= 0:
            raise DomainError("total jump rate is zero")
        obs = tuple(self.observables) or default_observables(self.graph.n)
        valid = set(default_observables(self.graph.n))
        bad = [o for o in obs if o not in valid]
        if bad:
            raise DomainError(f"unknown observables {bad}")
        object.__setattr__(self, "observables", obs)

    def echo(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [[i, j, w] for i, j, w in self.graph.edges],
            "checkpoints": list(self.checkpoints.times),
            "replicas": self.replicas,
            "master_seed": self.master_seed,
            "observables": list(self.observables),
        }


def default_observables(n: int) -> tuple[str, ...]:
    return tuple(f"s_{k}" for k in range(1, n + 1)) + OBSERVABLE_KINDS


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    replicas: int

    def z(self, exact: float) -> float:
        if self.stderr == 0:
            return 0.0 if self.mean == exact else math.copysign(math.inf, self.mean - exact)
        return (self.mean - exact) / self.stderr


@dataclass(eq=False)
class _Tally:
    """Integer sufficient statistics for one checkpoint."""

    n: int
    sums: np.ndarray  # per k: sum of s_k
    sumsq: np.ndarray
    joint: np.ndarray  # joint[c, l]: replicas with c cycles and origin length l

    @classmethod
    def empty(cls, n: int) -> "_Tally":
        return cls(n, np.zeros(n, np.int64), np.zeros(n, np.int64),
                   np.zeros((n + 1, n + 1), np.int64))

    def add(self, other: "_Tally") -> "_Tally":
        return _Tally(self.n, self.sums + other.sums, self.sumsq + other.sumsq,
                      self.joint + other.joint)


def _tally(perms: np.ndarray) -> _Tally:
    R, n = perms.shape
    lengths = cycle_lengths(perms)
    counts = np.stack([(lengths == k).sum(axis=1) // k for k in range(1, n + 1)], axis=1)
    total = counts.sum(axis=1)
    origin = lengths[:, 0]
    joint = np.bincount(total * (n + 1) + origin, minlength=(n + 1) ** 2).reshape(n + 1, n + 1)
    return _Tally(n, counts.sum(axis=0), (counts * counts).sum(axis=0), joint.astype(np.int64))


def _run_chunk(graph: WeightedGraph, table: AliasTable, times: tuple[float, ...],
               seed: int, start: int, stop: int, keep_states: bool = False):
    n = graph.n
    R = stop - start
    edges = graph.edges
    ei = np.array([e[0] for e in edges])
    ej = np.array([e[1] for e in edges])
    rate = graph.total_weight
    keys = replica_keys(seed, np.arange(start, stop))
    perm = np.tile(np.arange(n, dtype=np.int64), (R, 1))
    events = np.zeros(R, dtype=np.uint64)
    clock = -np.log(uniforms(keys, 2 * events)) / rate
    edge = table.sample(uniforms(keys, 2 * events + np.uint64(1)))
    tallies, states = [], []
    for t in times:
        while True:
            idx = np.flatnonzero(clock <= t)
            if idx.size == 0:
                break
            a, b = ei[edge[idx]], ej[edge[idx]]
            pa = perm[idx, a]
            perm[idx, a] = perm[idx, b]
            perm[idx, b] = pa
            events[idx] += np.uint64(1)
            k = keys[idx]
            c = events[idx] * np.uint64(2)
            clock[idx] += -np.log(uniforms(k, c)) / rate
            edge[idx] = table.sample(uniforms(k, c + np.uint64(1)))
        tallies.append(_tally(perm))
        if keep_states:
            states.append(perm.copy())
    return tallies, states


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("CYCLESPEC_THREADS", "1") or 1)
    return max(1, threads)


def _alias(graph: WeightedGraph) -> AliasTable:
    return AliasTable.build([w for _, _, w in graph.edges])


def simulate_states(graph: WeightedGraph, checkpoints: Sequence[float], replicas: int,
                    master_seed: int, first_replica: int = 0) -> list[np.ndarray]:
    """Replica permutations at each checkpoint, shape ``(replicas, n)`` each."""
    cfg = SimConfig(graph, TimeGrid(tuple(checkpoints)), replicas, master_seed)
    _, states = _run_chunk(graph, _alias(graph), cfg.checkpoints.times, master_seed,
                           first_replica, first_replica + replicas, keep_states=True)
    return states


def simulate_replica(graph: WeightedGraph, checkpoints: Sequence[float], master_seed: int,
                     replica: int) -> list[list[int]]:
    """Scalar, event-by-event reference run of a single replica."""
    table = _alias(graph)
    edges = graph.edges
    rate = graph.total_weight
    key = replica_keys(master_seed, np.array([replica]))
    perm = list(range(graph.n))
    out = []
    e = 0

    def draw(c):
        return uniforms(key, np.array([c], dtype=np.uint64))

    clock = float(-np.log(draw(0))[0] / rate)
    pick = int(table.sample(draw(1))[0])
    for t in checkpoints:
        while clock <= t:
            i, j, _ = edges[pick]
            perm[i], perm[j] = perm[j], perm[i]
            e += 1
            clock += float(-np.log(draw(2 * e))[0] / rate)
            pick = int(table.sample(draw(2 * e + 1))[0])
        out.append(list(perm))
    return out


@dataclass(eq=False)
class SimReport:
    config: SimConfig
    estimates: dict[tuple[str, float], Estimate]
    tallies: list[_Tally] = field(repr=False)

    def __getitem__(self, key: tuple[str, float]) -> Estimate:
        return self.estimates[key]

    def to_json(self) -> str:
        rows = [
            {"observable": obs, "t": t, "mean": e.mean, "stderr": e.stderr, "replicas": e.replicas}
            for (obs, t), e in self.estimates.items()
        ]
        return json.dumps({"config": self.config.echo(), "seed": self.config.master_seed,
                           "estimates": rows})

    def to_csv(self) -> str:
        lines = ["observable,t,mean,stderr,replicas"]
        for (obs, t), e in self.estimates.items():
            lines.append(f"{obs},{t!r},{e.mean!r},{e.stderr!r},{e.replicas}")
        return "\n".join(lines) + "\n"


def _estimate(total: float, total_sq: float, R: int) -> Estimate:
    mean = total / R
    if R < 2:
        return Estimate(mean, 0.0, R)
    var = max(total_sq - R * mean * mean, 0.0) / (R - 1)
    return Estimate(mean, math.sqrt(var / R), R)


def _summarise(cfg: SimConfig, tallies: list[_Tally]) -> dict[tuple[str, float], Estimate]:
    n = cfg.graph.n
    R = cfg.replicas
    out = {}
    cyc = np.arange(n + 1)
    for t, tal in zip(cfg.checkpoints.times, tallies):
        by_cycles = tal.joint.sum(axis=1)
        by_origin = tal.joint.sum(axis=0)
        for obs in cfg.observables:
            if obs.startswith("s_"):
                k = int(obs[2:])
                est = _estimate(float(tal.sums[k - 1]), float(tal.sumsq[k - 1]), R)
            elif obs == "full_cycle":
                hits = float(tal.sums[n - 1])
                est = _estimate(hits, hits, R)
            elif obs == "origin_cycle_length":
                est = _estimate(float(by_origin @ cyc), float(by_origin @ cyc**2), R)
            elif obs == "total_cycles":
                est = _estimate(float(by_cycles @ cyc), float(by_cycles @ cyc**2), R)
            else:  # magnetization_weight = 2 ** total_cycles
                w = np.array([math.ldexp(1.0, c) for c in range(n + 1)])
                est = _estimate(float(by_cycles @ w), float(by_cycles @ (w * w)), R)
            out[(obs, t)] = est
    return out


def run_tallies(cfg: SimConfig, threads: int | None = None) -> list[_Tally]:
    table = _alias(cfg.graph)
    bounds = [(s, min(s + CHUNK, cfg.replicas)) for s in range(0, cfg.replicas, CHUNK)]

    def work(b):
        return _run_chunk(cfg.graph, table, cfg.checkpoints.times, cfg.master_seed, *b)[0]

    workers = min(_threads(threads), len(bounds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    totals = [_Tally.empty(cfg.graph.n) for _ in cfg.checkpoints.times]
    for part in parts:
        totals = [a.add(b) for a, b in zip(totals, part)]
    return totals


def run_simulation(config: SimConfig, threads: int | None = None) -> SimReport:
    tallies = run_tallies(config, threads)
    return SimReport(config, _summarise(config, tallies), tallies)


@dataclass(frozen=True)
class MagnetizationEstimate:
    t: float
    ratio: float | None  # None when the denominator estimate is zero
    ratio_stderr: float | None
    log2_denominator: float | None
    unweighted: float  # P(c_t(0) > threshold)
    unweighted_stderr: float

    @property
    def indeterminate(self) -> bool:
        return self.ratio is None


def magnetization_from_joint(joint: np.ndarray, threshold_n: int, t: float) -> MagnetizationEstimate:
    """Weighted long-cycle ratio ``(1/2) E[1{c(0) > m} 2^C] / E[2^C]``.

    ``joint[c, l]`` counts replicas with ``c`` cycles whose origin cycle has
    length ``l``. Weights are renormalised by ``2^max(c)``; the error bar
    uses the delta method on the (numerator, denominator) pair.
    """
    joint = np.asarray(joint, dtype=np.int64)
    R = int(joint.sum())
    lengths = np.arange(joint.shape[1])
    long_mask = lengths > threshold_n
    hits = int(joint[:, long_mask].sum())
    p = hits / R
    p_se = math.sqrt(p * (1 - p) / (R - 1)) if R > 1 else 0.0
    by_cycles = joint.sum(axis=1)
    present = np.flatnonzero(by_cycles)
    if present.size == 0:
        return MagnetizationEstimate(t, None, None, None, p, p_se)
    cmax = int(present.max())
    w = np.array([math.ldexp(1.0, c - cmax) for c in range(joint.shape[0])])
    long_by_cycles = joint[:, long_mask].sum(axis=1)
    den = float(by_cycles @ w) / R
    num = float(long_by_cycles @ w) / R
    if den == 0:
        return MagnetizationEstimate(t, None, None, None, p, p_se)
    r = num / den
    # z_i = y_i - r w_i with y_i = 1{long} w_i
    short_by_cycles = by_cycles - long_by_cycles
    zsq = float(long_by_cycles @ ((1 - r) * w) ** 2 + short_by_cycles @ (r * w) ** 2)
    var_z = zsq / (R - 1) if R > 1 else 0.0
    ratio_se = 0.5 * math.sqrt(var_z / R) / den
    return MagnetizationEstimate(t, 0.5 * r, ratio_se, cmax + math.log2(den), p, p_se)


def magnetization_estimator(config: SimConfig, threshold_n: int,
                            threads: int | None = None) -> list[MagnetizationEstimate]:
    if not 0 <= threshold_n < config.graph.n:
        raise DomainError("threshold must satisfy 0 <= threshold < n")
    tallies = run_tallies(config, threads)
    return [magnetization_from_joint(tal.joint, threshold_n, t)
            for t, tal in zip(config.checkpoints.times, tallies)]
