"""Class functions on S_n and their decomposition into irreducible characters.

Everything is keyed by cycle type; no function here ever iterates over
individual group elements.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Mapping

from .errors import CapabilityError, DomainError
from .partitions import Partition, class_size, enumerate_partitions, merge

MAX_TABLE_N = 8


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Exact rational values on every cycle type of S_n."""

    n: int
    values: Mapping[Partition, Fraction]

    def __post_init__(self):
        vals = {Partition(mu): Fraction(v) for mu, v in self.values.items()}
        missing = set(enumerate_partitions(self.n)) - set(vals)
        if missing:
            raise DomainError(f"class function undefined on {sorted(missing)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[Partition], object]) -> "ClassFunction":
        return cls(n, {mu: fn(mu) for mu in enumerate_partitions(n)})

    @classmethod
    def constant(cls, n: int, value=1) -> "ClassFunction":
        return cls.from_callable(n, lambda mu: value)

    def __call__(self, mu) -> Fraction:
        return self.values[Partition(mu)]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        _same_degree(self, other)
        return ClassFunction(self.n, {mu: v + other(mu) for mu, v in self.values.items()})

    def __mul__(self, scalar) -> "ClassFunction":
        return ClassFunction(self.n, {mu: v * scalar for mu, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassFunction) and self.values == other.values


def _same_degree(f: ClassFunction, g: ClassFunction) -> None:
    if f.n != g.n:
        raise DomainError(f"class functions of different degree: {f.n} vs {g.n}")


def alpha_k(n: int, k: int) -> ClassFunction:
    """Number of k-cycles, as a class function."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    return ClassFunction.from_callable(n, lambda mu: mu.count(k))


def _beta_set(rho: tuple[int, ...]) -> tuple[int, ...]:
    r = len(rho)
    return tuple(rho[i] + (r - 1 - i) for i in range(r))


@lru_cache(maxsize=None)
def _mn(beads: tuple[int, ...], mu: tuple[int, ...]) -> int:
    # A rim hook of length L <-> moving one bead from x to x - L onto a free
    # position; the leg length is the number of beads jumped over.
    if not mu:
        return 1
    length, rest = mu[0], mu[1:]
    occupied = set(beads)
    total = 0
    for x in beads:
        y = x - length
        if y < 0 or y in occupied:
            continue
        height = sum(1 for b in beads if y < b < x)
        moved = tuple(sorted((b if b != x else y for b in beads), reverse=True))
        total += (-1) ** height * _mn(moved, rest)
    return total


def mn_character(rho: Partition, mu: Partition) -> int:
    """Irreducible character ``chi_rho`` at cycle type ``mu`` (Murnaghan-Nakayama)."""
    rho, mu = Partition(rho), Partition(mu)
    if rho.n != mu.n:
        raise DomainError(f"chi_{rho} evaluated at {mu}: sizes differ")
    return _mn(_beta_set(tuple(rho)), tuple(mu))


@lru_cache(maxsize=None)
def _table(n: int) -> dict[Partition, dict[Partition, int]]:
    parts = enumerate_partitions(n)
    return {rho: {mu: mn_character(rho, mu) for mu in parts} for rho in parts}


def character_table(n: int) -> dict[Partition, dict[Partition, int]]:
    """``table[rho][mu]``; cached per n, only for n <= 8."""
    if n > MAX_TABLE_N:
        raise CapabilityError(f"character tables are capped at n <= {MAX_TABLE_N}, got {n}")
    return _table(n)


def character(rho: Partition) -> ClassFunction:
    rho = Partition(rho)
    return ClassFunction.from_callable(rho.n, lambda mu: mn_character(rho, mu))


def inner_product(f: ClassFunction, g: ClassFunction) -> Fraction:
    _same_degree(f, g)
    total = sum(class_size(mu) * f(mu) * g(mu) for mu in f.values)
    return Fraction(total) / factorial(f.n)


@lru_cache(maxsize=None)
def _cycle_type_counts(m: int) -> tuple[tuple[Partition, int], ...]:
    if m == 0:
        return ((Partition(), 1),)
    return tuple((mu, class_size(mu)) for mu in enumerate_partitions(m))


def young_subgroup_cycle_types(lam: Partition) -> dict[Partition, int]:
    """How many elements of ``S_lam1 x S_lam2 x ...`` have each cycle type."""
    dist = {Partition(): 1}
    for part in Partition(lam):
        nxt: dict[Partition, int] = {}
        for mu, c in dist.items():
            for nu, d in _cycle_type_counts(part):
                key = merge(mu, nu)
                nxt[key] = nxt.get(key, 0) + c * d
        dist = nxt
    return dist


def psi_inner_product(f: ClassFunction, lam: Partition) -> Fraction:
    """Average of ``f`` over the Young subgroup of ``lam``."""
    lam = Partition(lam)
    if lam.n != f.n:
        raise DomainError(f"{lam} is not a partition of {f.n}")
    order = prod(factorial(p) for p in lam)
    total = sum(c * f(mu) for mu, c in young_subgroup_cycle_types(lam).items())
    return Fraction(total) / order


def decompose(f: ClassFunction) -> dict[Partition, Fraction]:
    """Nonzero coefficients of ``f`` on the irreducible characters."""
    table = character_table(f.n)
    out = {}
    for rho, row in table.items():
        c = sum(class_size(mu) * f(mu) * row[mu] for mu in row) / Fraction(factorial(f.n))
        if c:
            out[rho] = c
    return out


def reconstruct(coeffs: Mapping[Partition, Fraction], n: int) -> ClassFunction:
    table = character_table(n)
    return ClassFunction.from_callable(
        n, lambda mu: sum(c * table[rho][mu] for rho, c in coeffs.items())
    )


def decomposition_to_json(coeffs: Mapping[Partition, Fraction], n: int) -> str:
    order = {rho: i for i, rho in enumerate(enumerate_partitions(n))}
    rows = [
        {"partition": list(rho), "num": Fraction(c).numerator, "den": Fraction(c).denominator}
        for rho, c in sorted(coeffs.items(), key=lambda kv: order[Partition(kv[0])])
        if c
    ]
    return json.dumps(rows)


def a_rho_closed_form(n: int, k: int) -> dict[Partition, int]:
    """Coefficients ``a_rho`` with ``k * alpha_k = sum a_rho chi_rho``."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    a = {Partition([n]): 1}
    for i in range(0, 2 * k - n - 1):
        a[Partition([k - i - 1, n - k + 1] + [1] * i)] = (-1) ** (i + 1)
    for i in range(max(2 * k - n, 0), k):
        rho = Partition([n - k, k - i] + [1] * i)
        a[rho] = a.get(rho, 0) + (-1) ** i
    return {rho: c for rho, c in a.items() if c}
