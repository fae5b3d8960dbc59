"""Symmetric functions of degree n, stored as partition-indexed coefficients.

Two bases are supported: monomial ``M_lambda`` and Schur ``S_mu``. The
number of variables is fixed to the degree, so no basis element of degree
n vanishes. All coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import DomainError
from .partitions import Partition, enumerate_partitions, hook_shape


def _clean(n: int, coeffs: Mapping) -> dict[Partition, Fraction]:
    out = {}
    for lam, c in coeffs.items():
        lam = Partition(lam)
        if lam.n != n:
            raise DomainError(f"{lam} is not a partition of {n}")
        c = Fraction(c)
        if c:
            out[lam] = out.get(lam, Fraction(0)) + c
    return {lam: c for lam, c in out.items() if c}


@dataclass(frozen=True)
class _Expansion:
    n: int
    coeffs: dict = field(default_factory=dict)

    basis = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.n, self.coeffs))

    def __getitem__(self, lam) -> Fraction:
        return self.coeffs.get(Partition(lam), Fraction(0))

    def __add__(self, other):
        self._check(other)
        merged = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            merged[lam] = merged.get(lam, 0) + c
        return type(self)(self.n, merged)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, scalar):
        return type(self)(self.n, {lam: c * scalar for lam, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def _check(self, other):
        if type(self) is not type(other) or self.n != other.n:
            raise DomainError("expansions must share basis and degree")

    def items(self):
        """Terms in enumeration order."""
        order = {lam: i for i, lam in enumerate(enumerate_partitions(self.n))}
        return sorted(self.coeffs.items(), key=lambda kv: order[kv[0]])

    def to_json(self) -> str:
        terms = [
            {"partition": list(lam), "num": c.numerator, "den": c.denominator}
            for lam, c in self.items()
        ]
        return json.dumps({"n": self.n, "basis": self.basis, "coeffs": terms})

    @staticmethod
    def from_json(text: str) -> "_Expansion":
        data = json.loads(text)
        cls = {"schur": SchurExpansion, "monomial": MonomialExpansion}[data["basis"]]
        coeffs = {
            Partition(t["partition"]): Fraction(t["num"], t["den"])
            for t in data["coeffs"]
        }
        return cls(data["n"], coeffs)

    def __repr__(self) -> str:
        letter = "S" if self.basis == "schur" else "M"
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{letter}{lam!r}" for lam, c in self.items())


class MonomialExpansion(_Expansion):
    basis = "monomial"


class SchurExpansion(_Expansion):
    basis = "schur"


def complete_homogeneous(n: int) -> MonomialExpansion:
    """``H_n``: every monomial of degree n with coefficient one."""
    return MonomialExpansion(n, {lam: 1 for lam in enumerate_partitions(n)})


def _horizontal_strips_removed(shape: tuple[int, ...], size: int):
    """Shapes nu such that shape/nu is a horizontal strip of ``size`` boxes."""
    rows = len(shape)

    def rec(i: int, left: int, acc: list[int]):
        if i == rows:
            if left == 0:
                yield tuple(p for p in acc if p)
            return
        below = shape[i + 1] if i + 1 < rows else 0
        # row i may shrink down to the old length of row i+1
        for take in range(min(left, shape[i] - below), -1, -1):
            yield from rec(i + 1, left - take, acc + [shape[i] - take])

    yield from rec(0, size, [])


@lru_cache(maxsize=None)
def _kostka(shape: tuple[int, ...], content: tuple[int, ...]) -> int:
    # the largest letter occupies a horizontal strip on the outer rim
    if not content:
        return 1 if not shape else 0
    last = content[-1]
    return sum(
        _kostka(nu, content[:-1]) for nu in _horizontal_strips_removed(shape, last)
    )


def kostka(mu: Partition, lam: Partition) -> int:
    """Semistandard tableaux of shape ``mu`` and content ``lam``."""
    mu, lam = Partition(mu), Partition(lam)
    if mu.n != lam.n:
        raise DomainError(f"kostka({mu}, {lam}): sizes differ")
    return _kostka(tuple(mu), tuple(lam))


def schur_to_monomial(e: SchurExpansion) -> MonomialExpansion:
    out: dict[Partition, Fraction] = {}
    for mu, c in e.coeffs.items():
        for lam in enumerate_partitions(e.n):
            k = kostka(mu, lam)
            if k:
                out[lam] = out.get(lam, Fraction(0)) + c * k
    return MonomialExpansion(e.n, out)


def monomial_to_schur(e: MonomialExpansion) -> SchurExpansion:
    """Invert the unitriangular Kostka system, largest shape first."""
    parts = enumerate_partitions(e.n)
    solved: dict[Partition, Fraction] = {}
    for j, lam in enumerate(parts):
        rhs = e[lam]
        for mu in parts[:j]:
            if solved.get(mu):
                rhs -= solved[mu] * kostka(mu, lam)
        solved[lam] = rhs
    return SchurExpansion(e.n, solved)


def _horizontal_strips_added(shape: tuple[int, ...], size: int):
    rows = len(shape)

    def rec(i: int, left: int, acc: list[int]):
        if i == rows:
            # a new bottom row may take at most the old last row length
            cap = shape[-1] if shape else left
            if left <= cap:
                yield tuple(acc + ([left] if left else []))
            return
        above = shape[i - 1] if i > 0 else None
        room = left if above is None else min(left, above - shape[i])
        for add in range(room, -1, -1):
            yield from rec(i + 1, left - add, acc + [shape[i] + add])

    yield from rec(0, size, [])


def pieri_multiply(lam: Partition, m: int) -> SchurExpansion:
    """``S_lam * H_m``: add m boxes to ``lam``, no two in one column."""
    lam = Partition(lam)
    if m < 0:
        raise DomainError("m must be nonnegative")
    return SchurExpansion(
        lam.n + m, {Partition(nu): 1 for nu in _horizontal_strips_added(tuple(lam), m)}
    )


def beta(lam: Partition, k: int) -> int:
    """Number of parts of ``lam`` that are at least ``k``."""
    return sum(1 for p in lam if p >= k)


def ch_alpha_k(n: int, k: int) -> MonomialExpansion:
    """Frobenius characteristic of the k-cycle counting function."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    return MonomialExpansion(
        n, {lam: Fraction(beta(lam, k), k) for lam in enumerate_partitions(n)}
    )


def derive_a_rho_via_pieri(n: int, k: int) -> SchurExpansion:
    """Schur expansion of ``p_k * H_{n-k}`` assembled from hook Pieri products.

    Uses ``p_k = sum_i (-1)^i S_[k-i, 1^i]`` and expands each hook times
    ``H_{n-k}`` by the Pieri rule; cancellation happens in the sum.
    """
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    total = SchurExpansion(n)
    for i in range(k):
        term = pieri_multiply(hook_shape(k - i, 0, i), n - k)
        total = total + term * (-1) ** i
    return total


def monomial_product_with_h(e: MonomialExpansion, m: int) -> MonomialExpansion:
    """``e * H_m`` computed directly on exponent vectors.

    The coefficient of ``M_nu`` in ``M_lam * H_m`` counts the distinct
    rearrangements ``a`` of ``lam`` (padded to ``nu``'s length) with
    ``a <= nu`` componentwise. Exponential cost; meant as an oracle.
    """
    total = e.n + m
    out: dict[Partition, Fraction] = {}
    for nu in enumerate_partitions(total) if total else []:
        for lam, c in e.coeffs.items():
            if len(lam) > len(nu):
                continue
            padded = Counter(tuple(lam) + (0,) * (len(nu) - len(lam)))
            count = _bounded_arrangements(padded, nu, 0)
            if count:
                out[nu] = out.get(nu, Fraction(0)) + c * count
    return MonomialExpansion(total, out)


def _bounded_arrangements(pool: Counter, bound: tuple[int, ...], pos: int) -> int:
    if pos == len(bound):
        return 1
    count = 0
    for value in list(pool):
        if pool[value] and value <= bound[pos]:
            pool[value] -= 1
            count += _bounded_arrangements(pool, bound, pos + 1)
            pool[value] += 1
    return count
