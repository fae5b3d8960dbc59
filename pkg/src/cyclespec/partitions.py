"""Integer partitions (Young diagrams) and their exact combinatorics.

A :class:`Partition` is an immutable, non-increasing tuple of positive
integers. It doubles as a cycle type (conjugacy class of S_n) and as the
label of an irreducible representation.
"""
from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator

from .errors import DomainError

MAX_N = 20


class Partition(tuple):
    """Non-increasing tuple of positive integers.

    Behaves like a plain tuple (hashing, equality, slicing), so
    ``Partition([3, 1]) == (3, 1)``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise DomainError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"partition parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def rows(self) -> int:
        return len(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def is_hook(self) -> bool:
        return len(self) <= 1 or self[1] == 1

    def cells(self) -> Iterator[tuple[int, int]]:
        for r, length in enumerate(self):
            for c in range(length):
                yield r, c

    def to_json(self) -> str:
        return json.dumps(list(self))

    @classmethod
    def from_json(cls, text: str) -> "Partition":
        return cls(json.loads(text))

    def __repr__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"


def hook_shape(a: int, b: int = 0, c: int = 0) -> Partition:
    """Build ``[a, b, 1^c]``; ``b == 0`` gives the pure hook ``[a, 1^c]``."""
    if a < 1 or c < 0 or b < 0 or b > a:
        raise DomainError(f"invalid shape [a,b,1^c] with a={a}, b={b}, c={c}")
    if b == 0:
        return Partition([a] + [1] * c)
    return Partition([a, b] + [1] * c)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_N:
        raise DomainError(f"n must be an integer in [1, {MAX_N}], got {n!r}")


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order, ``[n]`` first."""
    _check_n(n)
    return [Partition(p) for p in _partitions(n, n)]


def dominates(sigma: Partition, rho: Partition) -> bool:
    """True iff every prefix sum of ``sigma`` is >= that of ``rho``."""
    if sum(sigma) != sum(rho):
        raise DomainError(f"cannot compare {sigma} and {rho}: different sizes")
    s = r = 0
    for j in range(max(len(sigma), len(rho))):
        s += sigma[j] if j < len(sigma) else 0
        r += rho[j] if j < len(rho) else 0
        if s < r:
            return False
    return True


def hook_lengths(lam: Partition) -> list[int]:
    conj = Partition(lam).conjugate()
    return [lam[r] - c - 1 + conj[c] - r for r, c in Partition(lam).cells()]


def dimension(lam: Partition) -> int:
    """Dimension of the irreducible representation, by the hook-length formula."""
    lam = Partition(lam)
    _check_n(lam.n)
    num = factorial(lam.n)
    den = prod(hook_lengths(lam))
    assert num % den == 0
    return num // den


def hook_dimension_formula(a: int, b: int, c: int) -> int:
    """Closed form for ``dim [a, b, 1^c]`` with ``a >= b >= 1``, ``c >= 0``."""
    if not (a >= b >= 1 and c >= 0):
        raise DomainError(f"need a >= b >= 1 and c >= 0, got {(a, b, c)}")
    n = a + b + c
    _check_n(n)
    num = b * (a - b + 1) * factorial(n)
    den = (b + c) * (a + c + 1) * factorial(a) * factorial(b) * factorial(c)
    assert num % den == 0
    return num // den


def class_size(mu: Partition) -> int:
    """Number of permutations of cycle type ``mu``."""
    mu = Partition(mu)
    _check_n(mu.n)
    den = 1
    for part, mult in mu.multiplicities().items():
        den *= part**mult * factorial(mult)
    return factorial(mu.n) // den


def merge(*parts: Iterable[int]) -> Partition:
    """Union of several multisets of parts, as a partition."""
    return Partition(sorted((p for ps in parts for p in ps), reverse=True))
