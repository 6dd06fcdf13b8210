"""Orbits of an integer tuple under coordinate permutation.

The orbit of a seed tuple is every distinct rearrangement of its entries,
kept in ascending lexicographic order.  Basis ranks are 0-based; the
adjacent transposition ``sigma_k`` takes a 1-based ``k`` as in the braid
generator ``tau_k``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import factorial
from typing import Dict, Iterator, Sequence, Tuple

from .errors import IndexOutOfRange, NotBinaryTuple, TupleTooShort

ValueTuple = Tuple[int, ...]

__all__ = [
    "ValueTuple",
    "OrbitIndex",
    "as_tuple",
    "orbit_generate",
    "orbit_cardinality",
    "sigma_k",
    "complement_tuple",
    "format_tuple",
    "parse_tuple",
    "lex_permutations",
]


def as_tuple(values: Sequence[int]) -> ValueTuple:
    out = tuple(int(v) for v in values)
    if any(v < 0 for v in out):
        raise ValueError(f"tuple entries must be non-negative: {out}")
    return out


def _check_length(z: Sequence[int]) -> None:
    if len(z) < 2:
        raise TupleTooShort(f"need at least 2 entries, got {len(z)}")


def lex_permutations(z: Sequence[int]) -> Iterator[ValueTuple]:
    """Yield the distinct permutations of ``z`` in ascending lex order.

    Classic next-permutation: find the longest non-increasing suffix, swap
    its predecessor with the rightmost larger element, reverse the suffix.
    """
    a = sorted(z)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


@dataclass(frozen=True)
class OrbitIndex:
    seed: ValueTuple
    basis: Tuple[ValueTuple, ...]
    rank: Dict[ValueTuple, int] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.seed)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __contains__(self, x):
        return tuple(x) in self.rank

    def index(self, x: Sequence[int]) -> int:
        return self.rank[tuple(x)]

    def sigma_perm(self, k: int) -> Tuple[int, ...]:
        """Rank permutation induced by ``sigma_k`` (1-based ``k``)."""
        return tuple(self.rank[sigma_k(x, k)] for x in self.basis)


def orbit_generate(z: Sequence[int]) -> OrbitIndex:
    z = as_tuple(z)
    _check_length(z)
    basis = tuple(lex_permutations(z))
    rank = {x: i for i, x in enumerate(basis)}
    return OrbitIndex(seed=z, basis=basis, rank=rank)


def orbit_cardinality(z: Sequence[int]) -> int:
    """Multinomial coefficient ``n! / prod(c_i!)`` over value multiplicities."""
    _check_length(z)
    count = factorial(len(z))
    for c in Counter(z).values():
        count //= factorial(c)
    return count


def sigma_k(x: Sequence[int], k: int) -> ValueTuple:
    """Swap entries ``k`` and ``k+1`` (1-based)."""
    n = len(x)
    if not 1 <= k <= n - 1:
        raise IndexOutOfRange(f"sigma_{k} undefined for n={n}; need 1 <= k <= {n - 1}")
    y = list(x)
    y[k - 1], y[k] = y[k], y[k - 1]
    return tuple(y)


def complement_tuple(x: Sequence[int]) -> ValueTuple:
    if any(v not in (0, 1) for v in x):
        raise NotBinaryTuple(f"complement needs a 0/1 tuple, got {tuple(x)}")
    return tuple(1 - v for v in x)


def format_tuple(x: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in x) + ")"


def parse_tuple(text: str) -> ValueTuple:
    """Inverse of :func:`format_tuple`; parentheses are optional."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",")]
    if not body.strip() or any(not p.isdigit() for p in parts):
        raise ValueError(f"not a tuple of non-negative integers: {text!r}")
    return tuple(int(p) for p in parts)
