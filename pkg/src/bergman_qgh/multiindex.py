"""Multi-indices and the graded-lexicographic enumeration of the monomial basis.

The basis vectors ``e_j`` (``j = 1, 2, ...``) are ordered by total degree
first and lexicographically inside each degree block, so for ``d = 2``::

    j:  1      2      3      4      5      6
    k: (0,0)  (0,1)  (1,0)  (0,2)  (1,1)  (2,0)

All Lip-norm weights ``(i + j)**s`` refer to this fixed ordering.
"""

from __future__ import annotations

import json
import math
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import InputError

__all__ = [
    "MultiIndex",
    "Enumeration",
    "index_of",
    "multi_of",
    "count_up_to_degree",
    "count_of_degree",
    "multi_indices_up_to",
]


class MultiIndex(tuple):
    """Immutable d-tuple of non-negative integers."""

    def __new__(cls, entries: Iterable[int]):
        entries = tuple(entries)
        if not entries:
            raise InputError("multi-index must have dimension >= 1")
        for e in entries:
            if isinstance(e, bool) or not isinstance(e, int) or e < 0:
                raise InputError(f"multi-index entries must be non-negative integers, got {entries!r}")
        return super().__new__(cls, entries)

    @classmethod
    def zero(cls, d: int) -> "MultiIndex":
        return cls((0,) * d)

    @classmethod
    def unit(cls, i: int, d: int) -> "MultiIndex":
        return cls(tuple(int(j == i) for j in range(d)))

    @property
    def d(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def factorial(self) -> int:
        out = 1
        for e in self:
            out *= math.factorial(e)
        return out

    def __add__(self, other):
        _check_same_dim(self, other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        """Entrywise difference; raises if any entry would go negative."""
        _check_same_dim(self, other)
        return MultiIndex(a - b for a, b in zip(self, other))

    def try_sub(self, other) -> "MultiIndex | None":
        _check_same_dim(self, other)
        diff = tuple(a - b for a, b in zip(self, other))
        if min(diff) < 0:
            return None
        return MultiIndex(diff)

    def to_json(self) -> str:
        return json.dumps(list(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "MultiIndex":
        data = json.loads(text)
        if not isinstance(data, list):
            raise InputError("multi-index JSON must be an array of integers")
        return cls(data)

    def __repr__(self):
        return f"MultiIndex({tuple(self)!r})"


def _check_same_dim(k, l):
    if len(k) != len(l):
        raise InputError(f"dimension mismatch: {len(k)} vs {len(l)}")


def _compositions(total: int, parts: int) -> int:
    """Number of ways to write ``total`` as an ordered sum of ``parts`` non-negative integers."""
    if parts == 0:
        return 1 if total == 0 else 0
    return math.comb(total + parts - 1, parts - 1)


def count_of_degree(m: int, d: int) -> int:
    if m < 0:
        return 0
    return _compositions(m, d)


def count_up_to_degree(D: int, d: int) -> int:
    """Number of multi-indices in ``d`` variables with degree ``<= D``."""
    if d < 1:
        raise InputError("dimension d must be >= 1")
    if D < 0:
        return 0
    return math.comb(D + d, d)


def index_of(k, d: int | None = None) -> int:
    """1-based position of ``k`` in graded-lexicographic order."""
    k = k if isinstance(k, MultiIndex) else MultiIndex(k)
    if d is not None and len(k) != d:
        raise InputError(f"multi-index {tuple(k)} does not have dimension {d}")
    d = len(k)
    m = k.degree
    rank = 0
    remaining = m
    for pos, value in enumerate(k):
        p = d - pos - 1
        if p > 0 and value > 0:
            # hockey stick: sum_{v < value} C(remaining - v + p - 1, p - 1)
            rank += math.comb(remaining + p, p) - math.comb(remaining - value + p, p)
        remaining -= value
    return count_up_to_degree(m - 1, d) + rank + 1


def multi_of(j: int, d: int) -> MultiIndex:
    """Inverse of :func:`index_of`."""
    if isinstance(j, bool) or not isinstance(j, int) or j < 1:
        raise InputError(f"index must be an integer >= 1, got {j!r}")
    if d < 1:
        raise InputError("dimension d must be >= 1")
    # smallest m with count_up_to_degree(m, d) >= j
    hi = 1
    while count_up_to_degree(hi, d) < j:
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if count_up_to_degree(mid, d) < j:
            lo = mid + 1
        else:
            hi = mid
    m = lo
    rank = j - count_up_to_degree(m - 1, d) - 1
    entries = []
    remaining = m
    for pos in range(d - 1):
        parts_after = d - pos - 1
        v = 0
        while True:
            block = _compositions(remaining - v, parts_after)
            if rank < block:
                break
            rank -= block
            v += 1
        entries.append(v)
        remaining -= v
    entries.append(remaining)
    return MultiIndex(entries)


def _graded_lex(m: int, d: int) -> Iterator[tuple[int, ...]]:
    if d == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in _graded_lex(m - first, d - 1):
            yield (first,) + rest


@lru_cache(maxsize=256)
def multi_indices_up_to(D: int, d: int) -> tuple[MultiIndex, ...]:
    """All multi-indices of degree ``<= D`` in enumeration order (position ``j-1`` holds ``e_j``)."""
    out = []
    for m in range(D + 1):
        out.extend(MultiIndex(t) for t in _graded_lex(m, d))
    return tuple(out)


class Enumeration:
    """The fixed enumeration ``j <-> k`` for a given dimension."""

    def __init__(self, d: int):
        if d < 1:
            raise InputError("dimension d must be >= 1")
        self.d = d

    def index_of(self, k) -> int:
        return index_of(k, self.d)

    def multi_of(self, j: int) -> MultiIndex:
        return multi_of(j, self.d)

    def up_to_degree(self, D: int) -> tuple[MultiIndex, ...]:
        return multi_indices_up_to(D, self.d)

    def degree_block(self, m: int) -> range:
        """Indices ``j`` of the degree-``m`` multi-indices."""
        return range(count_up_to_degree(m - 1, self.d) + 1, count_up_to_degree(m, self.d) + 1)

    def __repr__(self):
        return f"Enumeration(d={self.d}, order='graded-lex')"
