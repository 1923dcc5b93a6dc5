"""Lexicographic ranking of activity subsets onto dense 1-based addresses.

Partial schedules over the same activity set are interchangeable for
pruning, so each set is mapped to its position in the lexicographic
enumeration of same-size subsets of {1..n}.  The rank is computed from a
precomputed binomial table, doubles as a direct index into dense per-row
stores, and the rank of a set's complement is available in closed form,
which lets the forward and backward searches pair their results without
any searching.  One row of addresses needs at most C(n, floor(n/2)) slots.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import InputError

__all__ = [
    "BinomialTable",
    "rank_subset",
    "rank_sorted",
    "unrank_subset",
    "complement_address",
]


class BinomialTable:
    """Pascal-triangle table of C(m, k) for 0 <= k <= m <= n_max.

    Coefficients are exact arbitrary-precision integers, so addresses are
    never approximated; ``c`` returns 0 for k outside [0, m].
    """

    __slots__ = ("n_max", "_rows")

    def __init__(self, n_max: int) -> None:
        if n_max < 0:
            raise InputError(f"table size must be non-negative, got {n_max}")
        rows = [[1]]
        for m in range(1, n_max + 1):
            prev = rows[-1]
            row = [1] * (m + 1)
            for k in range(1, m):
                row[k] = prev[k - 1] + prev[k]
            rows.append(row)
        self._rows = rows
        self.n_max = n_max

    def c(self, m: int, k: int) -> int:
        if not 0 <= m <= self.n_max:
            raise InputError(f"C({m}, {k}) outside table range 0..{self.n_max}")
        if k < 0 or k > m:
            return 0
        return self._rows[m][k]


def rank_sorted(ids: Sequence[int], n: int, table: BinomialTable) -> int:
    """Rank of an already-sorted, already-validated id sequence (fast path)."""
    p = len(ids)
    c = table.c
    ha = 0
    prev = 0
    for i in range(p - 1):
        s = ids[i]
        slots = p - i - 1  # ids still to place after this one
        for t in range(prev + 1, s):
            ha += c(n - t, slots)
        prev = s
    return ha + ids[-1] - prev


def rank_subset(activities: Iterable[int], n: int, table: BinomialTable) -> int:
    """1-based lexicographic rank of an activity set among its size class.

    Input order is irrelevant: ids are sorted before encoding.  Over the
    p-subsets of {1..n} the mapping is a bijection onto [1, C(n, p)] that
    respects lexicographic order of the sorted sets.
    """
    ids = tuple(sorted(activities))
    p = len(ids)
    if p == 0:
        raise InputError("empty activity set")
    if n > table.n_max:
        raise InputError(f"universe size {n} exceeds table maximum {table.n_max}")
    if p > n:
        raise InputError(f"{p} activities cannot come from a universe of {n}")
    last = 0
    for a in ids:
        if not 1 <= a <= n:
            raise InputError(f"activity {a} outside 1..{n}")
        if a == last:
            raise InputError(f"duplicate activity {a}")
        last = a
    return rank_sorted(ids, n, table)


def unrank_subset(ha: int, n: int, p: int, table: BinomialTable) -> tuple[int, ...]:
    """Sorted activity set whose rank is ``ha`` (inverse of ``rank_subset``)."""
    if not 1 <= p <= n <= table.n_max:
        raise InputError(f"need 1 <= p <= n <= {table.n_max}, got p={p}, n={n}")
    capacity = table.c(n, p)
    if not 1 <= ha <= capacity:
        raise InputError(f"address {ha} outside 1..C({n},{p}) = {capacity}")
    remaining = ha - 1
    out: list[int] = []
    value = 1
    for i in range(1, p + 1):
        while True:
            block = table.c(n - value, p - i)
            if remaining < block:
                break
            remaining -= block
            value += 1
        out.append(value)
        value += 1
    return tuple(out)


def complement_address(ha: int, n: int, p: int, table: BinomialTable) -> int:
    """Address of the set complement among the (n-p)-subsets.

    Lexicographic ranks of complementary sets mirror each other, so the
    pairing is C(n, p) + 1 - ha with no unranking needed.
    """
    if not 1 <= p < n or n > table.n_max:
        raise InputError(f"need 1 <= p < n <= {table.n_max}, got p={p}, n={n}")
    capacity = table.c(n, p)
    if not 1 <= ha <= capacity:
        raise InputError(f"address {ha} outside 1..C({n},{p}) = {capacity}")
    return capacity + 1 - ha
