"""Exhaustive ground truth for small instances.

Everything here enumerates candidate orderings outright and re-evaluates
them from their defining sums; none of the incremental bookkeeping used by
the search code is shared, so these results are an independent check on it.
Enumeration is lexicographic and ties keep the first ordering seen, which
matches the solver's tie rule.
"""

from __future__ import annotations

from itertools import islice, permutations
from typing import Iterable

import numpy as np

from .errors import InputError
from .model import Dsm, prefix_feedback_value, suffix_feedback_value, total_feedback_length

__all__ = ["MAX_BRUTE_FORCE_N", "MAX_SUBSET_SIZE", "brute_force_optimum", "best_prefix_value", "best_suffix_value"]

MAX_BRUTE_FORCE_N = 10  # 10! schedule evaluations is the hard ceiling
MAX_SUBSET_SIZE = 9

_BATCH = 120_960  # permutations scored per vectorized batch (bounds memory)


def brute_force_optimum(dsm: Dsm) -> tuple[tuple[int, ...], float]:
    """Optimal schedule and objective by full enumeration (n <= 10 only).

    Schedules are enumerated in lexicographic order and scored in batches
    whose accumulation order matches the scalar evaluator term for term, so
    the winning value is bit-identical to ``total_feedback_length`` on the
    winning schedule (which is what gets returned).
    """
    n = dsm.n
    if n > MAX_BRUTE_FORCE_N:
        raise InputError(
            f"brute force would evaluate {n}! schedules; limited to n <= {MAX_BRUTE_FORCE_N}. "
            "Use the branch-and-prune solver for larger instances."
        )
    d = np.asarray(dsm.d, dtype=np.float64)
    best_value: float | None = None
    best_seq: tuple[int, ...] | None = None
    stream = permutations(range(n))
    while True:
        batch = list(islice(stream, _BATCH))
        if not batch:
            break
        perms = np.array(batch, dtype=np.int8)
        values = _batch_objective(d, perms)
        index = int(np.argmin(values))  # first minimum: lexicographically smallest
        value = float(values[index])
        if best_value is None or value < best_value:
            best_value = value
            best_seq = tuple(a + 1 for a in batch[index])
    assert best_seq is not None
    return best_seq, total_feedback_length(dsm, best_seq)


def _batch_objective(d: np.ndarray, perms: np.ndarray) -> np.ndarray:
    # Accumulates in ascending (h, k) position order, mirroring the scalar
    # evaluator so per-schedule values agree bit for bit.
    n = perms.shape[1]
    values = np.zeros(len(perms), dtype=np.float64)
    for h in range(n - 1):
        src = perms[:, h]
        for k in range(h + 1, n):
            values += d[src, perms[:, k]] * float(k - h)
    return values


def _checked_subset(dsm: Dsm, subset: Iterable[int]) -> tuple[int, ...]:
    ids = tuple(sorted(subset))
    if len(ids) > MAX_SUBSET_SIZE:
        raise InputError(
            f"subset of size {len(ids)} would need {len(ids)}! ordering evaluations; "
            f"limited to {MAX_SUBSET_SIZE}"
        )
    return ids


def best_prefix_value(dsm: Dsm, subset: Iterable[int]) -> float:
    """Minimum prefix feedback value over all orderings of ``subset``."""
    ids = _checked_subset(dsm, subset)
    best: float | None = None
    for ordering in permutations(ids):
        value = prefix_feedback_value(dsm, ordering)
        if best is None or value < best:
            best = value
    assert best is not None
    return best


def best_suffix_value(dsm: Dsm, subset: Iterable[int]) -> float:
    """Minimum suffix feedback value over all orderings of ``subset``."""
    ids = _checked_subset(dsm, subset)
    best: float | None = None
    for ordering in permutations(ids):
        value = suffix_feedback_value(dsm, ordering)
        if best is None or value < best:
            best = value
    assert best is not None
    return best
