"""Seeded random instance generation with exact density control."""

from __future__ import annotations

import random

from .errors import InputError
from .model import Dsm


def generate_instance(n: int, density: float, seed: int) -> Dsm:
    """Random matrix with exactly ``round(density * n * (n - 1))`` nonzero cells.

    The nonzero off-diagonal cells are sampled without replacement and their
    degrees drawn uniformly from (0, 1]; zero is excluded so the nonzero
    count is exact.  The same (n, density, seed) triple always yields the
    bit-identical matrix.
    """
    if n < 2:
        raise InputError(f"need at least 2 activities, got {n}")
    if not 0.0 <= density <= 1.0:
        raise InputError(f"density {density!r} outside [0, 1]")
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = round(density * (n * (n - 1)))
    rng = random.Random(seed)
    chosen = sorted(rng.sample(range(len(cells)), count))
    rows = [[0.0] * n for _ in range(n)]
    for index in chosen:
        i, j = cells[index]
        rows[i][j] = 1.0 - rng.random()
    return Dsm.from_rows(rows)
