"""Double-ended breadth-first search with per-subset dominance pruning.

The search grows schedule prefixes from the front and suffixes from the
back at the same time.  Within a tree level (a "row", all partial schedules
of one length) schedules over the same activity set are interchangeable:
only the cheapest can extend to an optimum, so every row collapses to one
best node per subset, held in a dense store indexed by subset rank.  Rows
are expanded by a pool of workers over disjoint chunks of the previous
row; each worker prunes locally and emits only its occupied (address,
node) pairs, which a single merge pass folds back into the dense row.
When both searches reach the meeting row, every prefix is paired with the
complement-addressed suffix and the cheapest concatenation is the optimum.

Worker handoff between the two searches happens only at row boundaries and
is driven by remaining-row bookkeeping, never by wall-clock races, so the
returned schedule, objective, and every counter are identical for any
worker count and any valid meeting row.

Prefix values grow by the dependence flowing out of the child's activity
set, suffix values by the dependence flowing into the parent's set; both
increments depend only on the sets involved, which is what makes per-subset
pruning sound.  Value comparisons are raw float less-than with exact ties
broken toward the lexicographically smaller schedule.

Three ablation switches degrade single strategies while preserving results:
``no-second-decomposition`` runs each search on a single worker,
``no-compression`` makes workers hand over their entire dense store instead
of the occupied entries, and ``no-hash`` replaces subset addressing with
linear scans that compare activity sets directly.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from .errors import InputError, InternalInvariantError, ResourceLimitError
from .model import Dsm, total_feedback_length
from .subsets import BinomialTable, rank_sorted

__all__ = [
    "FORWARD",
    "BACKWARD",
    "VARIANT_FULL",
    "VARIANT_NO_SECOND_DECOMPOSITION",
    "VARIANT_NO_COMPRESSION",
    "VARIANT_NO_HASH",
    "VARIANTS",
    "Node",
    "SolverConfig",
    "SolveTimeout",
    "RowStats",
    "SolveReport",
    "RowStore",
    "CompressedChunk",
    "seed_rows",
    "partition_row",
    "expand_and_prune_chunk",
    "restore_and_merge",
    "solve",
]

FORWARD = "forward"
BACKWARD = "backward"

VARIANT_FULL = "full"
VARIANT_NO_SECOND_DECOMPOSITION = "no-second-decomposition"
VARIANT_NO_COMPRESSION = "no-compression"
VARIANT_NO_HASH = "no-hash"
VARIANTS = (
    VARIANT_FULL,
    VARIANT_NO_SECOND_DECOMPOSITION,
    VARIANT_NO_COMPRESSION,
    VARIANT_NO_HASH,
)

# A node is (feedback value, activities in schedule order).  Tuple comparison
# implements the pruning rule: lower value wins, exact ties go to the
# lexicographically smaller schedule.
Node = tuple[float, tuple[int, ...]]

_REL_TOL = 1e-9


@dataclass(frozen=True)
class SolverConfig:
    """Search knobs: worker count, meeting row, limits, ablation switch.

    ``na`` is the prefix length at which the two searches meet; it is
    clamped into [2, n - 2] so both trees expand at least one row.  The
    memory cap bounds the slot count of any single row store.
    """

    cn: int = 8
    na: int = 5
    time_limit: float | None = None
    memory_cap: int = 2**31
    variant: str = VARIANT_FULL


@dataclass
class RowStats:
    direction: str
    size: int
    workers: int
    chunks: int
    expanded: int
    pruned: int
    survivors: int
    transferred_records: int
    comparisons: int
    seconds: float

    @property
    def transferred_bytes_equivalent(self) -> int:
        # one record: address, value, and `size` activity ids, 8 bytes each
        return self.transferred_records * (self.size + 2) * 8


@dataclass
class SolveReport:
    """Outcome of one solve: schedule, objective, and per-row counters.

    ``na`` of 0 marks the plain-enumeration path taken for n < 4, where the
    double split is undefined.
    """

    n: int
    cn: int
    na: int
    variant: str
    sequence: tuple[int, ...] | None
    objective: float | None
    rows: list[RowStats] = field(default_factory=list)
    forward_seconds: float = 0.0
    backward_seconds: float = 0.0
    combination_seconds: float = 0.0
    total_seconds: float = 0.0
    combination_comparisons: int = 0
    timed_out: bool = False

    @property
    def nodes_expanded(self) -> int:
        return sum(r.expanded for r in self.rows)

    @property
    def nodes_pruned(self) -> int:
        return sum(r.pruned for r in self.rows)

    @property
    def transferred_records(self) -> int:
        return sum(r.transferred_records for r in self.rows)

    @property
    def similar_comparisons(self) -> int:
        return self.combination_comparisons + sum(r.comparisons for r in self.rows)


class SolveTimeout(Exception):
    """Wall-clock limit hit before the search finished; carries the partial report."""

    def __init__(self, report: SolveReport) -> None:
        super().__init__("time limit exceeded before the search finished")
        self.report = report


class _Expired(Exception):
    """Internal: a worker noticed the deadline mid-chunk."""


class RowStore:
    """Dense per-row map from subset rank to the best node over that subset."""

    __slots__ = ("n", "size", "slots", "occupied")

    def __init__(self, n: int, size: int, capacity: int) -> None:
        self.n = n
        self.size = size
        self.slots: list[Node | None] = [None] * capacity
        self.occupied = 0

    @property
    def capacity(self) -> int:
        return len(self.slots)

    def install(self, ha: int, node: Node) -> None:
        index = ha - 1
        current = self.slots[index]
        if current is None:
            self.slots[index] = node
            self.occupied += 1
        elif node < current:
            self.slots[index] = node

    def entries(self) -> list[Node]:
        """Occupied nodes in ascending address order."""
        return [node for node in self.slots if node is not None]


class _ScanStore:
    """Row store for the no-hash variant: similar nodes found by scanning.

    Items are (activity bitmask, node) pairs; every lookup walks the list
    comparing set masks and tallies the comparisons it performs.
    """

    __slots__ = ("n", "size", "items", "comparisons")

    def __init__(self, n: int, size: int) -> None:
        self.n = n
        self.size = size
        self.items: list[tuple[int, Node]] = []
        self.comparisons = 0

    @property
    def occupied(self) -> int:
        return len(self.items)

    def install(self, mask: int, node: Node) -> None:
        items = self.items
        for index, (existing_mask, existing) in enumerate(items):
            self.comparisons += 1
            if existing_mask == mask:
                if node < existing:
                    items[index] = (mask, node)
                return
        items.append((mask, node))

    def entries(self) -> list[tuple[int, Node]]:
        return list(self.items)


@dataclass
class CompressedChunk:
    """Sparse worker result: the surviving (address, node) pairs plus counters.

    ``transferred_records`` is what the worker hands to the merge step: the
    pair count normally, or the full slot count under ``no-compression``.
    The no-hash variant keys pairs by activity bitmask instead of rank.
    """

    direction: str
    size: int
    triples: list[tuple[int, Node]]
    expanded: int
    transferred_records: int
    comparisons: int


class _Search:
    """Per-solve read-only context shared by all expansion workers."""

    __slots__ = ("n", "d", "table", "variant", "deadline")

    def __init__(
        self,
        dsm: Dsm,
        table: BinomialTable,
        variant: str,
        deadline: float | None,
    ) -> None:
        n = dsm.n
        # 1-based copy so hot loops skip the id arithmetic; row/col 0 unused.
        padded = [(0.0,) * (n + 1)]
        for row in dsm.d:
            padded.append((0.0,) + tuple(row))
        self.n = n
        self.d = tuple(padded)
        self.table = table
        self.variant = variant
        self.deadline = deadline


def seed_rows(dsm: Dsm) -> tuple[RowStore, RowStore]:
    """Build both length-1 rows.

    A lone prefix activity already owes its dependence on everything still
    unscheduled, one position away each; a lone suffix activity owes
    nothing yet.  Singleton sets rank to their own id.
    """
    n = dsm.n
    forward = RowStore(n, 1, n)
    backward = RowStore(n, 1, n)
    for a in range(1, n + 1):
        row = dsm.d[a - 1]
        fv = 0.0
        for j in range(n):
            fv += row[j]
        forward.install(a, (fv, (a,)))
        backward.install(a, (0.0, (a,)))
    return forward, backward


def _seed_scan_rows(dsm: Dsm) -> tuple[_ScanStore, _ScanStore]:
    n = dsm.n
    forward = _ScanStore(n, 1)
    backward = _ScanStore(n, 1)
    for a in range(1, n + 1):
        row = dsm.d[a - 1]
        fv = 0.0
        for j in range(n):
            fv += row[j]
        forward.install(1 << a, (fv, (a,)))
        backward.install(1 << a, (0.0, (a,)))
    return forward, backward


def partition_row(row: RowStore | _ScanStore, workers: int) -> list[list]:
    """Split the row's entries into ``workers`` contiguous, near-equal parts.

    Part sizes differ by at most one; when there are fewer entries than
    workers the trailing parts come back empty.
    """
    if workers < 1:
        raise InputError(f"worker count must be at least 1, got {workers}")
    items = row.entries()
    base, extra = divmod(len(items), workers)
    parts: list[list] = []
    start = 0
    for i in range(workers):
        size = base + (1 if i < extra else 0)
        parts.append(items[start : start + size])
        start += size
    return parts


def _expand_chunk(ctx: _Search, direction: str, size: int, parents: Sequence) -> CompressedChunk:
    """Grow each parent by every unused activity, keeping the best node per subset.

    ``size`` is the child row size; parents are one shorter.  Child prefix
    values add the dependence flowing out of the child's set, child suffix
    values add the dependence flowing into the parent's set (shared by all
    of its children).
    """
    n = ctx.n
    d = ctx.d
    table = ctx.table
    deadline = ctx.deadline
    forward = direction == FORWARD
    scan = ctx.variant == VARIANT_NO_HASH
    dense = ctx.variant == VARIANT_NO_COMPRESSION

    store: _ScanStore | None = None
    slots: list[Node | None] | None = None
    best: dict[int, Node] = {}
    if scan:
        store = _ScanStore(n, size)
    elif dense:
        slots = [None] * table.c(n, size)

    # Increments are pure sums of nonnegative terms in a set-canonical order
    # (never differences), so a mathematically-zero value is exactly 0.0 and
    # equal-by-symmetry values tie exactly; the dominance rule then resolves
    # them identically whatever the meeting row or chunking.
    expanded = 0
    for parent in parents:
        if deadline is not None and time.monotonic() >= deadline:
            raise _Expired()
        if scan:
            parent_mask, (fv_parent, acts) = parent
        else:
            fv_parent, acts = parent
            parent_mask = 0
        member = [False] * (n + 1)
        for u in acts:
            member[u] = True
        sorted_ids = sorted(acts)
        unused = [v for v in range(1, n + 1) if not member[v]]
        if not forward:
            # Inflow into the parent suffix set, identical for every child.
            gain = 0.0
            for u in unused:
                du = d[u]
                acc = 0.0
                for v in sorted_ids:
                    acc += du[v]
                gain += acc
            fv_child = fv_parent + gain
        for a in unused:
            position = bisect_left(sorted_ids, a)
            child_ids = sorted_ids.copy()
            child_ids.insert(position, a)
            if forward:
                # Outflow of the child set {parent + a} to its complement.
                child_comp = [v for v in unused if v != a]
                outflow = 0.0
                for u in child_ids:
                    du = d[u]
                    acc = 0.0
                    for v in child_comp:
                        acc += du[v]
                    outflow += acc
                fv = fv_parent + outflow
                child = acts + (a,)
            else:
                fv = fv_child
                child = (a,) + acts
            node = (fv, child)
            expanded += 1
            if scan:
                assert store is not None
                store.install(parent_mask | (1 << a), node)
                continue
            ha = rank_sorted(child_ids, n, table)
            if dense:
                assert slots is not None
                current = slots[ha - 1]
                if current is None or node < current:
                    slots[ha - 1] = node
            else:
                current = best.get(ha)
                if current is None or node < current:
                    best[ha] = node

    if scan:
        assert store is not None
        return CompressedChunk(
            direction=direction,
            size=size,
            triples=store.entries(),
            expanded=expanded,
            transferred_records=store.occupied,
            comparisons=store.comparisons,
        )
    if dense:
        assert slots is not None
        triples = [(i + 1, node) for i, node in enumerate(slots) if node is not None]
        # The whole dense store is what gets handed over, occupied or not.
        return CompressedChunk(
            direction=direction,
            size=size,
            triples=triples,
            expanded=expanded,
            transferred_records=len(slots),
            comparisons=0,
        )
    triples = sorted(best.items())
    return CompressedChunk(
        direction=direction,
        size=size,
        triples=triples,
        expanded=expanded,
        transferred_records=len(triples),
        comparisons=0,
    )


def expand_and_prune_chunk(
    dsm: Dsm,
    parents: Sequence[Node],
    direction: str,
    *,
    table: BinomialTable | None = None,
    variant: str = VARIANT_FULL,
) -> CompressedChunk:
    """Expand one chunk of same-length parents and prune it to one node per subset."""
    if direction not in (FORWARD, BACKWARD):
        raise InputError(f"direction must be {FORWARD!r} or {BACKWARD!r}, got {direction!r}")
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r}")
    if not parents:
        raise InputError("chunk has no parent nodes")
    lengths = {len(acts) for _, acts in parents}
    if len(lengths) != 1:
        raise InputError("parents of one chunk must all have the same length")
    if table is None or table.n_max < dsm.n:
        table = BinomialTable(dsm.n)
    ctx = _Search(dsm, table, variant, None)
    if variant == VARIANT_NO_HASH:
        masked = [(_mask_of(acts), (fv, acts)) for fv, acts in parents]
        return _expand_chunk(ctx, direction, lengths.pop() + 1, masked)
    return _expand_chunk(ctx, direction, lengths.pop() + 1, parents)


def _mask_of(acts: Sequence[int]) -> int:
    mask = 0
    for a in acts:
        mask |= 1 << a
    return mask


def restore_and_merge(row: RowStore, chunks: Sequence[CompressedChunk]) -> RowStore:
    """Fold worker chunks into the merged row; lower value wins per address.

    The min rule is associative and commutative over totally ordered nodes,
    so the merged row is independent of chunk arrival order.
    """
    capacity = row.capacity
    for chunk in chunks:
        for ha, node in chunk.triples:
            if not 1 <= ha <= capacity:
                raise InternalInvariantError(
                    f"address {ha} outside row capacity {capacity} (size {row.size})"
                )
            row.install(ha, node)
    return row


def _merge_scan(store: _ScanStore, chunks: Sequence[CompressedChunk]) -> _ScanStore:
    for chunk in chunks:
        for mask, node in chunk.triples:
            store.install(mask, node)
    return store


def _round_allocation(variant: str, cn: int, fwd_left: int, bwd_left: int) -> tuple[int, int]:
    """Workers for each search this round, from remaining-row bookkeeping.

    While both searches have rows left each gets half the workers, an odd
    spare going to the one with more rows remaining (forward on ties); a
    finished search hands everything to the other.  The single-decomposition
    variant pins each search to one worker.
    """
    if variant == VARIANT_NO_SECOND_DECOMPOSITION:
        return (1 if fwd_left else 0), (1 if bwd_left else 0)
    if not fwd_left:
        return 0, cn
    if not bwd_left:
        return cn, 0
    forward_share = backward_share = cn // 2
    if cn % 2:
        if fwd_left >= bwd_left:
            forward_share += 1
        else:
            backward_share += 1
    return forward_share, backward_share


def _solve_by_enumeration(dsm: Dsm, config: SolverConfig, started: float) -> SolveReport:
    # n < 4 leaves no room for a split; enumerate outright.
    best: tuple[float, tuple[int, ...]] | None = None
    for seq in permutations(range(1, dsm.n + 1)):
        candidate = (total_feedback_length(dsm, seq), seq)
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return SolveReport(
        n=dsm.n,
        cn=config.cn,
        na=0,
        variant=config.variant,
        sequence=best[1],
        objective=best[0],
        total_seconds=time.perf_counter() - started,
    )


def solve(dsm: Dsm, config: SolverConfig | None = None, *, table: BinomialTable | None = None) -> SolveReport:
    """Find the optimal schedule and return it with counters and timings.

    Runs the prefix search up to the meeting row and the suffix search down
    to it, each row partitioned over workers, then pairs every prefix with
    its complement-addressed suffix and keeps the cheapest concatenation.
    The reported objective re-evaluates the returned schedule with the
    canonical evaluator, and the paired value is required to agree with it
    to within 1e-9 relative.

    Raises SolveTimeout once the wall-clock limit passes (counters survive
    in the exception, no schedule does) and ResourceLimitError when some
    row would need more slots than the configured cap.
    """
    config = config or SolverConfig()
    if config.cn < 1:
        raise InputError(f"worker count must be at least 1, got {config.cn}")
    if config.variant not in VARIANTS:
        raise InputError(f"unknown variant {config.variant!r}")
    n = dsm.n

    started = time.perf_counter()
    deadline: float | None = None
    if config.time_limit is not None:
        deadline = time.monotonic() + config.time_limit

    def expired() -> bool:
        return deadline is not None and time.monotonic() >= deadline

    if n < 4:
        if expired():
            raise SolveTimeout(
                SolveReport(
                    n=n, cn=config.cn, na=0, variant=config.variant,
                    sequence=None, objective=None,
                    total_seconds=time.perf_counter() - started, timed_out=True,
                )
            )
        return _solve_by_enumeration(dsm, config, started)

    na = min(max(config.na, 2), n - 2)
    if table is None or table.n_max < n:
        table = BinomialTable(n)

    deepest = max(na, n - na)
    worst_size = max(range(2, deepest + 1), key=lambda s: table.c(n, s))
    if table.c(n, worst_size) > config.memory_cap:
        raise ResourceLimitError(
            f"row {worst_size} needs C({n},{worst_size}) = {table.c(n, worst_size)} slots, "
            f"over the cap of {config.memory_cap}"
        )

    variant = config.variant
    scan = variant == VARIANT_NO_HASH
    ctx = _Search(dsm, table, variant, deadline)
    if scan:
        fwd_store, bwd_store = _seed_scan_rows(dsm)
    else:
        fwd_store, bwd_store = seed_rows(dsm)

    rows: list[RowStats] = []
    forward_seconds = 0.0
    backward_seconds = 0.0
    fwd_size, fwd_last = 1, na
    bwd_size, bwd_last = 1, n - na

    def partial_report() -> SolveReport:
        return SolveReport(
            n=n, cn=config.cn, na=na, variant=variant,
            sequence=None, objective=None, rows=rows,
            forward_seconds=forward_seconds, backward_seconds=backward_seconds,
            total_seconds=time.perf_counter() - started, timed_out=True,
        )

    with ThreadPoolExecutor(max_workers=config.cn) as pool:
        while fwd_size < fwd_last or bwd_size < bwd_last:
            if expired():
                raise SolveTimeout(partial_report())
            fwd_share, bwd_share = _round_allocation(
                variant, config.cn, fwd_last - fwd_size, bwd_last - bwd_size
            )
            round_started = time.perf_counter()
            batches = []
            if fwd_share > 0 and fwd_size < fwd_last:
                batches.append((FORWARD, fwd_store, fwd_size + 1, fwd_share))
            if bwd_share > 0 and bwd_size < bwd_last:
                batches.append((BACKWARD, bwd_store, bwd_size + 1, bwd_share))
            submitted = []
            for direction, store, child_size, workers in batches:
                parts = [part for part in partition_row(store, workers) if part]
                futures = [
                    pool.submit(_expand_chunk, ctx, direction, child_size, part)
                    for part in parts
                ]
                submitted.append((direction, child_size, workers, futures))
            for direction, child_size, workers, futures in submitted:
                try:
                    chunks = [future.result() for future in futures]
                except _Expired:
                    raise SolveTimeout(partial_report()) from None
                capacity = table.c(n, child_size)
                merged: RowStore | _ScanStore
                if scan:
                    merged = _merge_scan(_ScanStore(n, child_size), chunks)
                else:
                    merged = restore_and_merge(RowStore(n, child_size, capacity), chunks)
                if merged.occupied != capacity:
                    raise InternalInvariantError(
                        f"{direction} row {child_size} holds {merged.occupied} subsets, "
                        f"expected C({n},{child_size}) = {capacity}"
                    )
                expanded = sum(c.expanded for c in chunks)
                comparisons = sum(c.comparisons for c in chunks)
                if scan:
                    comparisons += merged.comparisons  # merge scans count too
                stats = RowStats(
                    direction=direction,
                    size=child_size,
                    workers=workers,
                    chunks=len(futures),
                    expanded=expanded,
                    pruned=expanded - merged.occupied,
                    survivors=merged.occupied,
                    transferred_records=sum(c.transferred_records for c in chunks),
                    comparisons=comparisons,
                    seconds=time.perf_counter() - round_started,
                )
                rows.append(stats)
                if direction == FORWARD:
                    fwd_store, fwd_size = merged, child_size
                    forward_seconds += stats.seconds
                else:
                    bwd_store, bwd_size = merged, child_size
                    backward_seconds += stats.seconds

    if expired():
        raise SolveTimeout(partial_report())

    combination_started = time.perf_counter()
    combination_comparisons = 0
    best_fl: float | None = None
    best_seq: tuple[int, ...] | None = None
    if scan:
        assert isinstance(fwd_store, _ScanStore) and isinstance(bwd_store, _ScanStore)
        full_mask = ((1 << n) - 1) << 1
        suffix_items = bwd_store.items
        for prefix_mask, (fv_a, acts_a) in fwd_store.items:
            wanted = full_mask ^ prefix_mask
            for suffix_mask, (fv_b, acts_b) in suffix_items:
                combination_comparisons += 1
                if suffix_mask == wanted:
                    fl = fv_a + fv_b
                    if best_fl is None or fl < best_fl:
                        best_fl = fl
                        best_seq = acts_a + acts_b
                    elif fl == best_fl:
                        candidate = acts_a + acts_b
                        assert best_seq is not None
                        if candidate < best_seq:
                            best_seq = candidate
                    break
            else:
                raise InternalInvariantError(
                    f"no suffix found for prefix set mask {prefix_mask:#x}"
                )
    else:
        assert isinstance(fwd_store, RowStore) and isinstance(bwd_store, RowStore)
        capacity = table.c(n, na)
        prefix_slots = fwd_store.slots
        suffix_slots = bwd_store.slots
        for ha in range(1, capacity + 1):
            prefix_node = prefix_slots[ha - 1]
            suffix_node = suffix_slots[capacity - ha]  # complement address, zero-based
            assert prefix_node is not None and suffix_node is not None
            fl = prefix_node[0] + suffix_node[0]
            if best_fl is None or fl < best_fl:
                best_fl = fl
                best_seq = prefix_node[1] + suffix_node[1]
            elif fl == best_fl:
                candidate = prefix_node[1] + suffix_node[1]
                assert best_seq is not None
                if candidate < best_seq:
                    best_seq = candidate
    assert best_fl is not None and best_seq is not None

    objective = total_feedback_length(dsm, best_seq)
    if abs(best_fl - objective) > _REL_TOL * max(1.0, abs(objective)):
        raise InternalInvariantError(
            f"paired value {best_fl!r} disagrees with schedule objective {objective!r}"
        )

    finished = time.perf_counter()
    return SolveReport(
        n=n,
        cn=config.cn,
        na=na,
        variant=variant,
        sequence=best_seq,
        objective=objective,
        rows=rows,
        forward_seconds=forward_seconds,
        backward_seconds=backward_seconds,
        combination_seconds=finished - combination_started,
        total_seconds=finished - started,
        combination_comparisons=combination_comparisons,
    )
