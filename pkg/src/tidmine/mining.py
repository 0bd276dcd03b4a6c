"""Level-wise frequent-itemset mining with two interchangeable counting variants.

The `classic` variant counts every candidate against every transaction. The
`improved` variant exploits the level-1 index: each candidate is counted only
over the transaction-id list of its lowest-support member, which must contain
every transaction that could possibly hold the candidate, so both variants
return identical itemsets and supports while the scan ledger records how much
less work the restricted scan performed.

Itemsets are plain tuples of item ids, sorted strictly ascending; two itemsets
with the same members are the same tuple.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .dataset import TransactionDb
from .errors import ConfigurationError, ContractViolationError
from .metrics import ScanLedger

Itemset = tuple[int, ...]

VARIANTS = ("classic", "improved")
CANDIDATE_STRATEGIES = ("join", "join_unpruned", "combinations")


class L1Index:
    """Support count plus sorted transaction-id list for frequent single items."""

    __slots__ = ("_tids",)

    def __init__(self, tids_by_item: Mapping[int, Sequence[int]]):
        self._tids: dict[int, tuple[int, ...]] = {}
        for item in sorted(tids_by_item):
            tids = tuple(tids_by_item[item])
            if any(b <= a for a, b in zip(tids, tids[1:])):
                raise ContractViolationError(
                    f"TID list for item {item} is not strictly increasing"
                )
            self._tids[item] = tids

    @property
    def items(self) -> tuple[int, ...]:
        """Indexed items, ascending."""
        return tuple(self._tids)

    def __contains__(self, item: int) -> bool:
        return item in self._tids

    def __len__(self) -> int:
        return len(self._tids)

    def support(self, item: int) -> int:
        return len(self.tids(item))

    def tids(self, item: int) -> tuple[int, ...]:
        try:
            return self._tids[item]
        except KeyError:
            raise ContractViolationError(f"item {item} is not in the L1 index") from None

    def entries(self) -> dict[int, tuple[int, tuple[int, ...]]]:
        """Item id -> (support, tid list), ascending by item."""
        return {item: (len(tids), tids) for item, tids in self._tids.items()}

    def __repr__(self) -> str:
        return f"L1Index({len(self._tids)} items)"


@dataclass(frozen=True)
class CandidateSet:
    """Same-size candidate itemsets for one level, canonical and duplicate-free."""

    level: int
    candidates: tuple[Itemset, ...]

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(map(tuple, self.candidates)))
        if self.level < 2:
            raise ContractViolationError("candidate level must be at least 2")
        for cand in self.candidates:
            if len(cand) != self.level:
                raise ContractViolationError(
                    f"candidate {cand} does not match level {self.level}"
                )
            if any(b <= a for a, b in zip(cand, cand[1:])):
                raise ContractViolationError(f"candidate {cand} is not canonical")
        if any(b <= a for a, b in zip(self.candidates, self.candidates[1:])):
            raise ContractViolationError("candidates must be unique and ordered")

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self) -> Iterator[Itemset]:
        return iter(self.candidates)


@dataclass(frozen=True)
class MiningResult:
    """Frequent itemsets per level plus the scan ledger and a config echo.

    `levels[k]` maps each frequent k-itemset to its support, in canonical
    order; levels run contiguously from 1 to the last non-empty level. Treat
    as immutable.
    """

    levels: dict[int, dict[Itemset, int]]
    ledger: ScanLedger
    min_support: int | float
    min_support_count: int
    variant: str
    candidate_strategy: str

    def __post_init__(self):
        if sorted(self.levels) != list(range(1, len(self.levels) + 1)):
            raise ContractViolationError("levels must be contiguous from 1")
        if any(not level for level in self.levels.values()):
            raise ContractViolationError("levels must not contain empty entries")

    def support_of(self, itemset: Sequence[int]) -> int | None:
        """Support of a frequent itemset, or None if it is not frequent."""
        key = tuple(itemset)
        return self.levels.get(len(key), {}).get(key)

    def frequent(self) -> Iterator[tuple[Itemset, int]]:
        """All (itemset, support) pairs, level by level, canonical order."""
        for k in sorted(self.levels):
            yield from self.levels[k].items()

    @property
    def max_level(self) -> int:
        return max(self.levels, default=0)

    @property
    def total_frequent(self) -> int:
        return sum(len(level) for level in self.levels.values())


def compute_l1(
    db: TransactionDb, min_support: int, ledger: ScanLedger | None = None
) -> L1Index:
    """One full pass over the database building the frequent-singleton index.

    Every item with support >= min_support keeps its exact support and the
    complete sorted list of transaction ids containing it. The ledger records
    the pass as len(db) * num_distinct_items level-1 examinations, the same
    for both counting variants.
    """
    if min_support < 1:
        raise ConfigurationError(f"min_support must be at least 1, got {min_support}")
    found: dict[int, list[int]] = {}
    for tid, txn in enumerate(db.transactions):
        for item in txn:
            found.setdefault(item, []).append(tid)
    if ledger is not None:
        ledger.add(1, len(db) * db.num_items)
    return L1Index(
        {item: tids for item, tids in found.items() if len(tids) >= min_support}
    )


def generate_candidates_join(
    prev: Iterable[Itemset], prune: bool = True
) -> CandidateSet:
    """Self-join of the previous level's frequent itemsets.

    Two (k-1)-itemsets sharing their first k-2 items merge into a k-itemset.
    With prune=True, candidates having any (k-1)-subset absent from `prev`
    are dropped (no such subset could be frequent, so neither can the
    candidate).
    """
    prev_list = sorted(set(map(tuple, prev)))
    if not prev_list:
        return CandidateSet(2, ())
    size = len(prev_list[0])
    if any(len(p) != size for p in prev_list):
        raise ContractViolationError("itemsets to join must all have the same size")
    if size < 1:
        raise ContractViolationError("cannot join empty itemsets")
    prev_set = set(prev_list)
    out = []
    for i, left in enumerate(prev_list):
        for right in prev_list[i + 1 :]:
            if left[:-1] != right[:-1]:
                break  # sorted order: itemsets sharing the prefix are contiguous
            cand = left + (right[-1],)
            if prune and any(
                sub not in prev_set for sub in itertools.combinations(cand, size)
            ):
                continue
            out.append(cand)
    return CandidateSet(size + 1, tuple(out))


def generate_candidates_combinations(l1: L1Index, k: int) -> CandidateSet:
    """Every k-combination of the frequent single items, canonical order.

    Asking for more items than the index holds yields an empty set, not an
    error.
    """
    if k < 2:
        raise ContractViolationError(f"combination level must be at least 2, got {k}")
    return CandidateSet(k, tuple(itertools.combinations(l1.items, k)))


def min_support_item(candidate: Sequence[int], l1: L1Index) -> int:
    """The candidate member with the smallest L1 support; ties break toward
    the smaller item id."""
    cand = tuple(candidate)
    if not cand:
        raise ContractViolationError("candidate must be non-empty")
    return min(cand, key=lambda item: (l1.support(item), item))


def target_tids(item: int, l1: L1Index) -> tuple[int, ...]:
    """The stored transaction-id list for `item`, unmodified."""
    return l1.tids(item)


def _contains(transaction: Itemset, candidate: Itemset) -> bool:
    # Linear merge of two sorted id sequences.
    n = len(transaction)
    i = 0
    for item in candidate:
        while i < n and transaction[i] < item:
            i += 1
        if i == n or transaction[i] != item:
            return False
        i += 1
    return True


def _candidate_list(candidates: CandidateSet | Iterable[Itemset]) -> tuple[Itemset, ...]:
    if isinstance(candidates, CandidateSet):
        return candidates.candidates
    cands = tuple(map(tuple, candidates))
    if cands:
        size = len(cands[0])
        if any(len(c) != size for c in cands):
            raise ContractViolationError("candidates must all have the same size")
    return cands


def count_support_full(
    candidates: CandidateSet | Iterable[Itemset],
    db: TransactionDb,
    ledger: ScanLedger | None = None,
) -> dict[Itemset, int]:
    """Support of every candidate by scanning the whole database.

    Every candidate examines every transaction, so the level gains
    len(candidates) * len(db) ledger examinations.
    """
    cands = _candidate_list(candidates)
    counts = {
        cand: sum(1 for txn in db.transactions if _contains(txn, cand))
        for cand in cands
    }
    if ledger is not None and cands:
        ledger.add(len(cands[0]), len(cands) * len(db))
    return counts


def count_support_restricted(
    candidate: Sequence[int],
    db: TransactionDb,
    l1: L1Index,
    ledger: ScanLedger | None = None,
) -> int:
    """Support counted only over the TID list of the candidate's min-support member.

    A transaction containing the whole candidate necessarily contains that
    member, so it appears in the member's TID list and the restricted count
    equals the full-database support. The ledger gains one examination per
    TID in the restricted list.
    """
    cand = tuple(candidate)
    tids = target_tids(min_support_item(cand, l1), l1)
    count = sum(1 for tid in tids if _contains(db.transactions[tid], cand))
    if ledger is not None:
        ledger.add(len(cand), len(tids))
    return count


def resolve_min_support(min_support: int | float, num_transactions: int) -> int:
    """Absolute support floor from either an int count or a float fraction.

    Ints pass through and must be >= 1. Floats must lie in (0, 1] and convert
    by an exact decimal ceiling of fraction * num_transactions (0.1 of 30
    transactions is exactly 3, never 4), clamped to at least 1.
    """
    if isinstance(min_support, bool) or not isinstance(min_support, (int, float)):
        raise ConfigurationError(
            f"min_support must be an int count or float fraction, got {min_support!r}"
        )
    if isinstance(min_support, int):
        if min_support < 1:
            raise ConfigurationError(
                f"absolute min_support must be at least 1, got {min_support}"
            )
        return min_support
    if not 0.0 < min_support <= 1.0:
        raise ConfigurationError(
            f"fractional min_support must lie in (0, 1], got {min_support}"
        )
    return max(1, math.ceil(Fraction(str(min_support)) * num_transactions))


def run_apriori(
    db: TransactionDb,
    min_support: int | float,
    variant: str = "improved",
    candidate_strategy: str = "join",
    threads: int = 1,
) -> MiningResult:
    """Level-wise mining: L1 from a full pass, then candidate generation and
    counting per level until no k-itemset reaches the support floor.

    `variant` picks the counting strategy (full scan vs TID-restricted);
    `candidate_strategy` picks how level-k candidates arise ("join" is the
    pruned self-join, "join_unpruned" skips the subset filter, "combinations"
    enumerates all k-combinations of frequent single items). All variants and
    strategies return identical itemsets and supports; only the ledger
    differs. `threads` splits counting across workers without changing any
    output.
    """
    if variant not in VARIANTS:
        raise ConfigurationError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if candidate_strategy not in CANDIDATE_STRATEGIES:
        raise ConfigurationError(
            f"candidate_strategy must be one of {CANDIDATE_STRATEGIES}, "
            f"got {candidate_strategy!r}"
        )
    if threads < 1:
        raise ConfigurationError(f"threads must be at least 1, got {threads}")
    support_floor = resolve_min_support(min_support, len(db))
    ledger = ScanLedger()
    l1 = compute_l1(db, support_floor, ledger)
    levels: dict[int, dict[Itemset, int]] = {}
    if len(l1):
        levels[1] = {(item,): l1.support(item) for item in l1.items}
    k = 2
    while levels.get(k - 1):
        if candidate_strategy == "combinations":
            candidates = generate_candidates_combinations(l1, k)
        else:
            candidates = generate_candidates_join(
                levels[k - 1], prune=candidate_strategy == "join"
            )
        counts = _count_level(candidates, db, l1, variant, ledger, threads)
        frequent = {c: n for c, n in counts.items() if n >= support_floor}
        if frequent:
            levels[k] = frequent
        k += 1
    return MiningResult(
        levels=levels,
        ledger=ledger,
        min_support=min_support,
        min_support_count=support_floor,
        variant=variant,
        candidate_strategy=candidate_strategy,
    )


def _count_level(
    candidates: CandidateSet,
    db: TransactionDb,
    l1: L1Index,
    variant: str,
    ledger: ScanLedger,
    threads: int,
) -> dict[Itemset, int]:
    if not candidates.candidates:
        return {}
    chunks = _split_chunks(candidates.candidates, threads)
    if len(chunks) == 1:
        counts, scratch = _count_chunk(chunks[0], candidates.level, db, l1, variant)
        ledger.absorb(scratch)
        return counts
    # Counting is a pure function per chunk; ledger increments merge
    # associatively, and contiguous chunks keep the canonical order.
    merged: dict[Itemset, int] = {}
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        results = pool.map(
            lambda chunk: _count_chunk(chunk, candidates.level, db, l1, variant), chunks
        )
        for counts, scratch in results:
            merged.update(counts)
            ledger.absorb(scratch)
    return merged


def _count_chunk(
    chunk: tuple[Itemset, ...],
    level: int,
    db: TransactionDb,
    l1: L1Index,
    variant: str,
) -> tuple[dict[Itemset, int], ScanLedger]:
    scratch = ScanLedger()
    if variant == "classic":
        counts = count_support_full(CandidateSet(level, chunk), db, scratch)
    else:
        counts = {
            cand: count_support_restricted(cand, db, l1, scratch) for cand in chunk
        }
    return counts, scratch


def _split_chunks(
    items: tuple[Itemset, ...], parts: int
) -> list[tuple[Itemset, ...]]:
    parts = min(parts, len(items))
    size, extra = divmod(len(items), parts)
    chunks = []
    start = 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        chunks.append(items[start:end])
        start = end
    return chunks
