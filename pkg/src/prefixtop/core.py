"""Ranked prefix autocomplete over a sorted phrase array.

All phrases live in one lexicographically sorted array, so the candidates
for any prefix form a single contiguous index range, found with two binary
searches.  A segment tree over the weights answers "heaviest phrase in
[lo, hi]" in O(log n).  A query keeps a private max-heap of candidate
ranges: pop the range whose maximum is heaviest, emit that phrase, split
the range around it, push the halves back.  Each emitted result costs a
constant number of heap operations plus O(log n) tree reads, so top-k is
O(k log n) and never touches the part of the candidate list it does not
report.

The tree is an implicit array (children of node i at 2i and 2i+1) sized to
the next power of two, never more than 4n cells for n phrases.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left
from dataclasses import dataclass
from itertools import islice
from typing import Iterable, Iterator, NamedTuple, Optional

import numpy as np

try:
    from . import _kernel
except ImportError:  # pragma: no cover - queries fall back to the pure-Python path
    _kernel = None

# Weights are non-negative so the padded tree slots can hold -1 and lose
# every comparison without a special case.
MAX_WEIGHT = 2**63 - 1

_MAX_CODEPOINT = 0x10FFFF


class PhraseEntry(NamedTuple):
    """One completion candidate: phrase text and its non-negative weight."""

    text: str
    weight: int


class Suggestion(NamedTuple):
    """One query result; results are ordered heaviest first."""

    text: str
    weight: int


class RangeCandidate(NamedTuple):
    """An inclusive index range plus the weight and position of its heaviest phrase."""

    lo: int
    hi: int
    max_weight: int
    argmax: int


@dataclass
class QueryStats:
    """Instrumentation counters accumulated over one query.

    node_visits counts segment-tree cells read, heap_pops counts results
    taken off the candidate heap (== number of suggestions emitted).
    """

    node_visits: int = 0
    heap_pops: int = 0


class Index:
    """Immutable search structure: sorted phrases plus a range-max segment tree.

    Build with :func:`build_index`.  Safe for any number of concurrent
    readers; to change the corpus, build a new Index and swap the reference.
    """

    __slots__ = ("entries", "_texts", "_size", "_cap", "_maxw", "_arg")

    def __init__(self, entries, texts, cap, maxw, arg):
        self.entries: tuple[PhraseEntry, ...] = entries
        self._texts: list[str] = texts
        self._size: int = len(entries)
        self._cap: int = cap
        self._maxw: np.ndarray = maxw
        self._arg: np.ndarray = arg

    def __len__(self) -> int:
        return self._size

    @property
    def node_count(self) -> int:
        """Number of allocated segment-tree cells (including the unused slot 0)."""
        return len(self._maxw)

    def __repr__(self) -> str:
        return f"Index({self._size} phrases, {self.node_count} tree nodes)"


def build_index(entries: Iterable[PhraseEntry]) -> Index:
    """Build an immutable Index from (text, weight) pairs.

    Texts must be unique (deduplicate during ingestion) and non-empty,
    weights integers in [0, MAX_WEIGHT].  O(n log n) for the sort, O(n)
    for the tree.

    Raises ValueError on duplicate or empty texts and out-of-range weights.
    """
    ordered = [e if type(e) is PhraseEntry else PhraseEntry._make(e) for e in entries]
    ordered.sort(key=lambda e: e.text)
    n = len(ordered)

    texts: list[str] = []
    prev: Optional[str] = None
    for e in ordered:
        if not isinstance(e.text, str) or not e.text:
            raise ValueError(f"phrase text must be a non-empty string, got {e.text!r}")
        if not isinstance(e.weight, int) or not 0 <= e.weight <= MAX_WEIGHT:
            raise ValueError(f"weight for {e.text!r} outside [0, 2**63): {e.weight!r}")
        if e.text == prev:
            raise ValueError(f"duplicate phrase {e.text!r}; merge weights before indexing")
        prev = e.text
        texts.append(e.text)

    if n == 0:
        empty = np.empty(0, dtype=np.int64)
        return Index((), [], 0, empty, empty)

    cap = 1
    while cap < n:
        cap <<= 1

    maxw = np.full(2 * cap, -1, dtype=np.int64)
    arg = np.zeros(2 * cap, dtype=np.int64)
    maxw[cap : cap + n] = [e.weight for e in ordered]
    arg[cap:] = np.arange(cap, dtype=np.int64)

    # Combine whole levels at once; ties keep the left child so argmax is
    # always the smallest index attaining the maximum.
    level = cap >> 1
    while level:
        lw = maxw[2 * level : 4 * level : 2]
        rw = maxw[2 * level + 1 : 4 * level : 2]
        right_wins = rw > lw
        maxw[level : 2 * level] = np.where(right_wins, rw, lw)
        arg[level : 2 * level] = np.where(
            right_wins, arg[2 * level + 1 : 4 * level : 2], arg[2 * level : 4 * level : 2]
        )
        level >>= 1

    maxw.setflags(write=False)
    arg.setflags(write=False)
    return Index(tuple(ordered), texts, cap, maxw, arg)


def _prefix_successor(q: str) -> Optional[str]:
    """Smallest string greater than every string starting with q, or None.

    None only when q is all U+10FFFF, in which case no upper bound exists.
    """
    i = len(q) - 1
    while i >= 0 and ord(q[i]) == _MAX_CODEPOINT:
        i -= 1
    if i < 0:
        return None
    return q[:i] + chr(ord(q[i]) + 1)


def prefix_bounds(index: Index, q: str) -> Optional[tuple[int, int]]:
    """Locate the contiguous run of phrases starting with q.

    Returns inclusive (lo, hi) positions in the sorted order, or None when
    nothing matches.  The empty prefix matches everything.  Two binary
    searches: O(log n) string comparisons.
    """
    n = index._size
    if n == 0:
        return None
    if not q:
        return (0, n - 1)
    texts = index._texts
    lo = bisect_left(texts, q)
    if lo == n or not texts[lo].startswith(q):
        return None
    upper = _prefix_successor(q)
    hi = (n if upper is None else bisect_left(texts, upper, lo)) - 1
    return (lo, hi)


def range_max(
    index: Index, lo: int, hi: int, stats: Optional[QueryStats] = None
) -> tuple[int, int]:
    """Return (argmax, max_weight) for the inclusive range [lo, hi].

    argmax is the smallest position attaining the maximum.  Walks the
    implicit tree bottom-up from both ends, reading O(log n) cells; a
    whole-array query is answered from the root alone.

    Raises IndexError unless 0 <= lo <= hi < len(index).
    """
    n = index._size
    if lo < 0 or hi >= n or lo > hi:
        raise IndexError(f"range [{lo}, {hi}] invalid for index of size {n}")
    maxw = index._maxw
    arg = index._arg
    if lo == 0 and hi == n - 1:
        # Root covers all real leaves; padding holds -1 and never wins.
        if stats is not None:
            stats.node_visits += 1
        return int(arg[1]), int(maxw[1])

    best_w = -1
    best_a = -1
    visits = 0
    l = lo + index._cap
    r = hi + index._cap + 1
    while l < r:
        if l & 1:
            w = maxw[l]
            if w > best_w or (w == best_w and arg[l] < best_a):
                best_w = w
                best_a = arg[l]
            visits += 1
            l += 1
        if r & 1:
            r -= 1
            w = maxw[r]
            if w > best_w or (w == best_w and arg[r] < best_a):
                best_w = w
                best_a = arg[r]
            visits += 1
        l >>= 1
        r >>= 1
    if stats is not None:
        stats.node_visits += visits
    return int(best_a), int(best_w)


class TopKStream:
    """Lazily yields suggestions for a prefix, heaviest first.

    Drives the range-splitting walk one result at a time so callers can
    stop early; the candidate heap is observable through :meth:`pending`
    for inspection and testing.  Each __next__ costs O(log n).
    """

    __slots__ = ("_index", "_stats", "_heap", "emitted")

    def __init__(self, index: Index, q: str, stats: Optional[QueryStats] = None):
        self._index = index
        self._stats = stats
        # Heap entries are (-max_weight, argmax, lo, hi): heaviest first,
        # ties broken toward the smaller phrase position.
        self._heap: list[tuple[int, int, int, int]] = []
        self.emitted: list[int] = []
        bounds = prefix_bounds(index, q)
        if bounds is not None:
            lo, hi = bounds
            a, w = range_max(index, lo, hi, stats)
            self._heap.append((-w, a, lo, hi))

    def __iter__(self) -> Iterator[Suggestion]:
        return self

    def __next__(self) -> Suggestion:
        if not self._heap:
            raise StopIteration
        negw, a, lo, hi = heapq.heappop(self._heap)
        if self._stats is not None:
            self._stats.heap_pops += 1
        index = self._index
        if a > lo:
            la, lw = range_max(index, lo, a - 1, self._stats)
            heapq.heappush(self._heap, (-lw, la, lo, a - 1))
        if a < hi:
            ra, rw = range_max(index, a + 1, hi, self._stats)
            heapq.heappush(self._heap, (-rw, ra, a + 1, hi))
        self.emitted.append(a)
        return Suggestion(index._texts[a], -negw)

    def pending(self) -> tuple[RangeCandidate, ...]:
        """Unexplored candidate ranges, ordered heaviest first."""
        return tuple(
            RangeCandidate(lo, hi, -negw, a) for negw, a, lo, hi in sorted(self._heap)
        )


def top_k(
    index: Index, q: str, k: int, stats: Optional[QueryStats] = None
) -> list[Suggestion]:
    """The k heaviest phrases starting with q.

    Ordered by weight descending, ties by sorted position ascending (i.e.
    lexicographically smaller phrase first).  Returns fewer than k when
    fewer match and [] when nothing does or k <= 0.  O(k log n) time,
    O(k) transient space.

    When no stats collection is requested the walk runs in a compiled
    kernel; pass a QueryStats to use the instrumented pure-Python path.
    """
    if k <= 0:
        return []
    if stats is None and _kernel is not None:
        bounds = prefix_bounds(index, q)
        if bounds is None:
            return []
        lo, hi = bounds
        k_eff = min(k, hi - lo + 1)
        out = np.empty(k_eff, dtype=np.int64)
        count = _kernel.topk_into(
            index._maxw, index._arg, index._cap, index._size, lo, hi, k_eff, out
        )
        entries = index.entries
        return [Suggestion(*entries[i]) for i in out[:count]]
    return list(islice(TopKStream(index, q, stats), k))
