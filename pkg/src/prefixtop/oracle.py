"""Brute-force reference implementation for differential testing.

Deliberately naive: filter every phrase, sort the matches, slice.  No
shared code with the indexed engine, so agreement between the two is
meaningful evidence.  O(n log n) per query; only for tests and debugging.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import PhraseEntry, Suggestion


def candidate_list(entries: Sequence[PhraseEntry], q: str) -> list[int]:
    """Positions (in lexicographic phrase order) of all phrases starting with q.

    Returned ascending; over a sorted corpus these always form one
    contiguous run, which the property tests assert.
    """
    ordered = sorted(entries, key=lambda e: e[0])
    return [i for i, e in enumerate(ordered) if e[0].startswith(q)]


def ranked_matches(entries: Sequence[PhraseEntry], q: str) -> list[Suggestion]:
    """Every match for q, sorted by weight descending then phrase ascending."""
    ordered = sorted(entries, key=lambda e: e[0])
    matches = [(e, i) for i, e in enumerate(ordered) if e[0].startswith(q)]
    matches.sort(key=lambda pair: (-pair[0][1], pair[1]))
    return [Suggestion(*e) for e, _ in matches]


def naive_top_k(entries: Iterable[PhraseEntry], q: str, k: int) -> list[Suggestion]:
    """Reference answer: scan everything, rank, take the first k."""
    if k <= 0:
        return []
    return ranked_matches(list(entries), q)[:k]
