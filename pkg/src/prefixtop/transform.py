"""Approximate matching via canonicalized keys.

Phrases are collapsed through a fixed-order pipeline (stop-word removal,
vowel/punctuation stripping, optional phonetic digit coding, run collapsing)
and indexed under the collapsed key; the query is collapsed the same way, so
exact prefix search over keys gives vowel- and spelling-tolerant matching.
Each key stores the original phrases that produced it, ranked by weight, and
queries expand keys back to originals lazily.

The stage order is fixed and not reorderable; stages may only be dropped
from the tail (plus the optional phonetic stage), which is how the
multi-stage index family is built.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import groupby
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .core import Index, PhraseEntry, Suggestion, TopKStream, build_index

DEFAULT_STOPWORDS = frozenset({"a", "the", "have", "has", "of"})

_VOWELS = frozenset("aeiou")

# Russell phonetic classes; h, w and y carry no consonant signal and vanish.
_SOUNDEX_CLASSES = {
    **dict.fromkeys("bfpv", "1"),
    **dict.fromkeys("cgjkqsxz", "2"),
    **dict.fromkeys("dt", "3"),
    "l": "4",
    **dict.fromkeys("mn", "5"),
    "r": "6",
}
_SOUNDEX_SILENT = frozenset("hwy")


def remove_stopwords(text: str, stopwords: frozenset[str] = DEFAULT_STOPWORDS) -> str:
    """Drop whole words on the stop list; survivors rejoin with single spaces."""
    return " ".join(w for w in text.split() if w not in stopwords)


def strip_to_consonants(text: str) -> str:
    """Remove vowels, whitespace and punctuation; keep consonants and digits in order."""
    return "".join(ch for ch in text if ch.isalnum() and ch not in _VOWELS)


def soundex_digits(text: str) -> str:
    """Map consonants to their phonetic digit class; h/w/y drop, digits pass through.

    Expects consonant/digit input (run after strip_to_consonants).
    """
    return "".join(
        _SOUNDEX_CLASSES.get(ch, ch) for ch in text if ch not in _SOUNDEX_SILENT
    )


def collapse_runs(text: str) -> str:
    """Each maximal run of one repeated character becomes a single occurrence."""
    return "".join(ch for ch, _ in groupby(text))


@dataclass(frozen=True)
class TransformConfig:
    """Pipeline settings: the stop list and whether the phonetic stage runs.

    The stage order itself is fixed; only the optional phonetic stage can
    be toggled.
    """

    stopwords: frozenset[str] = DEFAULT_STOPWORDS
    soundex_enabled: bool = False

    @property
    def stages(self) -> tuple[str, ...]:
        names = ["remove_stopwords", "strip_to_consonants"]
        if self.soundex_enabled:
            names.append("soundex_digits")
        names.append("collapse_runs")
        return tuple(names)


DEFAULT_CONFIG = TransformConfig()


def _apply_stage(stage: str, text: str, config: TransformConfig) -> str:
    if stage == "remove_stopwords":
        return remove_stopwords(text, config.stopwords)
    if stage == "strip_to_consonants":
        return strip_to_consonants(text)
    if stage == "soundex_digits":
        return soundex_digits(text)
    if stage == "collapse_runs":
        return collapse_runs(text)
    raise ValueError(f"unknown pipeline stage {stage!r}")


def fuzzy_key(
    text: str,
    config: TransformConfig = DEFAULT_CONFIG,
    stages: Optional[Sequence[str]] = None,
) -> str:
    """Collapse lowercased text through the pipeline (or a stage subset).

    May return "": a phrase or query that nothing survives of has no key.
    Idempotent while the phonetic stage is off.
    """
    for stage in config.stages if stages is None else stages:
        text = _apply_stage(stage, text, config)
    return text


@dataclass(frozen=True)
class FuzzyIndex:
    """Prefix index over collapsed keys, each key mapping back to its originals.

    originals holds, per key, the source phrases sorted by (weight desc,
    text asc); the key's indexed weight is the head of that list.  Every
    phrase with a non-empty key appears under exactly one key.  Immutable
    after build, same sharing contract as Index.
    """

    index: Index
    originals: dict[str, tuple[PhraseEntry, ...]]
    config: TransformConfig
    stages: tuple[str, ...]


def build_fuzzy_index(
    entries: Iterable[PhraseEntry],
    config: TransformConfig = DEFAULT_CONFIG,
    stages: Optional[Sequence[str]] = None,
) -> FuzzyIndex:
    """Group entries by collapsed key and index the keys by max original weight.

    Entries whose key collapses to "" are dropped: no query can reach them.
    """
    applied = tuple(config.stages if stages is None else stages)
    groups: dict[str, list[PhraseEntry]] = {}
    for e in entries:
        text, weight = e
        key = fuzzy_key(text, config, applied)
        if key:
            groups.setdefault(key, []).append(PhraseEntry(text, weight))

    originals: dict[str, tuple[PhraseEntry, ...]] = {}
    key_entries = []
    for key, group in groups.items():
        group.sort(key=lambda e: (-e.weight, e.text))
        originals[key] = tuple(group)
        key_entries.append(PhraseEntry(key, group[0].weight))
    return FuzzyIndex(build_index(key_entries), originals, config, applied)


def fuzzy_top_k(findex: FuzzyIndex, q: str, k: int) -> list[Suggestion]:
    """The k heaviest originals whose key starts with the query's key.

    Ordered by (weight desc, text asc).  A query that collapses to the
    empty key matches nothing: it carries no signal and matching
    everything would flood the caller.

    Keys are drawn lazily from the key-level stream; because a key is
    indexed at its heaviest original's weight, no unexplored key can hide
    an original that outranks what the merge heap already holds.
    """
    if k <= 0:
        return []
    key = fuzzy_key(q, findex.config, findex.stages)
    if not key:
        return []
    keys = TopKStream(findex.index, key)
    # (-weight, text, key, next slot in that key's originals)
    merge: list[tuple[int, str, str, int]] = []
    out: list[Suggestion] = []
    upcoming = next(keys, None)
    while len(out) < k:
        while upcoming is not None and (not merge or upcoming.weight >= -merge[0][0]):
            head = findex.originals[upcoming.text][0]
            heapq.heappush(merge, (-head.weight, head.text, upcoming.text, 1))
            upcoming = next(keys, None)
        if not merge:
            break
        negw, text, key_text, pos = heapq.heappop(merge)
        out.append(Suggestion(text, -negw))
        group = findex.originals[key_text]
        if pos < len(group):
            nxt = group[pos]
            heapq.heappush(merge, (-nxt.weight, nxt.text, key_text, pos + 1))
    return out


def build_stage_indexes(
    entries: Iterable[PhraseEntry], config: TransformConfig = DEFAULT_CONFIG
) -> list[FuzzyIndex]:
    """One FuzzyIndex per canonicalization level, least to most aggressive.

    Levels: stop-word removal alone, plus consonant stripping, plus run
    collapsing, and (when enabled) the full pipeline with phonetic coding.
    """
    entries = list(entries)
    base = ("remove_stopwords", "strip_to_consonants")
    family = [base[:1], base, base + ("collapse_runs",)]
    if config.soundex_enabled:
        family.append(base + ("soundex_digits", "collapse_runs"))
    return [build_fuzzy_index(entries, config, stages) for stages in family]


def multi_stage_top_k(
    stage_indexes: Sequence[FuzzyIndex], q: str, k: int
) -> list[Suggestion]:
    """Union the per-level answers, dedup by text keeping the heaviest.

    Querying every level with the same k is sufficient: anything in the
    union's top k outranks fewer than k texts in whichever level carries
    its maximum weight.
    """
    if k <= 0:
        return []
    best: dict[str, int] = {}
    for findex in stage_indexes:
        for s in fuzzy_top_k(findex, q, k):
            if s.weight > best.get(s.text, -1):
                best[s.text] = s.weight
    ranked = sorted(best.items(), key=lambda item: (-item[1], item[0]))
    return [Suggestion(text, weight) for text, weight in ranked[:k]]


def load_stopwords(path) -> frozenset[str]:
    """Read a stop list: UTF-8, one word per line, '#' lines and blanks ignored."""
    words = set()
    for raw in Path(path).read_text("utf-8").splitlines():
        word = raw.strip()
        if word and not word.startswith("#"):
            words.add(word.lower())
    return frozenset(words)
