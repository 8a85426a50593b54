"""Corpus loading: TSV records of "<decimal weight> TAB <phrase>" per line.

Normalization is deliberately simple: trim the phrase, per-character
lowercase, merge duplicates.  Anything that does not parse is counted and
skipped; only failing to read the source at all is fatal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .core import MAX_WEIGHT, PhraseEntry


@dataclass
class CorpusStats:
    """Bookkeeping for one load; every input line lands in exactly one bucket,
    so lines_read == entries_kept + duplicates_merged + malformed_skipped."""

    lines_read: int = 0
    entries_kept: int = 0
    duplicates_merged: int = 0
    malformed_skipped: int = 0
    bytes_read: int = 0


class IngestError(Exception):
    """The corpus source could not be read; bytes_read says how far the load got."""

    def __init__(self, message: str, bytes_read: int = 0):
        super().__init__(message)
        self.bytes_read = bytes_read


def load_tsv(source: Iterable[Union[bytes, str]], merge: str = "max"):
    """Parse a byte stream of weight-TAB-phrase lines into unique entries.

    A well-formed line has exactly one tab, an ASCII decimal weight within
    the 64-bit range on the left and a non-empty (after trimming) phrase on
    the right.  Phrases are lowercased; repeats of the same phrase merge by
    keeping the maximum weight, or their sum (saturating) with merge="sum".

    Returns (entries, CorpusStats).  Entries come out in first-seen order,
    so re-ingesting the same source is fully deterministic.

    Raises IngestError if the source fails mid-read, ValueError for an
    unknown merge policy.
    """
    if merge not in ("max", "sum"):
        raise ValueError(f"merge must be 'max' or 'sum', got {merge!r}")
    by_text: dict[str, int] = {}
    stats = CorpusStats()
    try:
        for raw in source:
            stats.bytes_read += len(raw)
            stats.lines_read += 1
            if isinstance(raw, (bytes, bytearray)):
                try:
                    line = raw.decode("utf-8")
                except UnicodeDecodeError:
                    stats.malformed_skipped += 1
                    continue
            else:
                line = raw
            parts = line.split("\t")
            if len(parts) != 2:
                stats.malformed_skipped += 1
                continue
            wfield = parts[0].strip()
            text = parts[1].strip().lower()
            if not text or not wfield.isascii() or not wfield.isdigit():
                stats.malformed_skipped += 1
                continue
            weight = int(wfield)
            if weight > MAX_WEIGHT:
                stats.malformed_skipped += 1
                continue
            seen = by_text.get(text)
            if seen is None:
                by_text[text] = weight
                stats.entries_kept += 1
            else:
                stats.duplicates_merged += 1
                if merge == "sum":
                    by_text[text] = min(seen + weight, MAX_WEIGHT)
                elif weight > seen:
                    by_text[text] = weight
    except OSError as exc:
        raise IngestError(
            f"corpus read failed after {stats.bytes_read} bytes: {exc}",
            stats.bytes_read,
        ) from exc
    return [PhraseEntry(t, w) for t, w in by_text.items()], stats


def load_file(path, merge: str = "max"):
    """load_tsv over a file on disk; unreadable paths raise IngestError."""
    try:
        with open(path, "rb") as fh:
            return load_tsv(fh, merge=merge)
    except OSError as exc:
        raise IngestError(f"cannot read corpus {path}: {exc}") from exc
