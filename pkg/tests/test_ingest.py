"""TSV corpus parsing: normalization, merging, malformed-line accounting."""

import io
import random

import pytest

from prefixtop.core import MAX_WEIGHT, PhraseEntry
from prefixtop.ingest import CorpusStats, IngestError, load_file, load_tsv


def load_bytes(data: bytes, **kw):
    return load_tsv(io.BytesIO(data), **kw)


def test_single_record():
    entries, stats = load_bytes(b"18\tbacon\n")
    assert entries == [PhraseEntry("bacon", 18)]
    assert stats == CorpusStats(1, 1, 0, 0, len(b"18\tbacon\n"))


def test_empty_source():
    entries, stats = load_bytes(b"")
    assert entries == []
    assert stats == CorpusStats()


def test_case_collision_keeps_max_weight():
    entries, stats = load_bytes(b"5\tcat\n9\tCat\n")
    assert entries == [PhraseEntry("cat", 9)]
    assert stats.duplicates_merged == 1
    assert stats.entries_kept == 1


def test_merge_keeps_max_regardless_of_order():
    entries, _ = load_bytes(b"9\tcat\n5\tcat\n")
    assert entries == [PhraseEntry("cat", 9)]


def test_sum_merge_mode():
    entries, stats = load_bytes(b"5\tcat\n9\tcat\n", merge="sum")
    assert entries == [PhraseEntry("cat", 14)]
    assert stats.duplicates_merged == 1


def test_sum_merge_saturates():
    big = str(MAX_WEIGHT - 1).encode()
    entries, _ = load_bytes(big + b"\tcat\n7\tcat\n", merge="sum")
    assert entries == [PhraseEntry("cat", MAX_WEIGHT)]


def test_unknown_merge_mode_rejected():
    with pytest.raises(ValueError):
        load_bytes(b"1\tcat\n", merge="average")


def test_text_trimmed_and_lowercased():
    entries, _ = load_bytes(b"3\t  Auto Complete \n")
    assert entries == [PhraseEntry("auto complete", 3)]


def test_inner_spaces_survive():
    entries, _ = load_bytes(b"3\ta  b\n")
    assert entries == [PhraseEntry("a  b", 3)]


def test_crlf_lines():
    entries, _ = load_bytes(b"7\tdog\r\n8\tcat\r\n")
    assert sorted(entries) == [PhraseEntry("cat", 8), PhraseEntry("dog", 7)]


def test_missing_final_newline():
    entries, _ = load_bytes(b"7\tdog")
    assert entries == [PhraseEntry("dog", 7)]


@pytest.mark.parametrize(
    "line",
    [
        b"no tab here\n",
        b"1\ttwo\tfields\n",
        b"\tno weight\n",
        b"x7\tbad weight\n",
        b"7.5\tfloat weight\n",
        b"-7\tnegative\n",
        b"+7\tsigned\n",
        b"7\t\n",
        b"7\t   \n",
        b"\n",
        b"9999999999999999999999\ttoo heavy\n",
        b"18\xff\tbad utf8\n",
    ],
)
def test_malformed_lines_are_skipped_not_fatal(line):
    entries, stats = load_bytes(b"1\tok\n" + line + b"2\talso ok\n")
    assert sorted(e.text for e in entries) == ["also ok", "ok"]
    assert stats.malformed_skipped == 1
    assert stats.lines_read == 3


def test_weight_at_64_bit_boundary():
    top = str(MAX_WEIGHT).encode()
    entries, stats = load_bytes(top + b"\tmax\n" + str(MAX_WEIGHT + 1).encode() + b"\tover\n")
    assert entries == [PhraseEntry("max", MAX_WEIGHT)]
    assert stats.malformed_skipped == 1


def test_nonascii_digits_rejected():
    entries, stats = load_bytes("٥\tarabic five\n".encode("utf-8"))
    assert entries == []
    assert stats.malformed_skipped == 1


def test_stats_buckets_always_sum_to_lines_read():
    rng = random.Random(77)
    fragments = [b"1\tgood\n", b"2\tgood\n", b"junk\n", b"3\tother\n",
                 b"\xff\xfe\n", b"4\t\n", b"5\tgood\n"]
    for _ in range(50):
        rng.shuffle(fragments)
        blob = b"".join(fragments)
        _, stats = load_bytes(blob)
        assert stats.lines_read == (
            stats.entries_kept + stats.duplicates_merged + stats.malformed_skipped
        )
        assert stats.bytes_read == len(blob)


def test_outputs_are_unique_lowercase_and_clean():
    data = b"1\tCat\n2\tDOG\n3\tcat\n4\tBird House\n"
    entries, _ = load_bytes(data)
    texts = [e.text for e in entries]
    assert len(set(texts)) == len(texts)
    for t in texts:
        assert t == t.lower().strip()
        assert "\t" not in t and "\n" not in t


def test_reingest_is_deterministic():
    data = b"5\tcat\n7\tdog\n9\tCat\nbad line\n3\tape\n"
    first = load_bytes(data)
    second = load_bytes(data)
    assert first == second


def test_failing_stream_raises_ingest_error_with_context():
    class Flaky:
        def __init__(self):
            self.sent = 0

        def __iter__(self):
            return self

        def __next__(self):
            if self.sent >= 2:
                raise OSError("device gone")
            self.sent += 1
            return b"1\tline\n"

    with pytest.raises(IngestError) as err:
        load_tsv(Flaky())
    assert err.value.bytes_read == 2 * len(b"1\tline\n")
    assert "device gone" in str(err.value)


def test_load_file_roundtrip(tmp_path):
    p = tmp_path / "corpus.tsv"
    p.write_bytes(b"18\tbacon\n6\tbad\n")
    entries, stats = load_file(p)
    assert sorted(entries) == [PhraseEntry("bacon", 18), PhraseEntry("bad", 6)]
    assert stats.entries_kept == 2


def test_load_file_missing_path(tmp_path):
    with pytest.raises(IngestError, match="absent"):
        load_file(tmp_path / "absent.tsv")
