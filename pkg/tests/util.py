"""Shared corpus builders for the test suite."""

import random

from prefixtop.core import PhraseEntry

# Small worked-example corpus used across the suite.  Sorted positions:
# 0 babble, 1 babe, 2 baboon, 3 baby, 4 bach, 5 back, 6 backbone,
# 7 backyard, 8 bacon, 9 bad.
BACON = [
    ("babble", 3),
    ("babe", 1),
    ("baboon", 5),
    ("baby", 11),
    ("bach", 2),
    ("back", 7),
    ("backbone", 9),
    ("backyard", 4),
    ("bacon", 18),
    ("bad", 6),
]


def make_corpus(rng: random.Random, n: int, alphabet: str = "abc",
                max_len: int = 8, max_weight: int = 100) -> list[PhraseEntry]:
    """Up to n distinct random phrases with weights in [0, max_weight].

    Small alphabets force heavy prefix sharing; small max_weight forces
    weight ties, which is where ordering bugs hide.  n is capped at the
    number of strings the alphabet can express so sampling terminates.
    """
    base = len(alphabet)
    capacity = sum(base ** length for length in range(1, max_len + 1))
    n = min(n, capacity)
    texts: set[str] = set()
    while len(texts) < n:
        length = rng.randint(1, max_len)
        texts.add("".join(rng.choice(alphabet) for _ in range(length)))
    return [PhraseEntry(t, rng.randint(0, max_weight)) for t in sorted(texts)]


def random_prefix(rng: random.Random, corpus: list[PhraseEntry], max_len: int = 4) -> str:
    """A query prefix that usually matches something: truncate a real phrase."""
    text = corpus[rng.randrange(len(corpus))].text
    return text[: rng.randint(1, max_len)]


# One verdict line per acceptance criterion, echoed after the run summary.
ACCEPTANCE_LINES: list[str] = []


def check_criterion(name: str, passed: bool, detail: str = ""):
    status = "PASS" if passed else "FAIL"
    line = f"[{status}] {name}" + (f": {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert passed, f"acceptance criterion failed - {name} {detail}"
