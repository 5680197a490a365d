import random

import pytest

from katha.corpus import CorpusPlan, generate
from katha.gurmukhi import CONSONANTS, VOWEL_LETTERS, VOWEL_SIGNS
from katha.phonemizer import generate_inventory

# Weighted alphabet for random Punjabi-looking text, including the irregular
# marks the segmenter must tolerate.
_PIECES = (
    [(c, 30) for c in CONSONANTS]
    + [(v, 12) for v in VOWEL_SIGNS.values()]
    + [(v, 4) for v in VOWEL_LETTERS.values()]
    + [("ੰ", 4), ("ਂ", 3), ("੍", 1), ("ੱ", 1), ("਼", 1), ("੧", 1), ("x", 1), ("ੳ", 1), ("ੲ", 1)]
)
_CHARS = [c for c, _ in _PIECES]
_WEIGHTS = [w for _, w in _PIECES]
_SEPARATORS = [" ", " ", " ", ", ", "। ", "\n", "  "]


def random_word(rng: random.Random, max_len: int = 8) -> str:
    return "".join(rng.choices(_CHARS, _WEIGHTS, k=rng.randint(1, max_len)))


def random_text(rng: random.Random, max_words: int = 12) -> str:
    parts = []
    for _ in range(rng.randint(0, max_words)):
        parts.append(random_word(rng))
        parts.append(rng.choice(_SEPARATORS))
    return "".join(parts)


@pytest.fixture(scope="session")
def full_inventory():
    return generate_inventory()


@pytest.fixture(scope="session")
def oracle_corpus(full_inventory):
    """Full 780-unit synthetic corpus and its database."""
    return generate(full_inventory, CorpusPlan())


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for status in ("passed", "failed"):
        for rep in terminalreporter.stats.get(status, []):
            if rep.when != "call":
                continue
            for key, value in rep.user_properties:
                if key == "acceptance":
                    lines.append((value[0], f"{'PASS' if rep.passed else 'FAIL'}  {value[1]}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
