"""Gurmukhi code point classification, normalization and word tokenization."""
from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass
from typing import Iterator

NUKTA = "਼"
VIRAMA = "੍"
ADHAK = "ੱ"
TIPPI = "ੰ"
BINDI = "ਂ"

# The 32 core letters followed by the 6 nukta letters, in alphabet order.
CORE_CONSONANTS = (
    "ਸਹਕਖਗਘਙਚਛਜਝਞਟਠਡਢਣਤਥਦਧਨਪਫਬਭਮਯਰਲਵੜ"
)
NUKTA_CONSONANTS = "\u0a36\u0a59\u0a5a\u0a5b\u0a5e\u0a33"  # ਸ਼ ਖ਼ ਗ਼ ਜ਼ ਫ਼ ਲ਼
CONSONANTS = CORE_CONSONANTS + NUKTA_CONSONANTS

# Vowel identities in traditional order. ``a`` is the inherent vowel and has no sign.
VOWELS = ("a", "aa", "i", "ii", "u", "uu", "e", "ai", "o", "au")

VOWEL_LETTERS = {
    "a": "ਅ",
    "aa": "ਆ",
    "i": "ਇ",
    "ii": "ਈ",
    "u": "ਉ",
    "uu": "ਊ",
    "e": "ਏ",
    "ai": "ਐ",
    "o": "ਓ",
    "au": "ਔ",
}

VOWEL_SIGNS = {
    "aa": "ਾ",
    "i": "ਿ",
    "ii": "ੀ",
    "u": "ੁ",
    "uu": "ੂ",
    "e": "ੇ",
    "ai": "ੈ",
    "o": "ੋ",
    "au": "ੌ",
}

# Romanized names used in diagnostics and reports.
VOWEL_NAMES = {
    "a": "a", "aa": "ā", "i": "i", "ii": "ī", "u": "u",
    "uu": "ū", "e": "e", "ai": "ai", "o": "o", "au": "au",
}

# Unicode lists the nukta letters as composition exclusions, so NFC never
# produces them; the pairs below are composed by hand.
_COMPOSE = {
    ("\u0a38", NUKTA): "\u0a36",  # ਸ਼
    ("\u0a16", NUKTA): "\u0a59",  # ਖ਼
    ("\u0a17", NUKTA): "\u0a5a",  # ਗ਼
    ("\u0a1c", NUKTA): "\u0a5b",  # ਜ਼
    ("\u0a2b", NUKTA): "\u0a5e",  # ਫ਼
    ("\u0a32", NUKTA): "\u0a33",  # ਲ਼
    # vowel carriers ੳ ਅ ੲ + matra
    ("ੳ", "ੁ"): "ਉ",
    ("ੳ", "ੂ"): "ਊ",
    ("ੳ", "ੋ"): "ਓ",
    ("ਅ", "ਾ"): "ਆ",
    ("ਅ", "ੈ"): "ਐ",
    ("ਅ", "ੌ"): "ਔ",
    ("ੲ", "ਿ"): "ਇ",
    ("ੲ", "ੀ"): "ਈ",
    ("ੲ", "ੇ"): "ਏ",
}

_EXTRA_PUNCTUATION = {"।", "॥"}  # danda, double danda


class Kind(enum.Enum):
    CONSONANT = "Consonant"
    INDEPENDENT_VOWEL = "IndependentVowel"
    VOWEL_SIGN = "VowelSign"
    NASAL_SIGN = "NasalSign"
    VIRAMA = "Virama"
    ADHAK = "Adhak"
    NUKTA = "Nukta"
    DIGIT = "Digit"
    WHITESPACE = "Whitespace"
    PUNCTUATION = "Punctuation"
    OTHER = "Other"


@dataclass(frozen=True)
class CharClass:
    """Class of one scalar.

    ``identity`` is the consonant letter for consonants, the vowel identity
    (one of :data:`VOWELS`) for vowels and vowel signs, and None otherwise.
    """

    kind: Kind
    identity: str | None = None

    def __str__(self) -> str:
        if self.identity is None:
            return self.kind.value
        return f"{self.kind.value}({self.identity})"


def _build_table() -> dict[str, CharClass]:
    table: dict[str, CharClass] = {}
    for c in CONSONANTS:
        table[c] = CharClass(Kind.CONSONANT, c)
    for v, ch in VOWEL_LETTERS.items():
        table[ch] = CharClass(Kind.INDEPENDENT_VOWEL, v)
    for v, ch in VOWEL_SIGNS.items():
        table[ch] = CharClass(Kind.VOWEL_SIGN, v)
    table[TIPPI] = CharClass(Kind.NASAL_SIGN)
    table[BINDI] = CharClass(Kind.NASAL_SIGN)
    table[VIRAMA] = CharClass(Kind.VIRAMA)
    table[ADHAK] = CharClass(Kind.ADHAK)
    table[NUKTA] = CharClass(Kind.NUKTA)
    for i in range(10):
        table[chr(0x0A66 + i)] = CharClass(Kind.DIGIT)
        table[chr(0x30 + i)] = CharClass(Kind.DIGIT)
    return table


_TABLE = _build_table()
_WHITESPACE = CharClass(Kind.WHITESPACE)
_PUNCTUATION = CharClass(Kind.PUNCTUATION)
_OTHER = CharClass(Kind.OTHER)


def classify(ch: str) -> CharClass:
    """Return the class of a single Unicode scalar. Never raises for valid scalars."""
    if len(ch) != 1:
        raise ValueError(f"expected a single scalar, got {ch!r}")
    cls = _TABLE.get(ch)
    if cls is not None:
        return cls
    if ch.isspace():
        return _WHITESPACE
    if ch in _EXTRA_PUNCTUATION or unicodedata.category(ch).startswith("P"):
        return _PUNCTUATION
    return _OTHER


def consonant_identities() -> frozenset[str]:
    return frozenset(c.identity for c in _TABLE.values() if c.kind is Kind.CONSONANT)


def vowel_identities() -> frozenset[str]:
    return frozenset(
        c.identity
        for c in _TABLE.values()
        if c.kind in (Kind.INDEPENDENT_VOWEL, Kind.VOWEL_SIGN)
    )


def normalize(text: str) -> str:
    """Compose nukta letters and carrier+matra vowels into precomposed scalars.

    Every other scalar passes through unchanged. The result is never longer
    than the input, and normalizing twice is the same as normalizing once.
    """
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        if i + 1 < n:
            composed = _COMPOSE.get((text[i], text[i + 1]))
            if composed is not None:
                out.append(composed)
                i += 2
                continue
        out.append(text[i])
        i += 1
    return "".join(out)


class TokenKind(enum.Enum):
    WORD = "Word"
    SEPARATOR = "Separator"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    byte_span: tuple[int, int]  # UTF-8 offsets into the tokenized text, half-open

    @property
    def is_word(self) -> bool:
        return self.kind is TokenKind.WORD


def _is_separator(ch: str) -> bool:
    return classify(ch).kind in (Kind.WHITESPACE, Kind.PUNCTUATION)


def iter_tokens(text: str) -> Iterator[Token]:
    start = 0
    byte_pos = 0
    n = len(text)
    while start < n:
        sep = _is_separator(text[start])
        end = start + 1
        while end < n and _is_separator(text[end]) == sep:
            end += 1
        piece = text[start:end]
        nbytes = len(piece.encode("utf-8"))
        kind = TokenKind.SEPARATOR if sep else TokenKind.WORD
        yield Token(kind, piece, (byte_pos, byte_pos + nbytes))
        byte_pos += nbytes
        start = end


def tokenize(text: str) -> list[Token]:
    """Split normalized text into alternating runs of word and separator scalars.

    >>> [t.text for t in tokenize("ਹਰਦੀਪ ਸਿੰਘ")]
    ['ਹਰਦੀਪ', ' ', 'ਸਿੰਘ']
    """
    return list(iter_tokens(text))


def words(text: str) -> list[str]:
    """Normalize ``text`` and return only its word tokens."""
    return [t.text for t in iter_tokens(normalize(text)) if t.is_word]
