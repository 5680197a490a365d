"""V/CV phoneme segmentation and the phoneme inventory.

A phoneme here is either an independent vowel (V) or a consonant fused with
one of the ten vowels (CV), optionally nasalized. Units are addressed by a
canonical ASCII label built from code points, e.g. ``C0A26-V0A08-O`` for ਦੀ.
"""
from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from importlib import resources
from types import MappingProxyType

from .gurmukhi import (
    CONSONANTS,
    TIPPI,
    VOWEL_LETTERS,
    VOWEL_NAMES,
    VOWEL_SIGNS,
    VOWELS,
    Kind,
    Token,
    classify,
    iter_tokens,
    normalize,
)

INVENTORY_MAGIC = "#katha-inventory v1"

_CONSONANT_SET = frozenset(CONSONANTS)
_VOWEL_BY_LETTER = {ch: v for v, ch in VOWEL_LETTERS.items()}
_LABEL_RE = re.compile(r"C(?:([0-9A-F]{4})-|----)V([0-9A-F]{4})-([NO])")


class LabelError(ValueError):
    """A string is not a canonical phoneme label."""


class InventoryError(ValueError):
    """An inventory file or exclusion set is malformed."""


@dataclass(frozen=True)
class Phoneme:
    consonant: str | None
    vowel: str
    nasal: bool = False

    def __post_init__(self):
        if self.consonant is not None and self.consonant not in _CONSONANT_SET:
            raise ValueError(f"not a consonant identity: {self.consonant!r}")
        if self.vowel not in VOWEL_LETTERS:
            raise ValueError(f"not a vowel identity: {self.vowel!r}")

    @property
    def kind(self) -> str:
        return "V" if self.consonant is None else "CV"

    @property
    def unit_class(self) -> str:
        return self.kind + ("-nasal" if self.nasal else "")

    @property
    def label(self) -> str:
        return label(self)

    @property
    def display(self) -> str:
        """Gurmukhi rendering; nasal units are written with tippi."""
        if self.consonant is None:
            s = VOWEL_LETTERS[self.vowel]
        else:
            s = self.consonant + VOWEL_SIGNS.get(self.vowel, "")
        return s + TIPPI if self.nasal else s

    def __str__(self) -> str:
        head = "" if self.consonant is None else self.consonant + "+"
        return head + VOWEL_NAMES[self.vowel] + (" nasal" if self.nasal else "")


def label(p: Phoneme) -> str:
    vowel = ord(VOWEL_LETTERS[p.vowel])
    nasal = "N" if p.nasal else "O"
    if p.consonant is None:
        return f"C----V{vowel:04X}-{nasal}"
    return f"C{ord(p.consonant):04X}-V{vowel:04X}-{nasal}"


def parse_label(text: str) -> Phoneme:
    """Inverse of :func:`label`; raises :class:`LabelError` for anything non-canonical."""
    m = _LABEL_RE.fullmatch(text)
    if m is None:
        raise LabelError(f"not a canonical phoneme label: {text!r}")
    cons_hex, vowel_hex, nasal = m.groups()
    consonant = None
    if cons_hex is not None:
        consonant = chr(int(cons_hex, 16))
        if consonant not in _CONSONANT_SET:
            raise LabelError(f"label {text!r}: U+{cons_hex} is not a consonant")
    vowel = _VOWEL_BY_LETTER.get(chr(int(vowel_hex, 16)))
    if vowel is None:
        raise LabelError(f"label {text!r}: U+{vowel_hex} is not an independent vowel")
    return Phoneme(consonant, vowel, nasal == "N")


# --- segmentation -----------------------------------------------------------


class DiagnosticKind(enum.Enum):
    UNCLASSIFIED_CHAR = "UnclassifiedChar"
    DANGLING_MATRA = "DanglingMatra"
    DANGLING_NASAL = "DanglingNasal"
    VIRAMA_POLICY = "ViramaPolicy"
    ADHAK_IGNORED = "AdhakIgnored"


@dataclass(frozen=True)
class SegmentationDiagnostic:
    position: int
    kind: DiagnosticKind
    detail: str


def segment_word(word: str | Token) -> tuple[list[Phoneme], list[SegmentationDiagnostic]]:
    """Split one normalized word into V/CV units, left to right.

    A consonant takes the vowel sign that follows it, or the inherent vowel
    ``a`` when none does. A nasal sign directly after a unit nasalizes it.
    Irregular scalars are skipped and reported, never raised.
    """
    text = word.text if isinstance(word, Token) else word
    units: list[Phoneme] = []
    diags: list[SegmentationDiagnostic] = []
    pending: str | None = None  # consonant still waiting for a vowel sign
    last_end = -2  # index of the last scalar consumed into units[-1]

    def flush():
        nonlocal pending
        if pending is not None:
            units.append(Phoneme(pending, "a"))
            pending = None

    def note(pos, kind, detail):
        diags.append(SegmentationDiagnostic(pos, kind, detail))

    for i, ch in enumerate(text):
        cls = classify(ch)
        kind = cls.kind
        if kind is Kind.CONSONANT:
            flush()
            pending = ch
            last_end = i
        elif kind is Kind.VOWEL_SIGN:
            if pending is not None:
                units.append(Phoneme(pending, cls.identity))
                pending = None
                last_end = i
            else:
                note(i, DiagnosticKind.DANGLING_MATRA,
                     f"vowel sign U+{ord(ch):04X} has no consonant to attach to")
        elif kind is Kind.INDEPENDENT_VOWEL:
            flush()
            units.append(Phoneme(None, cls.identity))
            last_end = i
        elif kind is Kind.NASAL_SIGN:
            flush()
            if units and last_end == i - 1 and not units[-1].nasal:
                u = units[-1]
                units[-1] = Phoneme(u.consonant, u.vowel, True)
                last_end = i
            else:
                note(i, DiagnosticKind.DANGLING_NASAL,
                     f"nasal sign U+{ord(ch):04X} does not follow a unit")
        elif kind is Kind.VIRAMA:
            if pending is not None:
                flush()
                last_end = i
                note(i, DiagnosticKind.VIRAMA_POLICY,
                     "virama consumed; consonant kept with inherent vowel a")
            else:
                note(i, DiagnosticKind.VIRAMA_POLICY, "virama without a preceding consonant")
        elif kind is Kind.ADHAK:
            flush()
            note(i, DiagnosticKind.ADHAK_IGNORED, "gemination sign ignored")
        elif kind is Kind.NUKTA:
            # consonant without a precomposed nukta form: keep the base letter
            note(i, DiagnosticKind.UNCLASSIFIED_CHAR, "nukta on a letter with no nukta form")
        else:
            flush()
            note(i, DiagnosticKind.UNCLASSIFIED_CHAR, f"U+{ord(ch):04X} ({kind.value}) skipped")
    flush()
    return units, diags


def segment_text(text: str) -> list[tuple[str, list[Phoneme], list[SegmentationDiagnostic]]]:
    """Normalize, tokenize and segment every word of ``text``."""
    out = []
    for tok in iter_tokens(normalize(text)):
        if tok.is_word:
            units, diags = segment_word(tok.text)
            out.append((tok.text, units, diags))
    return out


# --- inventory --------------------------------------------------------------

UNIT_CLASSES = ("V", "V-nasal", "CV", "CV-nasal")


def universe() -> list[Phoneme]:
    """All 780 V/CV units: 10 vowels x 2 nasality + 38 consonants x 10 vowels x 2."""
    out = []
    for nasal in (False, True):
        for v in VOWELS:
            out.append(Phoneme(None, v, nasal))
        for c in CONSONANTS:
            for v in VOWELS:
                out.append(Phoneme(c, v, nasal))
    return out


@dataclass(frozen=True)
class InventoryEntry:
    display: str
    valid: bool


class PhonemeInventory:
    """Immutable label -> (display, valid) table with per-class tallies."""

    def __init__(self, entries: Mapping[str, InventoryEntry]):
        self._entries = MappingProxyType(dict(entries))

    @property
    def entries(self) -> Mapping[str, InventoryEntry]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, lbl: object) -> bool:
        return lbl in self._entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhonemeInventory):
            return NotImplemented
        return dict(self._entries) == dict(other._entries)

    def counts(self) -> dict[str, tuple[int, int]]:
        """Map unit class -> (total, valid)."""
        tally = {c: [0, 0] for c in UNIT_CLASSES}
        for lbl, entry in self._entries.items():
            row = tally[parse_label(lbl).unit_class]
            row[0] += 1
            row[1] += entry.valid
        return {c: (t, v) for c, (t, v) in tally.items()}

    def valid_labels(self) -> list[str]:
        return sorted(lbl for lbl, e in self._entries.items() if e.valid)

    def is_valid(self, phoneme: Phoneme) -> bool:
        entry = self._entries.get(label(phoneme))
        return entry is not None and entry.valid


def is_valid(inventory: PhonemeInventory, phoneme: Phoneme) -> bool:
    return inventory.is_valid(phoneme)


def generate_inventory(invalid_labels: Iterable[str] = ()) -> PhonemeInventory:
    """Enumerate the full universe, flagging ``invalid_labels`` as invalid."""
    all_units = universe()
    known = {p.label for p in all_units}
    invalid = set()
    for lbl in invalid_labels:
        try:
            parse_label(lbl)
        except LabelError as exc:
            raise InventoryError(str(exc)) from None
        if lbl not in known:
            raise InventoryError(f"label outside the phoneme universe: {lbl}")
        invalid.add(lbl)
    return PhonemeInventory(
        {p.label: InventoryEntry(p.display, p.label not in invalid) for p in all_units}
    )


def dump_inventory(inv: PhonemeInventory) -> str:
    lines = [INVENTORY_MAGIC]
    for lbl in sorted(inv.entries):
        e = inv.entries[lbl]
        lines.append(f"{lbl}\t{e.display}\t{int(e.valid)}")
    return "\n".join(lines) + "\n"


def load_inventory(text: str) -> PhonemeInventory:
    lines = text.splitlines()
    if not lines or lines[0].strip() != INVENTORY_MAGIC:
        raise InventoryError(f"missing header line {INVENTORY_MAGIC!r}")
    entries: dict[str, InventoryEntry] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise InventoryError(f"line {lineno}: expected 3 tab-separated fields")
        lbl, display, valid = fields
        try:
            parse_label(lbl)
        except LabelError as exc:
            raise InventoryError(f"line {lineno}: {exc}") from None
        if valid not in ("0", "1"):
            raise InventoryError(f"line {lineno}: valid flag must be 0 or 1, got {valid!r}")
        if lbl in entries:
            raise InventoryError(f"line {lineno}: duplicate label {lbl}")
        entries[lbl] = InventoryEntry(display, valid == "1")
    return PhonemeInventory(entries)


# Stand-in exclusions sized to the reference counts (7 plain CV + 51 nasal CV).
# The real list is unknown; only the counts are meaningful.
_PLACEHOLDER_PLAIN = [("ਙ", v) for v in ("i", "ii", "u", "uu", "e", "ai", "o")]
_PLACEHOLDER_NASAL = (
    [(c, v) for c in ("ਙ", "ਞ", "ਣ", "ੜ", "ਲ਼") for v in VOWELS] + [("ਯ", "au")]
)


def placeholder_invalid_labels() -> list[str]:
    plain = [Phoneme(c, v).label for c, v in _PLACEHOLDER_PLAIN]
    nasal = [Phoneme(c, v, True).label for c, v in _PLACEHOLDER_NASAL]
    return sorted(plain + nasal)


DEFAULT_INVENTORY_FILE = "inventory-default.tsv"
PLACEHOLDER_INVENTORY_FILE = "inventory-placeholder.tsv"


def packaged_inventory(name: str = DEFAULT_INVENTORY_FILE) -> PhonemeInventory:
    data = resources.files("katha").joinpath("data").joinpath(name).read_text(encoding="utf-8")
    return load_inventory(data)
