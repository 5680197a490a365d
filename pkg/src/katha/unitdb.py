"""Phoneme label -> time span database over a single corpus recording.

The on-disk form is a TSV manifest::

    #katha-unitdb v1
    #corpus corpus.wav 44100
    C0A26-V0A08-O<TAB>ਦੀ<TAB>0.500000<TAB>0.880000

Seconds are written with six decimals and parsed back into floats.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from .audio import AudioClip, TimeSpan
from .phonemizer import LabelError, Phoneme, PhonemeInventory, label, parse_label

MAGIC = "#katha-unitdb v1"
CORPUS_PREFIX = "#corpus "


class UnitDbError(ValueError):
    """Base class for manifest and label-file errors; carries the line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class BadHeaderError(UnitDbError):
    pass


class NonCanonicalLabelError(UnitDbError):
    pass


class DuplicateLabelError(UnitDbError):
    def __init__(self, lbl: str, lineno: int | None = None):
        self.label = lbl
        super().__init__(f"duplicate label {lbl}", lineno)


class BadSecondsError(UnitDbError):
    pass


class SpanOrderError(UnitDbError):
    pass


class RowFormatError(UnitDbError):
    pass


@dataclass(frozen=True)
class CorpusId:
    filename: str
    sample_rate: int


@dataclass(frozen=True)
class UnitEntry:
    label: str
    display: str
    span: TimeSpan


class UnitDatabase:
    """Immutable label -> :class:`UnitEntry` map."""

    def __init__(self, entries: Iterable[UnitEntry] = (), corpus: CorpusId | None = None):
        table: dict[str, UnitEntry] = {}
        for e in entries:
            if e.label in table:
                raise DuplicateLabelError(e.label)
            parse_label(e.label)
            table[e.label] = e
        self._entries = MappingProxyType(table)
        self.corpus = corpus

    @property
    def entries(self) -> Mapping[str, UnitEntry]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, lbl: object) -> bool:
        return lbl in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitDatabase):
            return NotImplemented
        return self.corpus == other.corpus and dict(self._entries) == dict(other._entries)

    def __repr__(self) -> str:
        return f"UnitDatabase({len(self)} entries, corpus={self.corpus})"

    def get(self, lbl: str) -> UnitEntry | None:
        return self._entries.get(lbl)

    def lookup(self, phoneme: Phoneme) -> UnitEntry | None:
        return self._entries.get(label(phoneme))

    def without(self, labels: Iterable[str]) -> "UnitDatabase":
        drop = set(labels)
        return UnitDatabase((e for e in self if e.label not in drop), self.corpus)


def lookup(db: UnitDatabase, phoneme: Phoneme) -> UnitEntry | None:
    """Entry for ``phoneme`` or None; absence is an ordinary result."""
    return db.lookup(phoneme)


# --- parsing ----------------------------------------------------------------


def _parse_seconds(text: str, lineno: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise BadSecondsError(f"not a number: {text!r}", lineno) from None
    if not math.isfinite(value) or value < 0:
        raise BadSecondsError(f"seconds must be finite and non-negative: {text!r}", lineno)
    return value


def _parse_rows(lines: Iterable[tuple[int, str]]) -> list[UnitEntry]:
    entries: list[UnitEntry] = []
    seen: set[str] = set()
    for lineno, line in lines:
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.rstrip("\r").split("\t")
        if len(fields) != 4:
            raise RowFormatError(f"expected 4 tab-separated fields, got {len(fields)}", lineno)
        lbl, display, start_s, end_s = fields
        try:
            parse_label(lbl)
        except LabelError as exc:
            raise NonCanonicalLabelError(str(exc), lineno) from None
        if lbl in seen:
            raise DuplicateLabelError(lbl, lineno)
        start = _parse_seconds(start_s, lineno)
        end = _parse_seconds(end_s, lineno)
        if start >= end:
            raise SpanOrderError(f"{lbl}: start {start_s} is not before end {end_s}", lineno)
        seen.add(lbl)
        entries.append(UnitEntry(lbl, display, TimeSpan(start, end)))
    return entries


def _parse_corpus_line(line: str, lineno: int) -> CorpusId:
    parts = line[len(CORPUS_PREFIX):].rsplit(None, 1)
    if len(parts) != 2:
        raise BadHeaderError("corpus line must be '#corpus <filename> <sample_rate>'", lineno)
    name, rate = parts
    try:
        rate_value = int(rate)
    except ValueError:
        raise BadHeaderError(f"bad corpus sample rate {rate!r}", lineno) from None
    if rate_value <= 0:
        raise BadHeaderError(f"bad corpus sample rate {rate!r}", lineno)
    return CorpusId(name.strip(), rate_value)


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UnitDbError(f"manifest is not valid UTF-8: {exc}") from None


def load(data: bytes | str) -> UnitDatabase:
    """Parse a manifest. Raises a :class:`UnitDbError` subclass on any bad row."""
    lines = _decode(data).split("\n")
    if not lines or lines[0].rstrip("\r") != MAGIC:
        raise BadHeaderError(f"first line must be {MAGIC!r}", 1)
    corpus = None
    if len(lines) > 1 and lines[1].startswith(CORPUS_PREFIX):
        corpus = _parse_corpus_line(lines[1].rstrip("\r"), 2)
    rows = _parse_rows((i, line) for i, line in enumerate(lines[2:] if corpus else lines[1:],
                                                          start=3 if corpus else 2))
    return UnitDatabase(rows, corpus)


def build(data: bytes | str, corpus: CorpusId | None = None) -> UnitDatabase:
    """Build a database from a hand-made label file (manifest rows, headers optional)."""
    text = _decode(data)
    lines = text.split("\n")
    found = None
    for i, line in enumerate(lines[:2]):
        if line.startswith(CORPUS_PREFIX):
            found = _parse_corpus_line(line.rstrip("\r"), i + 1)
    return UnitDatabase(_parse_rows(enumerate(lines, start=1)), corpus or found)


def save(db: UnitDatabase, corpus: CorpusId | None = None) -> bytes:
    corpus = corpus or db.corpus or CorpusId("corpus.wav", 44100)
    out = [MAGIC, f"{CORPUS_PREFIX}{corpus.filename} {corpus.sample_rate}"]
    for lbl in sorted(db.entries):
        e = db.entries[lbl]
        out.append(f"{lbl}\t{e.display}\t{e.span.start_sec:.6f}\t{e.span.end_sec:.6f}")
    return ("\n".join(out) + "\n").encode("utf-8")


# --- validation -------------------------------------------------------------

ERROR = "error"
INFO = "info"


@dataclass(frozen=True)
class Finding:
    severity: str
    kind: str
    label: str
    detail: str

    def __str__(self) -> str:
        return f"{self.severity}\t{self.kind}\t{self.label}\t{self.detail}"


def validate(
    db: UnitDatabase,
    corpus: AudioClip,
    inventory: PhonemeInventory | None = None,
) -> list[Finding]:
    """Check every entry against ``corpus``; findings are returned, never raised.

    Error-level kinds: ``out_of_range``, ``zero_length``, ``rate_mismatch``.
    Informative kinds: ``overlap`` (one per overlapping pair) and
    ``not_in_inventory`` (label absent from or invalid in ``inventory``).
    """
    rate = corpus.sample_rate
    n = len(corpus.samples)
    findings: list[Finding] = []
    if db.corpus is not None and db.corpus.sample_rate != rate:
        findings.append(Finding(ERROR, "rate_mismatch", "-",
                                f"manifest expects {db.corpus.sample_rate} Hz, corpus is {rate} Hz"))
    ordered = sorted(db, key=lambda e: (e.span.start_sec, e.label))
    for e in sorted(db, key=lambda e: e.label):
        lo, hi = e.span.sample_range(rate)
        if hi > n:
            findings.append(Finding(ERROR, "out_of_range", e.label,
                                    f"ends at sample {hi} but corpus has {n}"))
        if hi <= lo:
            findings.append(Finding(ERROR, "zero_length", e.label,
                                    f"span rounds to samples [{lo}, {hi})"))
        if inventory is not None:
            entry = inventory.entries.get(e.label)
            if entry is None or not entry.valid:
                findings.append(Finding(INFO, "not_in_inventory", e.label,
                                        "label is not a valid inventory unit"))
    # sweep over start-sorted spans; each overlapping pair reported once
    active: list[UnitEntry] = []
    for e in ordered:
        active = [a for a in active if a.span.end_sec > e.span.start_sec]
        for a in active:
            findings.append(Finding(INFO, "overlap", a.label, f"overlaps {e.label}"))
        active.append(e)
    return findings


def has_errors(findings: Iterable[Finding]) -> bool:
    return any(f.severity == ERROR for f in findings)
