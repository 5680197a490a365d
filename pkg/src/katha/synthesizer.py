"""Text -> phonemes -> unit lookup -> corpus slices -> concatenated waveform."""
from __future__ import annotations

import enum
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field

import numpy as np

from .audio import AudioClip, concat, silence, slice_clip
from .gurmukhi import iter_tokens, normalize
from .phonemizer import SegmentationDiagnostic, segment_word
from .unitdb import UnitDatabase

Sink = Callable[[np.ndarray], object]


class OnMissing(enum.Enum):
    SKIP = "skip"
    ERROR = "error"


class MissingUnitError(LookupError):
    def __init__(self, word_index: int, label: str, word: str = ""):
        self.word_index = word_index
        self.label = label
        self.word = word
        super().__init__(f"word {word_index} ({word}): no unit for {label}")


class StreamAborted(RuntimeError):
    """The sink raised; ``samples_delivered`` samples had already been accepted."""

    def __init__(self, samples_delivered: int, cause: BaseException):
        self.samples_delivered = samples_delivered
        super().__init__(f"sink failed after {samples_delivered} samples: {cause!r}")


@dataclass(frozen=True)
class SynthesisOptions:
    gap_ms: float = 0
    on_missing: OnMissing = OnMissing.SKIP

    def __post_init__(self):
        if self.gap_ms < 0:
            raise ValueError("gap_ms must be non-negative")
        if not isinstance(self.on_missing, OnMissing):
            object.__setattr__(self, "on_missing", OnMissing(self.on_missing))


@dataclass(frozen=True)
class EmittedUnit:
    word_index: int
    label: str
    offset: int  # first output sample
    length: int


@dataclass
class SynthesisReport:
    words_processed: int = 0
    units_emitted: int = 0
    skipped_phonemes: list[tuple[int, str]] = field(default_factory=list)
    diagnostics: list[tuple[int, SegmentationDiagnostic]] = field(default_factory=list)
    output_samples: int = 0
    sample_rate: int = 44100
    gaps_inserted: int = 0
    units: list[EmittedUnit] = field(default_factory=list)
    peak_buffer_samples: int = 0

    @property
    def output_duration_sec(self) -> float:
        return self.output_samples / self.sample_rate

    def lines(self) -> list[str]:
        """``key<TAB>value`` report lines; list-valued keys repeat once per item."""
        out = [
            f"words_processed\t{self.words_processed}",
            f"units_emitted\t{self.units_emitted}",
            f"skipped_count\t{len(self.skipped_phonemes)}",
            f"diagnostic_count\t{len(self.diagnostics)}",
            f"gaps_inserted\t{self.gaps_inserted}",
            f"output_samples\t{self.output_samples}",
            f"sample_rate\t{self.sample_rate}",
            f"output_duration_sec\t{self.output_duration_sec:.6f}",
        ]
        out += [f"skipped\t{w}\t{lbl}" for w, lbl in self.skipped_phonemes]
        out += [
            f"diagnostic\t{w}\t{d.position}\t{d.kind.value}\t{d.detail}"
            for w, d in self.diagnostics
        ]
        return out


def _chunks(
    text: str,
    db: UnitDatabase,
    corpus: AudioClip,
    opts: SynthesisOptions,
    report: SynthesisReport,
) -> Iterator[np.ndarray]:
    """Yield output sample blocks in order: one per unit slice or gap."""
    rate = corpus.sample_rate
    report.sample_rate = rate
    gap = silence(opts.gap_ms, rate).samples
    cache: dict[str, np.ndarray] = {}
    any_emitted = False
    offset = 0
    for w, tok in enumerate(t for t in iter_tokens(normalize(text)) if t.is_word):
        report.words_processed += 1
        units, diags = segment_word(tok.text)
        report.diagnostics.extend((w, d) for d in diags)
        first_in_word = True
        for p in units:
            lbl = p.label
            samples = cache.get(lbl)
            if samples is None:
                entry = db.get(lbl)
                if entry is None:
                    if opts.on_missing is OnMissing.ERROR:
                        raise MissingUnitError(w, lbl, tok.text)
                    report.skipped_phonemes.append((w, lbl))
                    continue
                samples = cache[lbl] = slice_clip(corpus, entry.span).samples
            if first_in_word:
                first_in_word = False
                if any_emitted:
                    report.gaps_inserted += 1
                    if len(gap):
                        offset += len(gap)
                        yield gap
                any_emitted = True
            report.units.append(EmittedUnit(w, lbl, offset, len(samples)))
            report.units_emitted += 1
            offset += len(samples)
            yield samples
    report.output_samples = offset


def synthesize(
    text: str,
    db: UnitDatabase,
    corpus: AudioClip,
    opts: SynthesisOptions | None = None,
) -> tuple[AudioClip, SynthesisReport]:
    """Render ``text`` by concatenating corpus slices; unknown units are skipped or raise."""
    opts = opts or SynthesisOptions()
    report = SynthesisReport()
    blocks = list(_chunks(text, db, corpus, opts, report))
    if blocks:
        out = AudioClip(np.concatenate(blocks), corpus.sample_rate)
    else:
        out = concat([], corpus.sample_rate)
    report.peak_buffer_samples = len(out)
    return out, report


def synthesize_streaming(
    text: str,
    db: UnitDatabase,
    corpus: AudioClip,
    opts: SynthesisOptions | None,
    sink: Sink,
) -> SynthesisReport:
    """Same samples as :func:`synthesize`, pushed to ``sink`` one unit or gap at a time.

    At most one unit slice or one gap is held at once, so memory does not
    grow with the text. Sink exceptions abort with :class:`StreamAborted`.
    """
    opts = opts or SynthesisOptions()
    report = SynthesisReport()
    delivered = 0
    for block in _chunks(text, db, corpus, opts, report):
        report.peak_buffer_samples = max(report.peak_buffer_samples, len(block))
        try:
            sink(block)
        except Exception as exc:
            raise StreamAborted(delivered, exc) from exc
        delivered += len(block)
    return report
