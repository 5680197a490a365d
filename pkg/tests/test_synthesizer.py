import numpy as np
import pytest

from katha.audio import AudioClip, TimeSpan
from katha.phonemizer import Phoneme, segment_text
from katha.synthesizer import (
    MissingUnitError,
    OnMissing,
    StreamAborted,
    SynthesisOptions,
    synthesize,
    synthesize_streaming,
)
from katha.unitdb import UnitDatabase, UnitEntry

from conftest import random_text

HARDEEP = [Phoneme("ਹ", "a"), Phoneme("ਰ", "a"), Phoneme("ਦ", "ii"), Phoneme("ਪ", "a")]


def manual_slice(corpus, entry):
    rate = corpus.sample_rate
    lo = int(entry.span.start_sec * rate + 0.5)
    hi = int(entry.span.end_sec * rate + 0.5)
    return corpus.samples[lo:hi].tolist()


def test_hardeep_equals_manual_concat(oracle_corpus):
    corpus, db = oracle_corpus
    out, report = synthesize("ਹਰਦੀਪ", db, corpus)
    expected = []
    for p in HARDEEP:
        expected += manual_slice(corpus, db.get(p.label))
    assert out.samples.tolist() == expected
    assert report.units_emitted == 4 and report.words_processed == 1
    assert [u.label for u in report.units] == [p.label for p in HARDEEP]


def test_empty_text(oracle_corpus):
    corpus, db = oracle_corpus
    out, report = synthesize("", db, corpus)
    assert len(out) == 0 and out.sample_rate == corpus.sample_rate
    assert report.words_processed == report.units_emitted == 0
    assert report.skipped_phonemes == [] and report.output_duration_sec == 0


def test_only_phoneme_missing(oracle_corpus):
    corpus, db = oracle_corpus
    small = db.without([Phoneme("ਦ", "ii").label])
    out, report = synthesize("ਦੀ", small, corpus)
    assert len(out) == 0
    assert report.skipped_phonemes == [(0, "C0A26-V0A08-O")]


def test_error_mode_names_word_and_label(oracle_corpus):
    corpus, db = oracle_corpus
    small = db.without(["C0A26-V0A08-O"])
    with pytest.raises(MissingUnitError) as exc:
        synthesize("ਆ ਹਰਦੀਪ", small, corpus, SynthesisOptions(on_missing="error"))
    assert exc.value.word_index == 1 and exc.value.label == "C0A26-V0A08-O"
    assert "C0A26-V0A08-O" in str(exc.value)


def test_options_validation():
    with pytest.raises(ValueError):
        SynthesisOptions(gap_ms=-1)
    assert SynthesisOptions(on_missing="skip").on_missing is OnMissing.SKIP


def test_gaps_only_between_emitting_words(oracle_corpus):
    corpus, db = oracle_corpus
    small = db.without(["C0A15-V0A05-O"])  # ਕ+a
    opts = SynthesisOptions(gap_ms=10)
    gap = 441
    out, report = synthesize("ਆ ਕ ਈ, ਕ", small, corpus, opts)
    unit = 3528
    assert report.gaps_inserted == 1
    assert len(out) == 2 * unit + gap
    assert not out.samples[unit:unit + gap].any()
    assert report.units[1].offset == unit + gap


def test_length_conservation_and_provenance(oracle_corpus, rng):
    corpus, db = oracle_corpus
    rng_db = db.without(rng.sample(sorted(db.entries), 100))
    for _ in range(40):
        text = random_text(rng)
        opts = SynthesisOptions(gap_ms=rng.choice([0, 5, 30]))
        out, report = synthesize(text, rng_db, corpus, opts)
        gap = int(opts.gap_ms * corpus.sample_rate / 1000 + 0.5)
        slices = sum(len(manual_slice(corpus, rng_db.get(u.label))) for u in report.units)
        assert len(out) == slices + gap * report.gaps_inserted == report.output_samples
        assert report.units_emitted == len(report.units)
        for u in report.units:
            src = manual_slice(corpus, rng_db.get(u.label))
            assert out.samples[u.offset:u.offset + u.length].tolist() == src
        assert report.output_duration_sec == pytest.approx(len(out) / corpus.sample_rate)


def test_skip_report_matches_segmentation(oracle_corpus, rng):
    corpus, db = oracle_corpus
    removed = set(rng.sample(sorted(db.entries), 300))
    small = db.without(removed)
    text = " ".join(random_text(rng) for _ in range(5))
    _, report = synthesize(text, small, corpus)
    expected = [
        (w, p.label)
        for w, (_, units, _) in enumerate(segment_text(text))
        for p in units
        if p.label in removed
    ]
    assert report.skipped_phonemes == expected


def test_deterministic(oracle_corpus, rng):
    corpus, db = oracle_corpus
    text = random_text(rng, 30)
    a, ra = synthesize(text, db, corpus, SynthesisOptions(gap_ms=7))
    b, rb = synthesize(text, db, corpus, SynthesisOptions(gap_ms=7))
    assert a == b and ra.lines() == rb.lines()


def test_streaming_equals_batch(oracle_corpus, rng):
    corpus, db = oracle_corpus
    for _ in range(20):
        text = random_text(rng)
        opts = SynthesisOptions(gap_ms=rng.choice([0, 20]))
        batch, _ = synthesize(text, db, corpus, opts)
        pieces = []
        report = synthesize_streaming(text, db, corpus, opts, pieces.append)
        streamed = np.concatenate(pieces) if pieces else np.zeros(0, np.int16)
        assert streamed.tobytes() == batch.samples.tobytes()
        assert report.output_samples == len(batch)


def test_streaming_empty(oracle_corpus):
    corpus, db = oracle_corpus
    pieces = []
    synthesize_streaming("", db, corpus, None, pieces.append)
    assert pieces == []


def test_streaming_sink_failure(oracle_corpus):
    corpus, db = oracle_corpus
    calls = []

    def sink(block):
        calls.append(len(block))
        if len(calls) == 3:
            raise OSError("disk full")

    with pytest.raises(StreamAborted) as exc:
        synthesize_streaming("ਹਰਦੀਪ", db, corpus, None, sink)
    assert exc.value.samples_delivered == sum(calls[:2])


def test_runs_on_non_canonical_rate():
    corpus = AudioClip(np.arange(1000) - 500, 8000)
    db = UnitDatabase([UnitEntry("C----V0A06-O", "ਆ", TimeSpan(0.01, 0.02))])
    out, _ = synthesize("ਆ ਆ", db, corpus, SynthesisOptions(gap_ms=1))
    assert out.sample_rate == 8000
    assert out.samples.tolist() == list(range(-420, -340)) + [0] * 8 + list(range(-420, -340))


def test_streaming_buffer_bound_on_long_text(oracle_corpus):
    corpus, db = oracle_corpus
    text = " ".join(["ਹਰਦੀਪ ਸਿੰਘ ਆਂ"] * 3400)  # ~10,000 words
    opts = SynthesisOptions(gap_ms=25)
    high = 0

    def sink(block):
        nonlocal high
        high = max(high, len(block))

    report = synthesize_streaming(text, db, corpus, opts, sink)
    assert report.words_processed == 10_200
    assert high == report.peak_buffer_samples <= 3528 + 1103
