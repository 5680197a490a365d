import numpy as np
import pytest

from katha import unitdb
from katha.audio import AudioClip, TimeSpan, slice_clip
from katha.corpus import CorpusPlan, burst_frequency, generate, identify_unit
from katha.phonemizer import generate_inventory, universe


def single_inventory(lbl="C0A26-V0A08-O"):
    others = [p.label for p in universe() if p.label != lbl]
    return generate_inventory(others)


def test_single_phoneme_layout():
    clip, db = generate(single_inventory())
    assert len(clip) == round(0.120 * 44100)
    assert db.get("C0A26-V0A08-O").span == TimeSpan(0.020, 0.100)
    assert not clip.samples[:882].any() and not clip.samples[-882:].any()


def test_full_inventory_layout(oracle_corpus):
    clip, db = oracle_corpus
    assert len(db) == 780
    assert clip.duration_seconds == pytest.approx(780 * 0.080 + 781 * 0.020, abs=1 / 44100)
    assert len(clip) == 780 * 3528 + 781 * 882
    assert unitdb.validate(db, clip) == []


def test_bursts_are_half_scale_tones(oracle_corpus):
    clip, db = oracle_corpus
    labels = sorted(db.entries)
    for i in (0, 24, 779):
        burst = slice_clip(clip, db.get(labels[i]).span).samples
        assert abs(int(burst.max()) - 16384) < 200
        # zero crossings: about 2 * f * 0.08 s
        crossings = np.count_nonzero(np.diff(np.signbit(burst)))
        assert abs(crossings - 2 * burst_frequency(i) * 0.08) <= 2


def test_deterministic(full_inventory):
    a_clip, a_db = generate(full_inventory, CorpusPlan(seed=4))
    b_clip, b_db = generate(full_inventory, CorpusPlan(seed=4))
    assert a_clip == b_clip
    assert unitdb.save(a_db) == unitdb.save(b_db)


def test_generated_db_survives_manifest(oracle_corpus):
    clip, db = oracle_corpus
    assert unitdb.load(unitdb.save(db)) == db


def test_identify_every_unit(oracle_corpus, full_inventory):
    clip, db = oracle_corpus
    plan = CorpusPlan()
    labels = full_inventory.valid_labels()
    for lbl in labels:
        assert identify_unit(slice_clip(clip, db.get(lbl).span), plan, full_inventory, labels) == lbl


def test_identify_random_phase(full_inventory):
    plan = CorpusPlan(seed=123)
    clip, db = generate(full_inventory, plan)
    for lbl in sorted(db.entries)[::37]:
        assert identify_unit(slice_clip(clip, db.get(lbl).span), plan, full_inventory) == lbl


def test_identify_440(full_inventory):
    assert burst_frequency(24) == 440
    t = np.arange(3528) / 44100
    tone = AudioClip(np.round(16383 * np.sin(2 * np.pi * 440 * t)).astype(np.int16))
    assert identify_unit(tone, CorpusPlan(), full_inventory) == sorted(full_inventory.entries)[24]


def test_identify_rejects_silence_and_off_grid(full_inventory):
    plan = CorpusPlan()
    assert identify_unit(AudioClip(np.zeros(3528, dtype=np.int16)), plan, full_inventory) is None
    t = np.arange(3528) / 44100
    off = AudioClip(np.round(16383 * np.sin(2 * np.pi * 445 * t)).astype(np.int16))
    assert identify_unit(off, plan, full_inventory) is None


def test_plan_validation(full_inventory):
    with pytest.raises(ValueError):
        CorpusPlan(unit_ms=0)
    with pytest.raises(ValueError):
        CorpusPlan(guard_ms=-1)
    with pytest.raises(ValueError):
        generate(full_inventory, CorpusPlan(rate=8000))  # 7990 Hz >= 4000 Hz Nyquist
    with pytest.raises(ValueError):
        generate(generate_inventory([p.label for p in universe()]))
