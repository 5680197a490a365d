"""Synthetic oracle corpus: one identifiable sine burst per valid phoneme.

The i-th valid label (in sorted order) is rendered as a tone at
``200 + 10*i`` Hz between guard silences, so any slice cut from the corpus
can be traced back to its label by frequency alone.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio import AudioClip, TimeSpan, seconds_to_index
from .phonemizer import PhonemeInventory, parse_label
from .unitdb import CorpusId, UnitDatabase, UnitEntry

BASE_HZ = 200.0
STEP_HZ = 10.0
AMPLITUDE = 0.5 * 32767
MATCH_TOLERANCE_HZ = 2.0


@dataclass(frozen=True)
class CorpusPlan:
    unit_ms: float = 80
    guard_ms: float = 20
    rate: int = 44100
    seed: int | None = None  # None: every burst starts at phase 0

    def __post_init__(self):
        if not self.unit_ms > 0:
            raise ValueError("unit_ms must be positive")
        if self.guard_ms < 0:
            raise ValueError("guard_ms must be non-negative")
        if self.rate <= 0:
            raise ValueError("rate must be positive")

    @property
    def unit_samples(self) -> int:
        return seconds_to_index(self.unit_ms / 1000, self.rate)

    @property
    def guard_samples(self) -> int:
        return seconds_to_index(self.guard_ms / 1000, self.rate)


def burst_frequency(index: int) -> float:
    return BASE_HZ + STEP_HZ * index


def generate(
    inventory: PhonemeInventory,
    plan: CorpusPlan | None = None,
    corpus_name: str = "corpus.wav",
) -> tuple[AudioClip, UnitDatabase]:
    plan = plan or CorpusPlan()
    labels = inventory.valid_labels()
    if not labels:
        raise ValueError("inventory has no valid phonemes")
    top = burst_frequency(len(labels) - 1)
    if top >= plan.rate / 2:
        raise ValueError(
            f"{len(labels)} units need {top:.0f} Hz, at or above Nyquist for {plan.rate} Hz"
        )
    u, g = plan.unit_samples, plan.guard_samples
    if u == 0:
        raise ValueError("unit_ms rounds to zero samples at this rate")
    samples = np.zeros(len(labels) * (u + g) + g, dtype=np.int16)
    rng = np.random.default_rng(plan.seed) if plan.seed is not None else None
    t = np.arange(u) / plan.rate
    entries = []
    for i, lbl in enumerate(labels):
        phase = rng.uniform(0, 2 * np.pi) if rng is not None else 0.0
        tone = AMPLITUDE * np.sin(2 * np.pi * burst_frequency(i) * t + phase)
        start = g + i * (u + g)
        samples[start:start + u] = np.round(tone).astype(np.int16)
        # six decimals survive a manifest round trip unchanged
        span = TimeSpan(round(start / plan.rate, 6), round((start + u) / plan.rate, 6))
        entries.append(UnitEntry(lbl, parse_label(lbl).display, span))
    clip = AudioClip(samples, plan.rate)
    return clip, UnitDatabase(entries, CorpusId(corpus_name, plan.rate))


def estimate_frequency(samples: np.ndarray, rate: int) -> float | None:
    """Dominant frequency via a zero-padded FFT peak with parabolic refinement."""
    x = np.asarray(samples, dtype=np.float64)
    if len(x) < 4 or not np.any(x):
        return None
    nfft = 1 << int(np.ceil(np.log2(max(len(x), 2 * rate))))  # <= 0.5 Hz bins
    mag = np.abs(np.fft.rfft(x - x.mean(), nfft))
    k = int(np.argmax(mag[1:-1])) + 1
    a, b, c = np.log(mag[k - 1:k + 2] + 1e-12)
    denom = a - 2 * b + c
    shift = 0.5 * (a - c) / denom if denom else 0.0
    return (k + shift) * rate / nfft


def identify_unit(
    clip: AudioClip,
    plan: CorpusPlan,
    inventory: PhonemeInventory,
    labels: list[str] | None = None,
) -> str | None:
    """Recover the label whose burst ``clip`` was cut from, or None.

    ``labels`` may pass a precomputed ``inventory.valid_labels()``.
    """
    labels = labels if labels is not None else inventory.valid_labels()
    f = estimate_frequency(clip.samples, clip.sample_rate)
    if f is None:
        return None
    i = int(round((f - BASE_HZ) / STEP_HZ))
    if not 0 <= i < len(labels):
        return None
    if abs(f - burst_frequency(i)) > MATCH_TOLERANCE_HZ:
        return None
    return labels[i]
