"""Figures written next to the tab-separated reports.

Uses the object-oriented matplotlib API with an Agg canvas, so nothing here
touches pyplot's global state or needs a display.
"""
from __future__ import annotations

from os import PathLike

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .audio import AudioClip
from .phonemizer import UNIT_CLASSES
from .synthesizer import SynthesisReport

_MAX_LABELLED_UNITS = 40


def _save(fig: Figure, path: str | PathLike) -> None:
    FigureCanvasAgg(fig)
    fig.savefig(path, dpi=120, bbox_inches="tight")


def plot_synthesis(clip: AudioClip, report: SynthesisReport, path: str | PathLike) -> None:
    """Output waveform with each concatenated unit shaded and, if few, labelled."""
    fig = Figure(figsize=(12, 4))
    ax = fig.add_subplot()
    rate = clip.sample_rate
    n = len(clip.samples)
    # decimate long outputs; min/max envelope keeps the shape
    if n > 20000:
        step = n // 10000
        trimmed = clip.samples[: (n // step) * step].reshape(-1, step)
        t = np.arange(trimmed.shape[0]) * step / rate
        ax.fill_between(t, trimmed.min(axis=1), trimmed.max(axis=1), color="k", lw=0)
    else:
        ax.plot(np.arange(n) / rate, clip.samples, color="k", lw=0.5)
    for i, u in enumerate(report.units):
        start, end = u.offset / rate, (u.offset + u.length) / rate
        ax.axvspan(start, end, color="C0" if i % 2 else "C1", alpha=0.15, lw=0)
        if len(report.units) <= _MAX_LABELLED_UNITS:
            ax.text((start + end) / 2, 33000, u.label, rotation=90, fontsize=6,
                    ha="center", va="top")
    ax.set_xlim(0, max(n / rate, 1e-3))
    ax.set_ylim(-34000, 34000)
    ax.set_xlabel("time (s)")
    ax.set_ylabel("amplitude")
    ax.set_title(
        f"{report.units_emitted} units, {len(report.skipped_phonemes)} skipped, "
        f"{report.output_duration_sec:.3f} s"
    )
    _save(fig, path)


def plot_inventory(counts: dict[str, tuple[int, int]], path: str | PathLike) -> None:
    """Stacked valid/invalid bars per unit class."""
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    x = np.arange(len(UNIT_CLASSES))
    valid = np.array([counts[c][1] for c in UNIT_CLASSES])
    total = np.array([counts[c][0] for c in UNIT_CLASSES])
    ax.bar(x, valid, color="C2", label="valid")
    ax.bar(x, total - valid, bottom=valid, color="C3", label="invalid")
    for xi, v, tot in zip(x, valid, total):
        ax.text(xi, tot, f"{v}/{tot}", ha="center", va="bottom", fontsize=8)
    ax.set_xticks(x, UNIT_CLASSES)
    ax.set_ylabel("phonemes")
    ax.set_title(f"{valid.sum()} valid of {total.sum()}")
    ax.legend(frameon=False)
    _save(fig, path)
