"""Mono 16-bit PCM clips: WAV I/O, sample-exact slicing and concatenation.

Clips are immutable. Nothing in this module changes a sample value; every
operation only selects or juxtaposes samples.
"""
from __future__ import annotations

import math
import struct
from collections.abc import Iterable
from dataclasses import dataclass
from os import PathLike

import numpy as np

CANONICAL_RATE = 44100

_PCM = 0x0001
_EXTENSIBLE = 0xFFFE
_HEADER = struct.Struct("<4sI4s4sIHHIIHH4sI")
_MAX_DATA_BYTES = 0xFFFFFFFF - (_HEADER.size - 8)


class WavError(ValueError):
    """Base class for unreadable or unsupported WAV content."""


class NotRiffWaveError(WavError):
    pass


class UnsupportedEncodingError(WavError):
    """Format tag is not integer PCM."""


class BitDepthError(WavError):
    pass


class ChannelCountError(WavError):
    pass


class TruncatedDataError(WavError):
    pass


class ClipTooLongError(WavError):
    """Clip cannot be described by the 32-bit RIFF size fields."""


class SampleRateMismatch(ValueError):
    pass


class SpanError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AudioClip:
    samples: np.ndarray
    sample_rate: int = CANONICAL_RATE

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError(f"sample rate must be positive, got {self.sample_rate}")
        arr = np.asarray(self.samples)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional (mono)")
        if arr.dtype != np.int16:
            if arr.size and (arr.min() < -32768 or arr.max() > 32767):
                raise ValueError("sample value outside the signed 16-bit range")
            arr = arr.astype(np.int16)
        if arr.flags.writeable:
            arr = arr.copy()
            arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return len(self.samples)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AudioClip):
            return NotImplemented
        return self.sample_rate == other.sample_rate and np.array_equal(self.samples, other.samples)

    def __repr__(self) -> str:
        return f"AudioClip({len(self)} samples @ {self.sample_rate} Hz)"

    @property
    def duration_seconds(self) -> float:
        return len(self.samples) / self.sample_rate

    @classmethod
    def empty(cls, sample_rate: int = CANONICAL_RATE) -> "AudioClip":
        return cls(np.zeros(0, dtype=np.int16), sample_rate)


@dataclass(frozen=True)
class TimeSpan:
    start_sec: float
    end_sec: float

    def __post_init__(self):
        if not (math.isfinite(self.start_sec) and math.isfinite(self.end_sec)):
            raise SpanError("span bounds must be finite")
        if self.start_sec < 0:
            raise SpanError(f"span starts before zero: {self.start_sec}")
        if self.start_sec >= self.end_sec:
            raise SpanError(f"span start {self.start_sec} is not before end {self.end_sec}")

    def sample_range(self, rate: int) -> tuple[int, int]:
        return seconds_to_index(self.start_sec, rate), seconds_to_index(self.end_sec, rate)


def seconds_to_index(seconds: float, rate: int) -> int:
    """Round half up: the sample index nearest to ``seconds``."""
    return math.floor(seconds * rate + 0.5)


# --- WAV --------------------------------------------------------------------


def read_wav(data: bytes) -> AudioClip:
    """Decode a RIFF/WAVE PCM file holding 16-bit mono samples."""
    if len(data) < 12 or data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise NotRiffWaveError("not a RIFF/WAVE file")
    fmt = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos:pos + 4]
        size = struct.unpack_from("<I", data, pos + 4)[0]
        body = pos + 8
        if chunk_id == b"fmt ":
            if size < 16 or body + size > len(data):
                raise WavError("fmt chunk is too short")
            fmt = struct.unpack_from("<HHIIHH", data, body)
            tag, channels, rate, _, _, bits = fmt
            if tag == _EXTENSIBLE and size >= 40:
                tag = struct.unpack_from("<H", data, body + 24)[0]
            if tag != _PCM:
                raise UnsupportedEncodingError(f"format tag 0x{tag:04X} is not PCM")
            if bits != 16:
                raise BitDepthError(f"{bits} bits per sample; only 16 is supported")
            if channels != 1:
                raise ChannelCountError(f"{channels} channels; only mono is supported")
            if rate == 0:
                raise WavError("sample rate is zero")
        elif chunk_id == b"data":
            if fmt is None:
                raise WavError("data chunk precedes fmt chunk")
            if body + size > len(data) or size % 2:
                raise TruncatedDataError(
                    f"data chunk declares {size} bytes, {len(data) - body} available"
                )
            samples = np.frombuffer(data, dtype="<i2", count=size // 2, offset=body)
            return AudioClip(samples.astype(np.int16), fmt[2])
        pos = body + size + (size & 1)  # chunks are word aligned
    if fmt is None:
        raise WavError("no fmt chunk")
    raise TruncatedDataError("no data chunk")


def write_wav(clip: AudioClip) -> bytes:
    """Canonical 44-byte header followed by little-endian samples; no extra chunks."""
    nbytes = 2 * len(clip.samples)
    if nbytes > _MAX_DATA_BYTES:
        raise ClipTooLongError(f"{len(clip.samples)} samples exceed the 4 GiB RIFF limit")
    header = _HEADER.pack(
        b"RIFF", 36 + nbytes, b"WAVE",
        b"fmt ", 16, _PCM, 1, clip.sample_rate, clip.sample_rate * 2, 2, 16,
        b"data", nbytes,
    )
    return header + clip.samples.astype("<i2").tobytes()


def read_wav_file(path: str | PathLike) -> AudioClip:
    with open(path, "rb") as fh:
        return read_wav(fh.read())


def write_wav_file(path: str | PathLike, clip: AudioClip) -> None:
    with open(path, "wb") as fh:
        fh.write(write_wav(clip))


# --- editing ----------------------------------------------------------------


def slice_clip(clip: AudioClip, span: TimeSpan) -> AudioClip:
    """Samples ``[round(start*rate), round(end*rate))`` of ``clip``; shares memory."""
    lo, hi = span.sample_range(clip.sample_rate)
    if hi > len(clip.samples):
        raise SpanError(
            f"span ends at sample {hi}, clip has {len(clip.samples)} "
            f"({span.end_sec:.6f}s > {clip.duration_seconds:.6f}s)"
        )
    return AudioClip(clip.samples[lo:hi], clip.sample_rate)


def concat(clips: Iterable[AudioClip], sample_rate: int | None = None) -> AudioClip:
    """Juxtapose clips in order. An empty input gives an empty clip."""
    clips = list(clips)
    rates = {c.sample_rate for c in clips}
    if sample_rate is not None:
        rates.add(sample_rate)
    if len(rates) > 1:
        raise SampleRateMismatch(f"cannot concatenate mixed sample rates {sorted(rates)}")
    rate = rates.pop() if rates else CANONICAL_RATE
    if not clips:
        return AudioClip.empty(rate)
    if len(clips) == 1:
        return clips[0]
    return AudioClip(np.concatenate([c.samples for c in clips]), rate)


def silence(duration_ms: float, rate: int = CANONICAL_RATE) -> AudioClip:
    if duration_ms < 0:
        raise ValueError("duration must be non-negative")
    n = math.floor(duration_ms * rate / 1000 + 0.5)
    return AudioClip(np.zeros(n, dtype=np.int16), rate)

