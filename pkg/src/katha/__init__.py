"""katha: concatenative V/CV phoneme text-to-speech for Punjabi in Gurmukhi script."""
from .audio import AudioClip, TimeSpan, concat, read_wav, silence, slice_clip, write_wav
from .gurmukhi import classify, normalize, tokenize
from .phonemizer import (
    Phoneme,
    PhonemeInventory,
    generate_inventory,
    is_valid,
    label,
    parse_label,
    segment_word,
)
from .synthesizer import SynthesisOptions, SynthesisReport, synthesize, synthesize_streaming
from .unitdb import UnitDatabase, UnitEntry

__version__ = "0.1.0"

__all__ = [
    "AudioClip",
    "Phoneme",
    "PhonemeInventory",
    "SynthesisOptions",
    "SynthesisReport",
    "TimeSpan",
    "UnitDatabase",
    "UnitEntry",
    "classify",
    "concat",
    "generate_inventory",
    "is_valid",
    "label",
    "normalize",
    "parse_label",
    "read_wav",
    "segment_word",
    "silence",
    "slice_clip",
    "synthesize",
    "synthesize_streaming",
    "tokenize",
    "write_wav",
]
