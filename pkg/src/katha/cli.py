"""Command line interface.

Exit statuses: 0 success, 1 usage error, 2 input-file error, 3 validation
failure, 4 synthesis failure (``--on-missing error`` hit an unknown unit).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import unitdb
from .audio import WavError, read_wav_file, write_wav_file
from .corpus import CorpusPlan, generate
from .phonemizer import (
    PLACEHOLDER_INVENTORY_FILE,
    UNIT_CLASSES,
    InventoryError,
    dump_inventory,
    generate_inventory,
    load_inventory,
    placeholder_invalid_labels,
    segment_text,
)
from .synthesizer import MissingUnitError, OnMissing, SynthesisOptions, synthesize

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VALIDATION = 3
EXIT_SYNTHESIS = 4


class InputFileError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputFileError(f"{path}: {exc.strerror or exc}") from None


def _decode(data: bytes, name: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputFileError(f"{name}: malformed UTF-8 at byte {exc.start}") from None


def _read_text(args) -> str:
    if args.stdin:
        return _decode(sys.stdin.buffer.read(), "<stdin>")
    return _decode(_read_bytes(args.text), args.text)


def _read_db(path: str) -> unitdb.UnitDatabase:
    try:
        return unitdb.load(_read_bytes(path))
    except unitdb.UnitDbError as exc:
        raise InputFileError(f"{path}: {exc}") from None


def _read_corpus(path: str):
    try:
        return read_wav_file(path)
    except OSError as exc:
        raise InputFileError(f"{path}: {exc.strerror or exc}") from None
    except WavError as exc:
        raise InputFileError(f"{path}: {exc}") from None


def _read_inventory(path: str):
    try:
        return load_inventory(_decode(_read_bytes(path), path))
    except InventoryError as exc:
        raise InputFileError(f"{path}: {exc}") from None


def _add_text_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--text", metavar="FILE", help="UTF-8 text file")
    src.add_argument("--stdin", action="store_true", help="read text from standard input")


# --- commands ---------------------------------------------------------------


def cmd_synth(args) -> int:
    db = _read_db(args.db)
    corpus = _read_corpus(args.corpus)
    text = _read_text(args)
    findings = unitdb.validate(db, corpus)
    if unitdb.has_errors(findings):
        for f in findings:
            if f.severity == unitdb.ERROR:
                _err(f"{args.db}: {f}")
        return EXIT_VALIDATION
    opts = SynthesisOptions(gap_ms=args.gap_ms, on_missing=OnMissing(args.on_missing))
    try:
        clip, report = synthesize(text, db, corpus, opts)
    except MissingUnitError as exc:
        _err(f"synthesis failed: word {exc.word_index} ({exc.word}): "
             f"no unit for {exc.label}")
        return EXIT_SYNTHESIS
    write_wav_file(args.out, clip)
    lines = "\n".join(report.lines()) + "\n"
    if args.report:
        Path(args.report).write_text(lines, encoding="utf-8")
    else:
        sys.stderr.write(lines)
    if args.figure:
        from .plotting import plot_synthesis

        plot_synthesis(clip, report, args.figure)
    return EXIT_OK


def cmd_phonemes(args) -> int:
    text = _read_text(args)
    inventory = _read_inventory(args.inventory) if args.inventory else None
    out = sys.stdout
    for w, (word, units, diags) in enumerate(segment_text(text)):
        labels = []
        for p in units:
            lbl = p.label
            if inventory is not None and not inventory.is_valid(p):
                lbl += "!"
            labels.append(lbl)
        out.write(f"{word}\t{' '.join(labels)}\n")
        for d in diags:
            _err(f"diagnostic\t{w}\t{d.position}\t{d.kind.value}\t{d.detail}")
    return EXIT_OK


def cmd_db_validate(args) -> int:
    db = _read_db(args.db)
    corpus = _read_corpus(args.corpus)
    inventory = _read_inventory(args.inventory) if args.inventory else None
    findings = unitdb.validate(db, corpus, inventory)
    for f in findings:
        print(f)
    return EXIT_VALIDATION if unitdb.has_errors(findings) else EXIT_OK


def cmd_db_build(args) -> int:
    data = _read_bytes(args.labels)
    corpus_id = None
    if args.corpus_name or args.rate:
        corpus_id = unitdb.CorpusId(args.corpus_name or "corpus.wav", args.rate or 44100)
    try:
        db = unitdb.build(data, corpus_id)
    except unitdb.UnitDbError as exc:
        raise InputFileError(f"{args.labels}: {exc}") from None
    Path(args.out).write_bytes(unitdb.save(db))
    return EXIT_OK


def cmd_corpus_gen(args) -> int:
    try:
        plan = CorpusPlan(args.unit_ms, args.guard_ms, args.rate, args.seed)
    except ValueError as exc:
        _err(f"katha corpus-gen: error: {exc}")
        return EXIT_USAGE
    inventory = _read_inventory(args.inventory)
    try:
        clip, db = generate(inventory, plan, corpus_name=Path(args.out_corpus).name)
    except ValueError as exc:
        _err(f"katha corpus-gen: error: {exc}")
        return EXIT_USAGE
    write_wav_file(args.out_corpus, clip)
    Path(args.out_db).write_bytes(unitdb.save(db))
    return EXIT_OK


def cmd_inventory_stats(args) -> int:
    inventory = _read_inventory(args.inventory)
    counts = inventory.counts()
    print("class\ttotal\tinvalid\tvalid")
    for c in UNIT_CLASSES:
        total, valid = counts[c]
        print(f"{c}\t{total}\t{total - valid}\t{valid}")
    total = sum(t for t, _ in counts.values())
    valid = sum(v for _, v in counts.values())
    print(f"total\t{total}\t{total - valid}\t{valid}")
    if args.figure:
        from .plotting import plot_inventory

        plot_inventory(counts, args.figure)
    return EXIT_OK


def cmd_inventory_write(args) -> int:
    invalid = placeholder_invalid_labels() if args.placeholder else ()
    Path(args.out).write_text(dump_inventory(generate_inventory(invalid)), encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="katha", description="Punjabi concatenative V/CV text-to-speech")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize text to a WAV file")
    p.add_argument("--db", required=True, help="unit database manifest")
    p.add_argument("--corpus", required=True, help="corpus WAV the manifest points into")
    _add_text_source(p)
    p.add_argument("--out", required=True, help="output WAV path")
    p.add_argument("--gap-ms", type=float, default=0.0, help="silence between words")
    p.add_argument("--on-missing", choices=[m.value for m in OnMissing], default="skip")
    p.add_argument("--report", help="write key<TAB>value report here instead of stderr")
    p.add_argument("--figure", help="also render the output waveform to this image")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("phonemes", help="list the V/CV units of every word")
    _add_text_source(p)
    p.add_argument("--inventory", help="mark units invalid in this inventory with '!'")
    p.set_defaults(func=cmd_phonemes)

    db = sub.add_parser("db", help="unit database tools")
    dbsub = db.add_subparsers(dest="db_command", required=True)
    p = dbsub.add_parser("validate", help="check a manifest against its corpus")
    p.add_argument("--db", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--inventory")
    p.set_defaults(func=cmd_db_validate)
    p = dbsub.add_parser("build", help="canonical manifest from a label file")
    p.add_argument("--labels", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--corpus-name", help="corpus file name recorded in the manifest")
    p.add_argument("--rate", type=int, help="corpus sample rate recorded in the manifest")
    p.set_defaults(func=cmd_db_build)

    p = sub.add_parser("corpus-gen", help="generate the synthetic sine-burst corpus")
    p.add_argument("--inventory", required=True)
    p.add_argument("--unit-ms", type=float, default=80.0)
    p.add_argument("--guard-ms", type=float, default=20.0)
    p.add_argument("--rate", type=int, default=44100)
    p.add_argument("--seed", type=int, default=None, help="randomize burst start phases")
    p.add_argument("--out-corpus", required=True)
    p.add_argument("--out-db", required=True)
    p.set_defaults(func=cmd_corpus_gen)

    inv = sub.add_parser("inventory", help="phoneme inventory tools")
    invsub = inv.add_subparsers(dest="inventory_command", required=True)
    p = invsub.add_parser("stats", help="per-class valid/invalid counts")
    p.add_argument("--inventory", required=True)
    p.add_argument("--figure", help="also render the counts as a bar chart")
    p.set_defaults(func=cmd_inventory_stats)
    p = invsub.add_parser("write", help="write the generated inventory file")
    p.add_argument("--out", required=True)
    p.add_argument("--placeholder", action="store_true",
                   help=f"flag the 58 placeholder exclusions ({PLACEHOLDER_INVENTORY_FILE})")
    p.set_defaults(func=cmd_inventory_write)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputFileError as exc:
        _err(f"katha: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
