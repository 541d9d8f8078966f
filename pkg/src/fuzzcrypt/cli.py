"""Command-line entry point: fuzzify, rank, encrypt, decrypt, roundtrip."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from . import cipher
from .config import SELECT_ALL, SELECT_TOP_K, PipelineConfig, parse_config
from .errors import CorruptDocumentError, FuzzCryptError
from .features import RelevanceScores, relevance_scores, select_by_threshold, select_top_k
from .fuzzy import MembershipMatrix, fuzzify
from .ingest import extract_text_from_html, featurize, load_text

EXIT_OK = 0
EXIT_IO = 4


@dataclass(frozen=True)
class Analysis:
    text: str
    matrix: MembershipMatrix
    scores: RelevanceScores


def read_content(path, html: bool = False) -> str:
    text = load_text(path).text
    return extract_text_from_html(text) if html else text


def analyze(text: str, cfg: PipelineConfig) -> Analysis:
    """Featurize, fuzzify and score; empty text yields a zero-row matrix."""
    stream = featurize(text, cfg.encoding)
    if len(stream):
        matrix = fuzzify(stream.values, cfg.categories)
    else:
        matrix = MembershipMatrix.empty(cfg.categories)
    return Analysis(text, matrix, relevance_scores(matrix, cfg.categories))


def encrypt_text(text: str, cfg: PipelineConfig) -> tuple[cipher.EncryptedDocument, Analysis]:
    table = cipher.generate_table(cfg.key_bytes(), cfg.alphabet)
    result = analyze(text, cfg)
    spec = cfg.selection
    if spec.mode == SELECT_ALL:
        return cipher.encrypt_document(text, table), result
    if spec.mode == SELECT_TOP_K:
        selection = select_top_k(result.scores, spec.k)
    else:
        selection = select_by_threshold(result.scores, spec.tau)
    return cipher.selective_encrypt(text, table, selection), result


def decrypt_envelope(data: bytes, cfg: PipelineConfig) -> str:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise CorruptDocumentError("envelope is not valid UTF-8") from None
    doc = cipher.EncryptedDocument.from_json(text)
    table = cipher.generate_table(cfg.key_bytes(), cfg.alphabet)
    return cipher.selective_decrypt(doc, table)


def csv_character(ch: str) -> str:
    """CSV-safe form of one character.

    Backslash and control characters (category Cc, which includes CR, LF and
    NUL) are written as Python escapes; everything else is literal. JSON
    reports always carry the literal character.
    """
    if ch == "\\" or unicodedata.category(ch) == "Cc":
        return ch.encode("unicode_escape").decode("ascii")
    return ch


def parse_csv_character(field: str) -> str:
    if field.startswith("\\"):
        return field.encode("ascii").decode("unicode_escape")
    return field


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"


def fuzzify_report(result: Analysis, fmt: str = "csv") -> str:
    """Membership matrix, one row per character.

    Floats use ``repr``, the shortest string that parses back to the same
    double, so reports round-trip losslessly.
    """
    names = list(result.matrix.names)
    values = result.matrix.values
    if fmt == "json":
        return _dumps({
            "categories": names,
            "rows": [
                {"index": i, "character": ch, "memberships": [float(u) for u in values[i]]}
                for i, ch in enumerate(result.text)
            ],
        })
    rows = [["index", "character", *names]]
    rows += [
        [i, csv_character(ch), *(repr(float(u)) for u in values[i])]
        for i, ch in enumerate(result.text)
    ]
    return _csv(rows)


def rank_report(result: Analysis, fmt: str = "csv") -> str:
    scores = result.scores.scores
    ordered = [
        (int(i), result.text[i], float(scores[i]), r)
        for r, i in enumerate(result.scores.ranking, start=1)
    ]
    if fmt == "json":
        return _dumps({
            "rows": [
                {"index": i, "character": ch, "score": s, "rank": r}
                for i, ch, s, r in ordered
            ]
        })
    rows = [["index", "character", "score", "rank"]]
    rows += [[i, csv_character(ch), repr(s), r] for i, ch, s, r in ordered]
    return _csv(rows)


def roundtrip_summary(text: str, cfg: PipelineConfig) -> dict:
    doc, result = encrypt_text(text, cfg)
    recovered = decrypt_envelope(doc.to_json().encode("utf-8"), cfg)
    equal = recovered.encode("utf-8") == text.encode("utf-8")
    if doc.mode == cipher.FULL:
        # Full mode has no manifest; count what it implicitly covers.
        positions = sum(1 for ch in text if ch in cfg.alphabet)
    else:
        positions = len(doc.manifest)
    scores = result.scores.scores
    n = len(scores)
    return {
        "status": "PASS" if equal else "FAIL",
        "equal": equal,
        "mode": doc.mode,
        "characters": len(text),
        "encrypted_positions": positions,
        "score_min": float(scores.min()) if n else None,
        "score_max": float(scores.max()) if n else None,
        "score_mean": math.fsum(scores) / n if n else None,
    }


def roundtrip_report(summary: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return _dumps(summary)
    lines = [summary["status"]]
    for k, v in summary.items():
        if k == "status":
            continue
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, float):
            v = repr(v)
        elif v is None:
            v = "n/a"
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _emit(data: bytes, output):
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(output).write_bytes(data)


def _cmd_fuzzify(args, cfg):
    result = analyze(read_content(args.input, args.html), cfg)
    return fuzzify_report(result, args.format).encode("utf-8")


def _cmd_rank(args, cfg):
    result = analyze(read_content(args.input, args.html), cfg)
    return rank_report(result, args.format).encode("utf-8")


def _cmd_encrypt(args, cfg):
    doc, _ = encrypt_text(read_content(args.input, args.html), cfg)
    return (doc.to_json() + "\n").encode("utf-8")


def _cmd_decrypt(args, cfg):
    return decrypt_envelope(Path(args.input).read_bytes(), cfg).encode("utf-8")


def _cmd_roundtrip(args, cfg):
    summary = roundtrip_summary(read_content(args.input, args.html), cfg)
    return roundtrip_report(summary, args.format).encode("utf-8")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzcrypt",
        description="Fuzzy relevance scoring and substitution encryption of text content.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, formats=None, html=True):
        p = sub.add_parser(name, help=help)
        p.add_argument("--config", required=True, help="JSON pipeline config")
        p.add_argument("--input", required=True, help="input file (UTF-8)")
        p.add_argument("--output", help="output file; stdout when omitted")
        if formats:
            p.add_argument("--format", choices=formats, default=formats[0])
        if html:
            p.add_argument("--html", action="store_true", help="extract visible text from HTML input first")
        p.set_defaults(func=func)

    add("fuzzify", _cmd_fuzzify, "membership degree of every character", ("csv", "json"))
    add("rank", _cmd_rank, "characters ordered by relevance score", ("csv", "json"))
    add("encrypt", _cmd_encrypt, "write an encrypted envelope")
    add("decrypt", _cmd_decrypt, "recover plaintext from an envelope", html=False)
    add("roundtrip", _cmd_roundtrip, "encrypt and decrypt in memory and report", ("text", "json"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        data = args.func(args, cfg)
        _emit(data, args.output)
    except FuzzCryptError as exc:
        print(f"fuzzcrypt: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"fuzzcrypt: error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
