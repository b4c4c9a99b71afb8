"""Corpus parsing and serialization.

Formats handled:
  * plain monolingual text: one tokenized sentence per line, space-separated
  * TwoColumn: ``token<TAB>label`` lines, blank line between sentences
    (extra tab-separated columns are preserved for round-tripping)
  * CoNLL-U: standard 10-column lines; comments, multiword-token range lines
    (ID like ``1-2``) and empty-node lines (ID like ``1.1``) are kept verbatim
    as passthrough and excluded from the token sequence
  * parallel text: two line-aligned monolingual files

All outputs are UTF-8 with LF line endings and a trailing newline.
"""

from __future__ import annotations

import enum
import logging
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataFormatError, ValidationError

logger = logging.getLogger(__name__)

TokenizedSentence = list[str]
TokenizedCorpus = list[TokenizedSentence]
ParallelCorpus = list[tuple[TokenizedSentence, TokenizedSentence]]


class Schema(enum.Enum):
    NER = "ner"
    POS = "pos"
    DEP = "dep"


class Format(enum.Enum):
    TWO_COL = "two-col"
    CONLLU = "conllu"


@dataclass
class TwoColRows:
    """Original field rows of a TwoColumn sentence, for exact round-trips."""

    token_col: int
    label_col: int
    rows: list[list[str]]


@dataclass
class ConlluRows:
    """Sentence block rows: ("raw", line) for comments/ranges/empty nodes,
    ("word", columns) for ordinary 10-column word lines."""

    rows: list[tuple[str, object]]


@dataclass
class LabeledSentence:
    tokens: list[str]
    schema: Schema
    labels: list[str] | None = None    # one tag per token (NER/POS)
    heads: list[int] | None = None     # DEP: 0 = root
    deprels: list[str] | None = None   # DEP
    passthrough: TwoColRows | ConlluRows | None = None

    def __post_init__(self):
        n = len(self.tokens)
        if n == 0:
            raise ValidationError("labeled sentence must have at least one token")
        for t in self.tokens:
            if not t or len(t.split()) != 1:
                raise ValidationError(f"bad token {t!r}: tokens must be non-empty without whitespace")
        if self.schema in (Schema.NER, Schema.POS):
            if self.labels is None or len(self.labels) != n:
                raise ValidationError(f"{self.schema.value} sentence needs exactly one label per token")
        else:
            if self.heads is None or self.deprels is None:
                raise ValidationError("dep sentence needs heads and deprels")
            if len(self.heads) != n or len(self.deprels) != n:
                raise ValidationError("dep column length must equal token count")
            for h in self.heads:
                if not 0 <= h <= n:
                    raise ValidationError(f"dep head {h} out of range [0, {n}]")


@dataclass
class LabeledCorpus:
    schema: Schema
    sentences: list[LabeledSentence] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.sentences)


def read_mono(path, limit: int | None = None) -> TokenizedCorpus:
    """Read one tokenized sentence per line; blank lines are skipped.

    ``limit`` keeps only the first N sentences.
    """
    corpus: TokenizedCorpus = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            tokens = line.split()
            if not tokens:
                continue
            corpus.append(tokens)
            if limit is not None and len(corpus) >= limit:
                break
    return corpus


def write_mono(corpus: TokenizedCorpus, path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for sentence in corpus:
            fh.write(" ".join(sentence) + "\n")


def read_parallel(src_path, tgt_path) -> ParallelCorpus:
    """Pair line i of the source file with line i of the target file.

    Line counts must match exactly; pairs where either side is blank are
    dropped with a counted warning.
    """
    with Path(src_path).open("r", encoding="utf-8") as fh:
        src_lines = fh.read().splitlines()
    with Path(tgt_path).open("r", encoding="utf-8") as fh:
        tgt_lines = fh.read().splitlines()
    if len(src_lines) != len(tgt_lines):
        raise ValidationError(
            f"parallel line count mismatch: {src_path} has {len(src_lines)} lines, "
            f"{tgt_path} has {len(tgt_lines)} lines"
        )
    pairs: ParallelCorpus = []
    dropped = 0
    for src, tgt in zip(src_lines, tgt_lines):
        s, t = src.split(), tgt.split()
        if not s or not t:
            dropped += 1
            continue
        pairs.append((s, t))
    if dropped:
        logger.warning("dropped %d parallel pair(s) with a blank side", dropped)
    return pairs


def write_parallel(corpus: ParallelCorpus, src_path, tgt_path) -> None:
    write_mono([s for s, _ in corpus], src_path)
    write_mono([t for _, t in corpus], tgt_path)


# Apostrophes and hyphens are never split off, even at token edges.
_ATTACHED = {"'", "’", "-"}


def _is_splittable_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P") and ch not in _ATTACHED


def tokenize_basic(text: str) -> TokenizedSentence:
    """Fallback whitespace + edge-punctuation tokenizer.

    Splits on Unicode whitespace, then peels leading/trailing punctuation off
    each chunk into separate tokens. Word-internal characters are never split.
    """
    tokens: TokenizedSentence = []
    for chunk in text.split():
        lead: list[str] = []
        trail: list[str] = []
        while chunk and _is_splittable_punct(chunk[0]):
            lead.append(chunk[0])
            chunk = chunk[1:]
        while chunk and _is_splittable_punct(chunk[-1]):
            trail.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(lead)
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(trail))
    return tokens


def read_labeled(
    path,
    schema: Schema,
    format: Format = Format.TWO_COL,
    token_col: int = 0,
    label_col: int = 1,
) -> LabeledCorpus:
    """Parse a labeled corpus in TwoColumn or CoNLL-U format."""
    if format is Format.TWO_COL:
        if schema is Schema.DEP:
            raise ValidationError("dep schema needs head/deprel columns; use the conllu format")
        return _read_two_col(path, schema, token_col, label_col)
    if schema is Schema.NER:
        raise ValidationError("conllu carries no NER column; use the two-col format")
    return _read_conllu(path, schema)


def _read_two_col(path, schema: Schema, token_col: int, label_col: int) -> LabeledCorpus:
    path = Path(path)
    need = max(token_col, label_col) + 1
    sentences: list[LabeledSentence] = []
    rows: list[list[str]] = []
    start_line = 0
    ncols: int | None = None

    def flush():
        if not rows:
            return
        tokens = [r[token_col] for r in rows]
        labels = [r[label_col] for r in rows]
        try:
            sent = LabeledSentence(
                tokens, schema, labels=labels,
                passthrough=TwoColRows(token_col, label_col, [r.copy() for r in rows]),
            )
        except ValidationError as exc:
            raise DataFormatError(str(exc), path=path, line=start_line) from exc
        sentences.append(sent)
        rows.clear()

    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                flush()
                continue
            fields = line.split("\t")
            if ncols is None:
                ncols = len(fields)
                if ncols < need:
                    raise DataFormatError(
                        f"need at least {need} tab-separated columns, got {ncols}",
                        path=path, line=lineno,
                    )
            if len(fields) != ncols:
                raise DataFormatError(
                    f"inconsistent column count: expected {ncols}, got {len(fields)}",
                    path=path, line=lineno,
                )
            if not fields[token_col] or not fields[label_col]:
                raise DataFormatError("empty token or label field", path=path, line=lineno)
            if not rows:
                start_line = lineno
            rows.append(fields)
    flush()
    return LabeledCorpus(schema, sentences)


_CONLLU_NCOLS = 10


def _conllu_id_kind(id_field: str) -> str:
    if id_field.isdigit():
        return "word"
    head, sep, tail = id_field.partition("-")
    if sep and head.isdigit() and tail.isdigit():
        return "range"
    head, sep, tail = id_field.partition(".")
    if sep and head.isdigit() and tail.isdigit():
        return "empty"
    return "bad"


def _read_conllu(path, schema: Schema) -> LabeledCorpus:
    path = Path(path)
    sentences: list[LabeledSentence] = []
    rows: list[tuple[str, object]] = []
    word_lines: list[int] = []

    def flush():
        if not rows:
            return
        if not word_lines:
            raise DataFormatError("sentence block has no word lines", path=path, line=lineno)
        word_rows = [payload for kind, payload in rows if kind == "word"]
        tokens = [cols[1] for cols in word_rows]
        labels = [cols[3] for cols in word_rows]
        deprels = [cols[7] for cols in word_rows]
        heads = []
        if schema is Schema.DEP:
            for ln, cols in zip(word_lines, word_rows):
                try:
                    heads.append(int(cols[6]))
                except ValueError:
                    raise DataFormatError(
                        f"non-integer HEAD {cols[6]!r}", path=path, line=ln
                    ) from None
        try:
            sent = LabeledSentence(
                tokens,
                schema,
                labels=labels if schema is Schema.POS else None,
                heads=heads if schema is Schema.DEP else None,
                deprels=deprels if schema is Schema.DEP else None,
                passthrough=ConlluRows(rows.copy()),
            )
        except ValidationError as exc:
            raise DataFormatError(str(exc), path=path, line=word_lines[0]) from exc
        sentences.append(sent)
        rows.clear()
        word_lines.clear()

    lineno = 0
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                flush()
                continue
            if line.startswith("#"):
                rows.append(("raw", line))
                continue
            cols = line.split("\t")
            if len(cols) != _CONLLU_NCOLS:
                raise DataFormatError(
                    f"expected {_CONLLU_NCOLS} columns, got {len(cols)}",
                    path=path, line=lineno,
                )
            kind = _conllu_id_kind(cols[0])
            if kind == "bad":
                raise DataFormatError(f"bad ID field {cols[0]!r}", path=path, line=lineno)
            if kind == "word":
                rows.append(("word", cols))
                word_lines.append(lineno)
            else:
                rows.append(("raw", line))
    flush()
    return LabeledCorpus(schema, sentences)


def write_labeled(corpus: LabeledCorpus, path, format: Format = Format.TWO_COL) -> None:
    """Serialize a labeled corpus, preserving passthrough rows exactly."""
    if format is Format.TWO_COL:
        if corpus.schema is Schema.DEP:
            raise ValidationError("dep corpora cannot be written as two-col; use conllu")
        _write_two_col(corpus, path)
    else:
        if corpus.schema is Schema.NER:
            raise ValidationError("ner corpora cannot be written as conllu; use two-col")
        _write_conllu(corpus, path)


def _write_two_col(corpus: LabeledCorpus, path) -> None:
    blocks = []
    for sent in corpus.sentences:
        pt = sent.passthrough if isinstance(sent.passthrough, TwoColRows) else None
        lines = []
        for i, token in enumerate(sent.tokens):
            if pt is not None:
                fields = pt.rows[i].copy()
                fields[pt.token_col] = token
                fields[pt.label_col] = sent.labels[i]
                lines.append("\t".join(fields))
            else:
                lines.append(f"{token}\t{sent.labels[i]}")
        blocks.append("\n".join(lines))
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n\n".join(blocks))
        if blocks:
            fh.write("\n")


def _write_conllu(corpus: LabeledCorpus, path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for sent in corpus.sentences:
            pt = sent.passthrough if isinstance(sent.passthrough, ConlluRows) else None
            if pt is not None:
                i = 0
                for kind, payload in pt.rows:
                    if kind == "raw":
                        fh.write(payload + "\n")
                        continue
                    cols = list(payload)
                    cols[1] = sent.tokens[i]
                    if corpus.schema is Schema.POS:
                        cols[3] = sent.labels[i]
                    else:
                        cols[6] = str(sent.heads[i])
                        cols[7] = sent.deprels[i]
                    fh.write("\t".join(cols) + "\n")
                    i += 1
            else:
                for i, token in enumerate(sent.tokens):
                    cols = [str(i + 1), token, "_", "_", "_", "_", "_", "_", "_", "_"]
                    if corpus.schema is Schema.POS:
                        cols[3] = sent.labels[i]
                    else:
                        cols[6] = str(sent.heads[i])
                        cols[7] = sent.deprels[i]
                    fh.write("\t".join(cols) + "\n")
            fh.write("\n")


def sniff_format(path) -> Format:
    """Guess TwoColumn vs CoNLL-U from the first non-blank lines."""
    with Path(path).open("r", encoding="utf-8") as fh:
        seen = 0
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                return Format.CONLLU
            if len(line.split("\t")) == _CONLLU_NCOLS:
                return Format.CONLLU
            seen += 1
            if seen >= 20:
                break
    return Format.TWO_COL
