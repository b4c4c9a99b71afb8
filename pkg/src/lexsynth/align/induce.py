"""Alignment symmetrization and lexicon induction from link counts."""

from __future__ import annotations

import unicodedata
from collections import Counter
from pathlib import Path

from ..corpus_io import ParallelCorpus
from ..errors import ValidationError
from ..lexicon import Lexicon, Provenance
from .model1 import AlignerConfig, SentenceAlignment, Symmetrization


def symmetrize(
    forward: list[SentenceAlignment],
    backward: list[SentenceAlignment],
    method: Symmetrization = Symmetrization.INTERSECTION,
) -> list[SentenceAlignment]:
    """Combine directional alignments; output is in the forward orientation.

    Intersection keeps (i, j) iff the forward side links (i, j) and the
    backward side links (j, i).
    """
    if len(forward) != len(backward):
        raise ValidationError(
            f"alignment count mismatch: {len(forward)} forward vs {len(backward)} backward"
        )
    if method is Symmetrization.FORWARD:
        return list(forward)
    out: list[SentenceAlignment] = []
    for n, (fwd, bwd) in enumerate(zip(forward, backward)):
        if fwd.src_len != bwd.tgt_len or fwd.tgt_len != bwd.src_len:
            raise ValidationError(
                f"sentence {n}: forward is {fwd.src_len}x{fwd.tgt_len} but "
                f"backward is {bwd.src_len}x{bwd.tgt_len}"
            )
        if method is Symmetrization.BACKWARD:
            links = frozenset((i, j) for j, i in bwd.links)
        else:
            links = frozenset(link for link in fwd.links if (link[1], link[0]) in bwd.links)
        out.append(SentenceAlignment(links, src_len=fwd.src_len, tgt_len=fwd.tgt_len))
    return out


def _is_punct(word: str) -> bool:
    return len(word) == 1 and unicodedata.category(word).startswith("P")


def induce_lexicon(
    corpus: ParallelCorpus,
    alignments: list[SentenceAlignment],
    cfg: AlignerConfig = AlignerConfig(),
) -> Lexicon:
    """Turn repeatedly-aligned word pairs into lexicon entries.

    Counts every linked (source type, target type) occurrence over the corpus
    and keeps the pairs seen at least cfg.min_count times, ordered by
    descending count then lexicographically. Pairs where either side is a
    lone punctuation character are dropped unless cfg.keep_punct.
    """
    if len(alignments) != len(corpus):
        raise ValidationError(
            f"{len(alignments)} alignments for {len(corpus)} sentence pairs"
        )
    counts: Counter[tuple[str, str]] = Counter()
    for n, ((src, tgt), alignment) in enumerate(zip(corpus, alignments)):
        for i, j in alignment.links:
            if i >= len(src) or j >= len(tgt):
                raise ValidationError(
                    f"sentence {n}: link ({i},{j}) out of range for "
                    f"{len(src)}x{len(tgt)} pair"
                )
            s, t = src[i], tgt[j]
            if cfg.case_fold:
                s, t = s.casefold(), t.casefold()
            counts[(s, t)] += 1
    kept = [
        (pair, count)
        for pair, count in counts.items()
        if count >= cfg.min_count
        and (cfg.keep_punct or not (_is_punct(pair[0]) or _is_punct(pair[1])))
    ]
    kept.sort(key=lambda item: (-item[1], item[0]))
    lex = Lexicon()
    for (s, t), _ in kept:
        lex.add(s, t, Provenance.INDUCED)
    return lex


def write_alignments(alignments: list[SentenceAlignment], path) -> None:
    """One sentence per line in the conventional space-separated i-j format."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for alignment in alignments:
            fh.write(" ".join(f"{i}-{j}" for i, j in sorted(alignment.links)) + "\n")
