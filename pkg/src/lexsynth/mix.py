"""Assemble training corpora: upsampling, concatenation, joint labeled sets."""

from __future__ import annotations

import random

from .corpus_io import LabeledCorpus, TokenizedCorpus
from .errors import ValidationError


def upsample_to_match(gold: TokenizedCorpus, target_size: int, seed: int) -> TokenizedCorpus:
    """Repeat a small corpus to exactly target_size sentences.

    floor(target_size / |gold|) full copies in original order, then a seeded
    uniform sample without replacement of the remainder, kept in original
    relative order; per-sentence multiplicities differ by at most one.
    """
    if not gold:
        raise ValidationError("cannot upsample an empty corpus")
    if target_size < 1:
        raise ValidationError("target size must be >= 1")
    copies, remainder = divmod(target_size, len(gold))
    out: TokenizedCorpus = []
    for _ in range(copies):
        out.extend(gold)
    if remainder:
        picks = sorted(random.Random(seed).sample(range(len(gold)), remainder))
        out.extend(gold[i] for i in picks)
    return out


def concat_shuffle(
    corpora: list[TokenizedCorpus], seed: int, shuffle: bool = True
) -> TokenizedCorpus:
    """Concatenate in argument order, then optionally apply a seeded permutation."""
    out: TokenizedCorpus = []
    for corpus in corpora:
        out.extend(corpus)
    if shuffle:
        random.Random(seed).shuffle(out)
    return out


def build_joint_labeled(gold: LabeledCorpus, pseudo: LabeledCorpus) -> LabeledCorpus:
    """Gold-then-pseudo concatenation; shuffling is left to the trainer."""
    if gold.schema is not pseudo.schema:
        raise ValidationError(
            f"schema mismatch: gold is {gold.schema.value}, pseudo is {pseudo.schema.value}"
        )
    return LabeledCorpus(gold.schema, gold.sentences + pseudo.sentences)
