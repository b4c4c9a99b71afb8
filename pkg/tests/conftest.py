"""Shared fixtures: worked-example data, corpus builders, fuzz generators."""

import random

import pytest

from lexsynth.corpus_io import LabeledCorpus, LabeledSentence, Schema
from lexsynth.lexicon import Lexicon, Provenance

# Maltese worked examples (pseudo monolingual / pseudo labeled / distilled).
MONO_LEX_PAIRS = [
    ("for", "għal"), ("the", "il"), ("of", "ta’"), ("state", "stat"),
    ("which", "lima"), ("it", "hi"), ("to", "għal"), ("be", "tkun"),
    ("unnecessary", "bla bzonn"), ("and", "u"),
]
MONO_SRC = ("Anarchism calls for the abolition of the state , which it holds "
            "to be undesirable , unnecessary , and harmful .")
MONO_WANT = ("Anarchism calls għal il abolition ta’ il stat , lima hi holds "
             "għal tkun undesirable , bla bzonn , u harmful .")

LABELED_LEX_PAIRS = [
    ("I", "jien"), ("suspect", "iddubita"), ("the", "il"), ("of", "ta’"),
    ("Baghdad", "Bagdad"), ("will", "xewqa"), ("look", "hares"), ("as", "kif"),
    ("if", "jekk"), ("war", "gwerra"), ("this", "dan"), ("week", "ġimgħa"),
]
LABELED_SRC = "I suspect the streets of Baghdad will look as if a war is looming this week ."
LABELED_WANT = "jien iddubita il streets ta’ Bagdad xewqa hares kif jekk a gwerra is looming dan ġimgħa ."
LABELED_TAGS = "PRON VERB DET NOUN ADP PROPN AUX VERB SCONJ SCONJ DET NOUN AUX VERB DET NOUN PUNCT"
DISTILLED_TAGS = "PRON VERB DET NOUN ADP PROPN NOUN NOUN SCONJ SCONJ DET NOUN AUX VERB DET NOUN PUNCT"


def build_lexicon(pairs, provenance=Provenance.BASE, **langs):
    lex = Lexicon(**langs)
    for source, target in pairs:
        lex.add(source, target, provenance)
    return lex


def pos_corpus(*sentences):
    """Build a POS-schema corpus from (tokens, tags) pairs or space-joined strings."""
    out = []
    for tokens, tags in sentences:
        if isinstance(tokens, str):
            tokens = tokens.split()
        if isinstance(tags, str):
            tags = tags.split()
        out.append(LabeledSentence(list(tokens), Schema.POS, labels=list(tags)))
    return LabeledCorpus(Schema.POS, out)


@pytest.fixture
def mono_lexicon():
    return build_lexicon(MONO_LEX_PAIRS)


@pytest.fixture
def labeled_lexicon():
    return build_lexicon(LABELED_LEX_PAIRS)


@pytest.fixture
def table2_pos_corpus():
    return pos_corpus((LABELED_SRC, LABELED_TAGS))


_NER_TAGS = ["O", "O", "O", "B-PER", "I-PER", "B-LOC", "B-ORG", "I-ORG", "B-MISC"]
_POS_TAGS = ["NOUN", "VERB", "DET", "ADP", "PRON", "ADJ", "ADV", "PROPN", "PUNCT"]
_DEPRELS = ["nsubj", "obj", "det", "root", "amod", "case", "obl"]


def random_labeled_sentence(rng: random.Random, schema: Schema) -> LabeledSentence:
    n = rng.randint(1, 12)
    tokens = [f"w{rng.randint(0, 400)}" for _ in range(n)]
    if schema is Schema.NER:
        return LabeledSentence(tokens, schema, labels=[rng.choice(_NER_TAGS) for _ in range(n)])
    if schema is Schema.POS:
        return LabeledSentence(tokens, schema, labels=[rng.choice(_POS_TAGS) for _ in range(n)])
    return LabeledSentence(
        tokens, schema,
        heads=[rng.randint(0, n) for _ in range(n)],
        deprels=[rng.choice(_DEPRELS) for _ in range(n)],
    )


def verse_corpus(n_pairs=5000, seed=20):
    """Deterministic verse-scale parallel corpus for induction/benchmark runs.

    A Zipf-ish source vocabulary is mapped word-to-word into a synthetic
    target language, with occasional translation ambiguity, token drops,
    spurious insertions and local reordering, so alignment has realistic
    noise to cut through.
    """
    rng = random.Random(seed)
    vocab_size = 3000
    source_vocab = [f"src{i}" for i in range(vocab_size)]
    translation = {}
    for i, word in enumerate(source_vocab):
        variants = [f"tgt{i}"]
        if rng.random() < 0.2:
            variants.append(f"tgt{i}b")
        translation[word] = variants
    weights = [1.0 / (rank + 3) for rank in range(vocab_size)]
    pairs = []
    for _ in range(n_pairs):
        length = rng.randint(6, 18)
        src = rng.choices(source_vocab, weights=weights, k=length)
        tgt = []
        for word in src:
            if rng.random() < 0.1:
                continue  # untranslated drop
            tgt.append(rng.choice(translation[word]))
        if not tgt:
            tgt = [rng.choice(translation[src[0]])]
        if rng.random() < 0.1:
            tgt.insert(rng.randint(0, len(tgt)), f"tgt{rng.randint(0, vocab_size - 1)}")
        for k in range(len(tgt) - 1):
            if rng.random() < 0.15:
                tgt[k], tgt[k + 1] = tgt[k + 1], tgt[k]
        pairs.append((src, tgt))
    return pairs
