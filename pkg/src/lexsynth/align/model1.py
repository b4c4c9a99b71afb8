"""EM-trained word-translation model (IBM Model 1) over a small parallel corpus.

The translation table t(target | source) is kept sparse over the pairs that
co-occur in some sentence; a distinguished NULL source slot lets target words
align to nothing. The per-iteration E-step runs through a compiled kernel
when available and a numpy fallback otherwise (see ``backend_name``).

Expected counts are accumulated per fixed-size sentence chunk and the chunk
partials are combined in ascending chunk order, so results are identical for
any worker count.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..corpus_io import ParallelCorpus
from ..errors import ValidationError
from ..lexicon import UND

NULL_WORD = "<NULL>"

_CHUNK_SENTS = 1024


def _load_kernel(name: str | None):
    name = name or os.environ.get("LEXSYNTH_EM_BACKEND", "auto")
    if name not in ("auto", "native", "python"):
        raise ValidationError(f"unknown EM backend {name!r}")
    if name in ("auto", "native"):
        try:
            from . import _em_kernel
            return _em_kernel
        except ImportError:
            if name == "native":
                raise
    from . import _em_numpy
    return _em_numpy


_DEFAULT_KERNEL = _load_kernel(None)


def backend_name() -> str:
    """Which E-step kernel is active: "native" (compiled) or "python"."""
    return _DEFAULT_KERNEL.BACKEND


class Symmetrization(enum.Enum):
    INTERSECTION = "intersection"
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True)
class AlignerConfig:
    iterations: int = 5
    min_count: int = 2  # "aligned more than once"
    symmetrization: Symmetrization = Symmetrization.INTERSECTION
    case_fold: bool = True
    keep_punct: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.iterations < 1:
            raise ValidationError("iterations must be >= 1")
        if self.min_count < 1:
            raise ValidationError("min_count must be >= 1")
        if self.threads < 1:
            raise ValidationError("threads must be >= 1")


@dataclass(frozen=True)
class SentenceAlignment:
    """Links (row_index, col_index) in the direction the model was trained;
    a column with no link is NULL-aligned."""

    links: frozenset[tuple[int, int]]
    src_len: int
    tgt_len: int

    def __post_init__(self):
        for i, j in self.links:
            if not (0 <= i < self.src_len and 0 <= j < self.tgt_len):
                raise ValidationError(
                    f"link ({i},{j}) outside sentence of size {self.src_len}x{self.tgt_len}"
                )


@dataclass(eq=False)
class TranslationTable:
    """Sparse t(target word | source word) with a NULL source row."""

    src_lang: str
    tgt_lang: str
    case_fold: bool
    src_words: list[str]           # index 0 is NULL_WORD
    tgt_words: list[str]
    log_likelihoods: list[float]
    _src_index: dict[str, int] = field(repr=False)
    _tgt_index: dict[str, int] = field(repr=False)
    _row_ptr: np.ndarray = field(repr=False)   # len(src_words)+1
    _col: np.ndarray = field(repr=False)       # target id per pair, sorted per row
    _t: np.ndarray = field(repr=False)         # probability per pair
    _keys: np.ndarray = field(repr=False)      # src_id * n_tgt + tgt_id, sorted

    @property
    def source_vocab_size(self) -> int:
        return len(self.src_words)  # includes NULL

    @property
    def target_vocab_size(self) -> int:
        return len(self.tgt_words)

    @property
    def final_log_likelihood(self) -> float:
        return self.log_likelihoods[-1]

    def _fold(self, word: str) -> str:
        return word.casefold() if self.case_fold and word != NULL_WORD else word

    def src_id(self, word: str) -> int:
        return self._src_index.get(self._fold(word), -1)

    def tgt_id(self, word: str) -> int:
        return self._tgt_index.get(self._fold(word), -1)

    def prob(self, src_word: str, tgt_word: str) -> float:
        e = self.src_id(src_word)
        f = self.tgt_id(tgt_word)
        if e < 0 or f < 0:
            return 0.0
        lo, hi = self._row_ptr[e], self._row_ptr[e + 1]
        k = lo + np.searchsorted(self._col[lo:hi], f)
        if k < hi and self._col[k] == f:
            return float(self._t[k])
        return 0.0

    def candidates(self, src_word: str) -> list[tuple[str, float]]:
        """(target word, probability) pairs for a source word, best first."""
        e = self.src_id(src_word)
        if e < 0:
            return []
        lo, hi = self._row_ptr[e], self._row_ptr[e + 1]
        pairs = [(self.tgt_words[int(f)], float(p)) for f, p in zip(self._col[lo:hi], self._t[lo:hi])]
        pairs.sort(key=lambda x: (-x[1], x[0]))
        return pairs

    def probs(self) -> dict[str, dict[str, float]]:
        """Nested source → target → probability dict (small tables only)."""
        out: dict[str, dict[str, float]] = {}
        for e, word in enumerate(self.src_words):
            lo, hi = self._row_ptr[e], self._row_ptr[e + 1]
            out[word] = {
                self.tgt_words[int(f)]: float(p)
                for f, p in zip(self._col[lo:hi], self._t[lo:hi])
            }
        return out

    def row_sums(self) -> dict[str, float]:
        """Per-source-word probability mass (should be 1 for every row)."""
        sums = np.add.reduceat(self._t, self._row_ptr[:-1])
        return {w: float(s) for w, s in zip(self.src_words, sums)}


def _fold_corpus(corpus: ParallelCorpus, case_fold: bool) -> ParallelCorpus:
    if not case_fold:
        return corpus
    return [([w.casefold() for w in s], [w.casefold() for w in t]) for s, t in corpus]


def _validate_corpus(corpus: ParallelCorpus) -> None:
    if not corpus:
        raise ValidationError("cannot train on an empty parallel corpus")
    for n, (s, t) in enumerate(corpus):
        if not s or not t:
            raise ValidationError(f"parallel pair {n} has an empty side")


def train_model1(
    corpus: ParallelCorpus,
    cfg: AlignerConfig = AlignerConfig(),
    src_lang: str = UND,
    tgt_lang: str = UND,
    backend: str | None = None,
) -> TranslationTable:
    """Train t(target | source) by EM.

    t is initialized uniform over the target types co-occurring with each
    source type. Each iteration distributes every target token's posterior
    over the sentence's source tokens plus NULL, renormalizes per source
    type, and records the corpus log-likelihood under the pre-update table.
    """
    _validate_corpus(corpus)
    kernel = _DEFAULT_KERNEL if backend is None else _load_kernel(backend)
    folded = _fold_corpus(corpus, cfg.case_fold)

    src_index: dict[str, int] = {NULL_WORD: 0}
    tgt_index: dict[str, int] = {}
    src_lens = np.array([len(s) for s, _ in folded], dtype=np.int64)
    tgt_lens = np.array([len(t) for _, t in folded], dtype=np.int64)
    src_flat = np.fromiter(
        (src_index.setdefault(w, len(src_index)) for s, _ in folded for w in s),
        dtype=np.int64, count=int(src_lens.sum()))
    tgt_flat = np.fromiter(
        (tgt_index.setdefault(w, len(tgt_index)) for _, t in folded for w in t),
        dtype=np.int64, count=int(tgt_lens.sum()))
    n_src = len(src_index)
    n_tgt = len(tgt_index)

    # One slot per (sentence, target token, source position incl. NULL); the
    # group of a slot is its (sentence, target token). All index plumbing is
    # vectorized: a "block" is a sentence's [NULL] + source ids, tiled once
    # per target token of that sentence.
    n_sents = len(folded)
    n_groups = int(tgt_lens.sum())
    sent_groups = np.zeros(n_sents + 1, dtype=np.int64)
    np.cumsum(tgt_lens, out=sent_groups[1:])
    widths = np.repeat(src_lens + 1, tgt_lens)  # slots per group
    group_ptr = np.zeros(n_groups + 1, dtype=np.int64)
    np.cumsum(widths, out=group_ptr[1:])
    n_slots = int(group_ptr[-1])
    g_flat = np.repeat(np.arange(n_groups, dtype=np.int64), widths)

    block_ptr = np.zeros(n_sents + 1, dtype=np.int64)
    np.cumsum(src_lens + 1, out=block_ptr[1:])
    blocks = np.zeros(int(block_ptr[-1]), dtype=np.int64)
    put_mask = np.ones(len(blocks), dtype=bool)
    put_mask[block_ptr[:-1]] = False  # NULL slot at each block start
    blocks[put_mask] = src_flat
    sentence_of_group = np.repeat(np.arange(n_sents, dtype=np.int64), tgt_lens)
    offset_in_group = np.arange(n_slots, dtype=np.int64) - np.repeat(group_ptr[:-1], widths)
    slot_e = blocks[np.repeat(block_ptr[sentence_of_group], widths) + offset_in_group]
    slot_f = np.repeat(tgt_flat, widths)

    keys = slot_e * n_tgt + slot_f
    pair_keys = np.unique(keys)
    k_flat = np.searchsorted(pair_keys, keys)
    n_pairs = len(pair_keys)
    pair_e = pair_keys // n_tgt
    row_ptr = np.searchsorted(pair_e, np.arange(n_src + 1, dtype=np.int64))
    row_len = np.diff(row_ptr)
    col = pair_keys % n_tgt

    t = 1.0 / np.repeat(row_len, row_len).astype(np.float64)

    chunks = []
    for lo in range(0, n_sents, _CHUNK_SENTS):
        hi = min(lo + _CHUNK_SENTS, n_sents)
        chunks.append((int(sent_groups[lo]), int(sent_groups[hi])))

    # Expected counts are always accumulated per chunk and combined in chunk
    # order, so any worker count reproduces the same floating-point result.
    pool = None
    if cfg.threads > 1 and len(chunks) > 1:
        pool = ThreadPoolExecutor(max_workers=cfg.threads)
    try:
        log_likelihoods: list[float] = []
        for _ in range(cfg.iterations):
            counts = np.zeros(n_pairs)
            ll = 0.0
            if pool is None:
                for g_lo, g_hi in chunks:
                    part, part_ll = kernel.estep_chunk(
                        t, k_flat, g_flat, group_ptr, g_lo, g_hi, n_pairs)
                    counts += part
                    ll += part_ll
            else:
                # waves bound the number of in-flight partial count arrays
                for wave_start in range(0, len(chunks), cfg.threads):
                    wave = chunks[wave_start:wave_start + cfg.threads]
                    futs = [
                        pool.submit(kernel.estep_chunk,
                                    t, k_flat, g_flat, group_ptr, g_lo, g_hi, n_pairs)
                        for g_lo, g_hi in wave
                    ]
                    for fut in futs:
                        part, part_ll = fut.result()
                        counts += part
                        ll += part_ll
            log_likelihoods.append(ll)
            row_sums = np.add.reduceat(counts, row_ptr[:-1])
            t = counts / np.repeat(row_sums, row_len)
    finally:
        if pool is not None:
            pool.shutdown()

    return TranslationTable(
        src_lang=src_lang,
        tgt_lang=tgt_lang,
        case_fold=cfg.case_fold,
        src_words=[NULL_WORD] + [w for w in src_index if w != NULL_WORD],
        tgt_words=list(tgt_index),
        log_likelihoods=log_likelihoods,
        _src_index=src_index,
        _tgt_index=tgt_index,
        _row_ptr=row_ptr,
        _col=col,
        _t=t,
        _keys=pair_keys,
    )


def viterbi_align(corpus: ParallelCorpus, table: TranslationTable) -> list[SentenceAlignment]:
    """Hard-align each target token to its most probable source token.

    A NULL win leaves the target token unlinked; ties go to the lowest source
    index, and NULL loses ties to any real token.
    """
    n_tgt = table.target_vocab_size
    n_pairs = len(table._keys)
    out: list[SentenceAlignment] = []
    for src, tgt in corpus:
        e = np.array([0] + [table.src_id(w) for w in src], dtype=np.int64)  # NULL first
        f = np.array([table.tgt_id(w) for w in tgt], dtype=np.int64)
        probs = np.zeros((len(f), len(e)))
        valid = (e[None, :] >= 0) & (f[:, None] >= 0)
        keys = np.where(valid, e[None, :] * n_tgt + f[:, None], -1)
        k = np.searchsorted(table._keys, keys)
        hit = valid & (k < n_pairs)
        hit[hit] = table._keys[k[hit]] == keys[hit]
        probs[hit] = table._t[k[hit]]
        p_null = probs[:, 0]
        p_real = probs[:, 1:]
        links = set()
        if p_real.shape[1]:
            best = p_real.argmax(axis=1)  # first max = lowest source index
            best_p = p_real[np.arange(len(f)), best]
            for j in np.nonzero(best_p >= p_null)[0]:
                links.add((int(best[j]), int(j)))
        out.append(SentenceAlignment(frozenset(links), src_len=len(src), tgt_len=len(tgt)))
    return out


def swap_corpus(corpus: ParallelCorpus) -> ParallelCorpus:
    """Reverse the direction of a parallel corpus."""
    return [(t, s) for s, t in corpus]
