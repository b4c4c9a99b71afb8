#!/usr/bin/env python3
"""Benchmark the compiled EM kernel against the pure-Python fallback, plus
synthesis throughput.

Usage: python3 benchmarks/bench_em.py [--pairs N] [--threads N ...]
"""

import argparse
import random
import time

from lexsynth.align import AlignerConfig, backend_name, train_model1
from lexsynth.lexicon import Lexicon
from lexsynth.synth import SynthesisConfig, synth_mono


def make_parallel_corpus(n_pairs, seed=11, vocab=4000):
    rng = random.Random(seed)
    weights = [1.0 / (rank + 3) for rank in range(vocab)]
    words = list(range(vocab))
    pairs = []
    for _ in range(n_pairs):
        ids = rng.choices(words, weights=weights, k=rng.randint(6, 18))
        src = [f"src{i}" for i in ids]
        tgt = [f"tgt{i}" for i in ids if rng.random() > 0.1]
        if not tgt:
            tgt = [f"tgt{ids[0]}"]
        pairs.append((src, tgt))
    return pairs


def run_once(corpus, backend, iterations, threads):
    started = time.perf_counter()
    train_model1(corpus, AlignerConfig(iterations=iterations, threads=threads),
                 backend=backend)
    return time.perf_counter() - started


def best_of(fn, repeats=3):
    return min(fn() for _ in range(repeats))


def bench_training(corpus, threads_list):
    tokens = sum(len(s) + len(t) for s, t in corpus)
    print(f"\nEM training ({len(corpus)} pairs, {tokens} tokens)")
    print(f"{'threads':>8} {'backend':>8} {'5 iters':>9} {'per-iter kernel':>16}")
    per_iter = {}
    for threads in threads_list:
        for backend in ("python", "native"):
            try:
                total = best_of(lambda: run_once(corpus, backend, 5, threads))
                # isolate the per-iteration kernel cost from one-time setup
                t21 = best_of(lambda: run_once(corpus, backend, 21, threads), repeats=1)
                t1 = best_of(lambda: run_once(corpus, backend, 1, threads), repeats=1)
                kernel = (t21 - t1) / 20
            except ImportError:
                print(f"{threads:>8} {backend:>8}   unavailable (extension not built)")
                continue
            per_iter[(backend, threads)] = kernel
            print(f"{threads:>8} {backend:>8} {total:>8.3f}s {kernel * 1e3:>13.1f} ms")
    for threads in threads_list:
        if ("python", threads) in per_iter and ("native", threads) in per_iter:
            ratio = per_iter[("python", threads)] / per_iter[("native", threads)]
            print(f"kernel speedup at threads={threads}: {ratio:.2f}x (native over python)")


def bench_synth():
    rng = random.Random(5)
    lex = Lexicon()
    for i in range(5000):
        lex.add(f"w{i}", f"x{i}")
        if i % 4 == 0:
            lex.add(f"w{i}", f"y{i}")
    vocab = [f"w{i}" for i in range(12000)]
    corpus = [rng.choices(vocab, k=18) for _ in range(200000)]
    started = time.perf_counter()
    _, report = synth_mono(corpus, lex, SynthesisConfig(seed=3))
    elapsed = time.perf_counter() - started
    print(f"\nsynthesis: {report.sentences} sentences, {report.total_tokens} tokens "
          f"in {elapsed:.2f}s ({report.total_tokens / elapsed / 1e6:.2f} M tokens/s, "
          f"replacement rate {report.replacement_rate:.2f})")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=8000)
    parser.add_argument("--threads", type=int, nargs="+", default=[1, 4])
    parser.add_argument("--skip-synth", action="store_true")
    args = parser.parse_args()
    print(f"active default backend: {backend_name()}")
    corpus = make_parallel_corpus(args.pairs)
    bench_training(corpus, args.threads)
    if not args.skip_synth:
        bench_synth()


if __name__ == "__main__":
    main()
