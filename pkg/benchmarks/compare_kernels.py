#!/usr/bin/env python3
"""Benchmark the compiled training kernel against the pure-NumPy fallback.

Trains identical models on a synthetic Zipf corpus with each backend and
reports token/update throughput plus the speedup factor.

    python benchmarks/compare_kernels.py --tokens 200000 --dim 100 --arch sg
"""

import argparse
import random
import sys

from wordspace import kernels
from wordspace.model import CBOW, SKIP_GRAM, TrainingConfig
from wordspace.trainer import train


def synthetic_corpus(n_tokens: int, n_words: int, seed: int = 3):
    rng = random.Random(seed)
    words = [f"w{i}" for i in range(n_words)]
    weights = [1.0 / (i + 1) for i in range(n_words)]
    return [rng.choices(words, weights=weights, k=20) for _ in range(n_tokens // 20)]


def run(backend: str, lines, config: TrainingConfig):
    model = train(lines, config, kernel=backend)
    return model.train_stats


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--tokens", type=int, default=200_000)
    parser.add_argument("--vocab", type=int, default=2_000)
    parser.add_argument("--dim", type=int, default=100)
    parser.add_argument("--window", type=int, default=5)
    parser.add_argument("--arch", choices=("sg", "cbow"), default="sg")
    parser.add_argument("--objective", choices=("hs", "ns"), default="hs")
    parser.add_argument("--negative", type=int, default=5, help="negatives when --objective ns")
    parser.add_argument("--epochs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    config = TrainingConfig(
        architecture=SKIP_GRAM if args.arch == "sg" else CBOW,
        dim=args.dim, window=args.window,
        hs=args.objective == "hs",
        negative=args.negative if args.objective == "ns" else 0,
        epochs=args.epochs, min_count=1, threads=1, seed=args.seed,
    )
    lines = synthetic_corpus(args.tokens, args.vocab, args.seed)
    print(f"corpus: {args.tokens:,} tokens, vocab {args.vocab:,}, "
          f"{args.arch}-{args.objective}, dim {args.dim}, window {args.window}")

    backends = ["pure"]
    if kernels.compiled is not None:
        backends.insert(0, "compiled")
    else:
        print("note: compiled extension not built; benchmarking the fallback only")

    results = {}
    for backend in backends:
        stats = run(backend, lines, config)
        results[backend] = stats
        print(f"  {backend:>9}: {stats.seconds:7.2f}s  "
              f"{stats.tokens_per_sec:12,.0f} tokens/s  "
              f"{stats.updates_per_sec:12,.0f} updates/s")

    if len(results) == 2:
        speedup = results["compiled"].updates_per_sec / results["pure"].updates_per_sec
        print(f"  speedup: {speedup:.1f}x (compiled over pure)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
