"""Vocabulary construction and the sampling structures derived from it.

Covers min-count filtering, Huffman coding for the hierarchical-softmax
objective, the discretized unigram table for negative sampling, and the
frequent-word subsampling rule.
"""

from __future__ import annotations

import heapq
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import ConfigError, InputError

logger = logging.getLogger(__name__)

UNIGRAM_POWER = 0.75
UNIGRAM_TABLE_SIZE = 10**7


@dataclass
class Vocabulary:
    """Retained words in canonical order (count descending, then first occurrence)."""

    words: list[str]
    counts: np.ndarray  # int64, aligned with words
    index: dict[str, int] = field(repr=False)
    total_tokens: int

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def count(self, word: str) -> int:
        return int(self.counts[self.index[word]])

    def keep_probabilities(self, sample: float) -> np.ndarray:
        """Per-word keep probability under subsampling threshold `sample` (float32)."""
        if sample <= 0:
            return np.ones(len(self.words), dtype=np.float32)
        freq = self.counts / float(self.total_tokens)
        return np.minimum(1.0, np.sqrt(sample / freq)).astype(np.float32)

    def save(self, path) -> None:
        """Write the canonical word<TAB>count listing."""
        with open(path, "w", encoding="utf-8") as f:
            for word, count in zip(self.words, self.counts):
                f.write(f"{word}\t{int(count)}\n")

    @classmethod
    def load(cls, path) -> "Vocabulary":
        words, counts = [], []
        with open(path, "r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    word, count = line.split("\t")
                    counts.append(int(count))
                except ValueError as exc:
                    raise InputError(f"{path}:{lineno}: malformed vocabulary line") from exc
                words.append(word)
        return cls.from_pairs(zip(words, counts))

    @classmethod
    def from_pairs(cls, pairs) -> "Vocabulary":
        words, counts = [], []
        for word, count in pairs:
            words.append(word)
            counts.append(count)
        arr = np.asarray(counts, dtype=np.int64)
        return cls(words, arr, {w: i for i, w in enumerate(words)}, int(arr.sum()))


def build_vocabulary(corpus, min_count: int = 5) -> Vocabulary:
    """Count tokens in `corpus` (path or iterable of token lists) and filter.

    Words with count < min_count are dropped. Ordering is deterministic:
    count descending, ties by first occurrence in the corpus.
    """
    if min_count < 1:
        raise ConfigError("min_count must be >= 1")
    raw: dict[str, int] = {}
    for sentence in iter_token_lines(corpus):
        for tok in sentence:
            raw[tok] = raw.get(tok, 0) + 1
    # dict preserves insertion (= first occurrence) order; sort is stable
    kept = sorted(
        ((w, c) for w, c in raw.items() if c >= min_count),
        key=lambda wc: -wc[1],
    )
    if not kept:
        raise ConfigError(
            f"no words with count >= {min_count} (corpus has {len(raw)} distinct tokens)"
        )
    return Vocabulary.from_pairs(kept)


def iter_token_lines(corpus) -> Iterable[list[str]]:
    """Yield one token list per corpus line (path, file-like, or iterable)."""
    if isinstance(corpus, (str, os.PathLike)):
        try:
            with open(corpus, "r", encoding="utf-8") as f:
                for line in f:
                    yield line.split()
        except OSError as exc:
            raise InputError(f"cannot read {corpus}: {exc}") from exc
    elif hasattr(corpus, "read"):
        for line in corpus:
            yield line.split()
    else:
        for item in corpus:
            yield list(item) if not isinstance(item, str) else item.split()


def keep_probability(count: int, total_tokens: int, sample: float) -> float:
    """Probability of keeping one occurrence of a word under subsampling.

    keep = min(1, sqrt(sample / f)) with f = count / total_tokens;
    sample = 0 disables subsampling entirely.
    """
    if sample <= 0:
        return 1.0
    f = count / total_tokens
    if f <= sample:
        return 1.0
    return min(1.0, math.sqrt(sample / f))


@dataclass
class HuffmanCoding:
    """Per-word binary codes and root-to-parent internal-node paths.

    Rows are padded to the longest code; `lengths[w]` gives the valid prefix.
    Internal nodes are numbered by creation order, root = n_internal - 1.
    """

    codes: np.ndarray  # (V, maxlen) uint8
    points: np.ndarray  # (V, maxlen) int32
    lengths: np.ndarray  # (V,) int32
    n_internal: int

    def code_of(self, w: int) -> np.ndarray:
        return self.codes[w, : self.lengths[w]]

    def path_of(self, w: int) -> np.ndarray:
        return self.points[w, : self.lengths[w]]

    def kraft_sum(self) -> float:
        return float(np.sum(2.0 ** (-self.lengths.astype(np.float64))))


def build_huffman(vocab: Vocabulary) -> HuffmanCoding:
    """Huffman-code the vocabulary by count.

    Deterministic: equal-weight nodes merge lowest-creation-index first.
    The first-popped child takes bit 0. A single-word vocabulary degenerates
    to one pseudo-node with code length 1.
    """
    n = len(vocab)
    if n == 0:
        raise ConfigError("empty vocabulary")
    if n == 1:
        logger.warning("single-word vocabulary: degenerate Huffman tree of depth 1")
        return HuffmanCoding(
            codes=np.zeros((1, 1), dtype=np.uint8),
            points=np.zeros((1, 1), dtype=np.int32),
            lengths=np.ones(1, dtype=np.int32),
            n_internal=1,
        )

    # heap entries: (count, creation_index); leaves are 0..n-1, internal n..2n-2
    counts = [int(c) for c in vocab.counts]
    heap = [(counts[i], i) for i in range(n)]
    heapq.heapify(heap)
    left = np.empty(n - 1, dtype=np.int64)
    right = np.empty(n - 1, dtype=np.int64)
    for k in range(n - 1):
        c1, i1 = heapq.heappop(heap)
        c2, i2 = heapq.heappop(heap)
        left[k], right[k] = i1, i2
        heapq.heappush(heap, (c1 + c2, n + k))

    # walk down from the root assigning codes (bit 0 = first-popped child)
    code_buf: dict[int, tuple] = {2 * n - 2: ((), ())}
    stack = [2 * n - 2]
    codes_list: list[tuple] = [None] * n
    max_len = 0
    while stack:
        node = stack.pop()
        bits, path = code_buf.pop(node)
        if node < n:
            codes_list[node] = (bits, path)
            max_len = max(max_len, len(bits))
            continue
        k = node - n  # internal creation index
        code_buf[left[k]] = (bits + (0,), path + (k,))
        code_buf[right[k]] = (bits + (1,), path + (k,))
        stack.append(left[k])
        stack.append(right[k])

    codes = np.zeros((n, max_len), dtype=np.uint8)
    points = np.zeros((n, max_len), dtype=np.int32)
    lengths = np.zeros(n, dtype=np.int32)
    for w, (bits, path) in enumerate(codes_list):
        lengths[w] = len(bits)
        codes[w, : len(bits)] = bits
        points[w, : len(path)] = path
    return HuffmanCoding(codes, points, lengths, n - 1)


@dataclass
class UnigramTable:
    """Discretized distribution P(w) ~ count(w)^power for negative sampling."""

    table: np.ndarray  # int32, word index per slot
    probs: np.ndarray  # float64, realized P(w) = slots_w / table_size

    def __len__(self) -> int:
        return len(self.table)


def build_unigram_table(
    vocab: Vocabulary,
    power: float = UNIGRAM_POWER,
    table_size: int = UNIGRAM_TABLE_SIZE,
) -> UnigramTable:
    """Apportion `table_size` slots proportionally to count^power.

    Largest-remainder rounding; every word is guaranteed at least one slot
    (requires table_size >= vocabulary size).
    """
    n = len(vocab)
    if power <= 0:
        raise ConfigError("power must be > 0")
    if table_size < n:
        raise ConfigError(f"table_size {table_size} < vocabulary size {n}")
    weights = vocab.counts.astype(np.float64) ** power
    ideal = weights / weights.sum() * table_size
    slots = np.floor(ideal).astype(np.int64)
    remainder = table_size - int(slots.sum())
    if remainder:
        order = np.argsort(slots - ideal, kind="stable")  # largest remainder first, ties by index
        slots[order[:remainder]] += 1
    # every word must remain drawable
    for w in np.flatnonzero(slots == 0):
        donor = int(np.argmax(slots))
        slots[donor] -= 1
        slots[w] = 1
    table = np.repeat(np.arange(n, dtype=np.int32), slots)
    return UnigramTable(table, slots / float(table_size))
