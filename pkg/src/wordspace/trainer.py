"""Training driver: corpus encoding, learning-rate schedule, worker threads.

Workers train on disjoint sentence shards and update the shared parameter
matrices without locks (hogwild contract: single-thread runs are bit
deterministic, multi-thread runs promise only invariant preservation).
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import ConfigError, WordspaceError
from .model import SKIP_GRAM, EmbeddingModel, TrainingConfig, init_model
from .sigmoid import build_sigmoid_table
from .vocab import UnigramTable, Vocabulary, build_unigram_table, build_vocabulary, iter_token_lines

logger = logging.getLogger(__name__)

CHUNK_TOKENS = 10_000  # learning-rate refresh granularity


@dataclass
class TrainStats:
    tokens_processed: int
    updates: int
    seconds: float

    @property
    def tokens_per_sec(self) -> float:
        return self.tokens_processed / self.seconds if self.seconds > 0 else 0.0

    @property
    def updates_per_sec(self) -> float:
        return self.updates / self.seconds if self.seconds > 0 else 0.0


def encode_corpus(corpus, vocab: Vocabulary):
    """Map a token corpus to (ids, starts) arrays, dropping out-of-vocabulary tokens.

    Sentences (lines) that end up empty are dropped; windows never cross
    sentence boundaries, so they would contribute nothing.
    """
    index = vocab.index
    ids: list[int] = []
    starts: list[int] = [0]
    raw = 0
    for sentence in iter_token_lines(corpus):
        raw += len(sentence)
        n0 = len(ids)
        ids.extend(index[t] for t in sentence if t in index)
        if len(ids) > n0:
            starts.append(len(ids))
    data = np.asarray(ids, dtype=np.int32)
    if raw and data.size / raw < 0.5:
        logger.warning(
            "more than half the corpus is out of vocabulary (%d of %d tokens kept)",
            data.size, raw,
        )
    return data, np.asarray(starts, dtype=np.int64), raw


def train(
    corpus,
    config: TrainingConfig,
    vocab: Optional[Vocabulary] = None,
    kernel: str | None = None,
) -> EmbeddingModel:
    """Train an embedding model over `corpus` (path or iterable of token lists)."""
    if vocab is None:
        vocab = build_vocabulary(corpus, config.min_count)
    data, starts, _raw = encode_corpus(corpus, vocab)
    return train_encoded(data, starts, vocab, config, kernel)


def train_encoded(
    data: np.ndarray,
    starts: np.ndarray,
    vocab: Vocabulary,
    config: TrainingConfig,
    kernel: str | None = None,
) -> EmbeddingModel:
    """Train over a pre-encoded corpus (lets sweeps reuse one encoding pass)."""
    if data.size == 0:
        raise ConfigError("empty corpus: nothing to train on")
    model = init_model(vocab, config)
    table = build_unigram_table(vocab) if config.negative > 0 else None
    stats = _run_training(model, data, starts, table, kernel)
    model.train_stats = stats
    model.invalidate_cache()
    if not model.is_finite():
        raise WordspaceError("training produced non-finite parameters")
    logger.info(
        "trained %s: %d tokens in %.1fs (%.0f tokens/s, %.0f updates/s)",
        config.summary(), stats.tokens_processed, stats.seconds,
        stats.tokens_per_sec, stats.updates_per_sec,
    )
    return model


def _run_training(
    model: EmbeddingModel,
    data: np.ndarray,
    starts: np.ndarray,
    table: Optional[UnigramTable],
    kernel: str | None = None,
) -> TrainStats:
    """Run the configured number of epochs over pre-encoded sentences."""
    config = model.config
    backend = kernels.select(kernel)
    dim = model.dim

    arch = 0 if config.architecture == SKIP_GRAM else 1
    dummy_f = np.zeros((1, dim), dtype=np.float32)
    syn1 = model.hs_weights if model.hs_weights is not None else dummy_f
    syn1neg = model.ns_weights if model.ns_weights is not None else dummy_f
    if model.huffman is not None:
        codes, points, lengths = model.huffman.codes, model.huffman.points, model.huffman.lengths
        if codes.shape[1] == 0:  # guard for degenerate padding
            codes = np.zeros((len(lengths), 1), dtype=np.uint8)
            points = np.zeros((len(lengths), 1), dtype=np.int32)
    else:
        codes = np.zeros((1, 1), dtype=np.uint8)
        points = np.zeros((1, 1), dtype=np.int32)
        lengths = np.zeros(1, dtype=np.int32)
    table_arr = table.table if table is not None else np.zeros(1, dtype=np.int32)
    keep_prob = model.vocab.keep_probabilities(config.sample)
    sig_table = build_sigmoid_table()
    exact = 1 if config.exact_sigmoid else 0

    n_sents = len(starts) - 1
    sent_len = np.diff(starts)
    total_expected = config.epochs * int(data.size)
    alpha0, min_alpha = config.alpha0, config.min_alpha

    progress_lock = threading.Lock()
    processed = [0]
    updates_total = [0]
    errors: list[BaseException] = []

    def alpha_now() -> float:
        frac = min(1.0, processed[0] / total_expected)
        return max(min_alpha, alpha0 - (alpha0 - min_alpha) * frac)

    def worker(worker_id: int) -> None:
        try:
            rng_state = np.array(
                [(config.seed * 6364136223846793005 + worker_id * 104729 + 1) & (2**64 - 1)],
                dtype=np.uint64,
            )
            my_sents = np.arange(worker_id, n_sents, config.threads, dtype=np.int64)
            chunks = _chunk_sentences(my_sents, sent_len)
            for _epoch in range(config.epochs):
                for chunk in chunks:
                    alpha = alpha_now()
                    seen, upd = backend.train_chunk(
                        arch, 1 if config.hs else 0, config.negative,
                        data, starts, chunk,
                        model.input_vectors, syn1, syn1neg,
                        codes, points, lengths,
                        table_arr, keep_prob,
                        config.window, alpha,
                        rng_state, sig_table, exact,
                    )
                    with progress_lock:
                        processed[0] += seen
                        updates_total[0] += upd
        except BaseException as exc:  # surfaced after join
            errors.append(exc)

    t0 = time.perf_counter()
    if config.threads == 1:
        worker(0)
    else:
        threads = [threading.Thread(target=worker, args=(t,)) for t in range(config.threads)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
    elapsed = time.perf_counter() - t0
    if errors:
        raise errors[0]
    return TrainStats(processed[0], updates_total[0], elapsed)


def _chunk_sentences(sent_ids: np.ndarray, sent_len: np.ndarray) -> list[np.ndarray]:
    """Split a worker's sentences into chunks of roughly CHUNK_TOKENS tokens."""
    chunks = []
    cur: list[int] = []
    budget = 0
    for s in sent_ids:
        cur.append(int(s))
        budget += int(sent_len[s])
        if budget >= CHUNK_TOKENS:
            chunks.append(np.asarray(cur, dtype=np.int64))
            cur, budget = [], 0
    if cur:
        chunks.append(np.asarray(cur, dtype=np.int64))
    return chunks
