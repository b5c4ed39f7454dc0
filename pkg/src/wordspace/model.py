"""Training configuration and the embedding model container."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import ConfigError
from .vocab import HuffmanCoding, Vocabulary, build_huffman

SKIP_GRAM = "skip_gram"
CBOW = "cbow"

DEFAULT_ALPHA = {SKIP_GRAM: 0.025, CBOW: 0.05}


@dataclass
class TrainingConfig:
    architecture: str = SKIP_GRAM
    dim: int = 200
    window: int = 5
    hs: bool = True
    negative: int = 0
    sample: float = 1e-3
    epochs: int = 5
    alpha0: Optional[float] = None  # resolved per architecture in __post_init__
    min_alpha: Optional[float] = None  # resolved to alpha0 * 1e-4
    min_count: int = 5
    threads: int = 1
    seed: int = 1
    exact_sigmoid: bool = False

    def __post_init__(self):
        if self.architecture not in (SKIP_GRAM, CBOW):
            raise ConfigError(f"unknown architecture {self.architecture!r}")
        if self.alpha0 is None:
            self.alpha0 = DEFAULT_ALPHA[self.architecture]
        if self.min_alpha is None:
            self.min_alpha = self.alpha0 * 1e-4
        if not self.hs and self.negative <= 0:
            raise ConfigError("at least one objective required: set hs=1 or negative > 0")
        if self.dim <= 0:
            raise ConfigError("dim must be > 0")
        if self.window <= 0:
            raise ConfigError("window must be > 0")
        if self.negative < 0:
            raise ConfigError("negative must be >= 0")
        if not 0 <= self.sample < 1:
            raise ConfigError("sample must be in [0, 1)")
        if self.epochs < 1:
            raise ConfigError("epochs must be >= 1")
        if not 0 < self.min_alpha <= self.alpha0:
            raise ConfigError("require 0 < min_alpha <= alpha0")
        if self.min_count < 1:
            raise ConfigError("min_count must be >= 1")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    def summary(self) -> str:
        obj = []
        if self.hs:
            obj.append("hs")
        if self.negative > 0:
            obj.append(f"neg{self.negative}")
        arch = "sg" if self.architecture == SKIP_GRAM else "cbow"
        return f"{arch}-d{self.dim}-w{self.window}-{'+'.join(obj)}"


@dataclass(eq=False)
class EmbeddingModel:
    """Input vectors plus objective-specific output weights, bound to a vocabulary."""

    vocab: Vocabulary
    input_vectors: np.ndarray  # (V, dim)
    hs_weights: Optional[np.ndarray] = None  # (V-1, dim) when hs
    ns_weights: Optional[np.ndarray] = None  # (V, dim) when negative > 0
    config: Optional[TrainingConfig] = None  # absent on models loaded for querying
    huffman: Optional[HuffmanCoding] = None
    train_stats: Optional[object] = field(default=None, repr=False, compare=False)
    _units: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.input_vectors.shape[1]

    def vector(self, word: str) -> np.ndarray:
        return self.input_vectors[self.vocab.index[word]]

    def unit_vectors(self) -> np.ndarray:
        """Row-normalized input vectors in float64 (zero rows stay zero); cached."""
        if self._units is None:
            vecs = self.input_vectors.astype(np.float64)
            norms = np.linalg.norm(vecs, axis=1, keepdims=True)
            self._units = np.divide(vecs, norms, out=np.zeros_like(vecs), where=norms > 0)
        return self._units

    def invalidate_cache(self) -> None:
        self._units = None

    def is_finite(self) -> bool:
        mats = [self.input_vectors, self.hs_weights, self.ns_weights]
        return all(m is None or bool(np.isfinite(m).all()) for m in mats)


def init_model(vocab: Vocabulary, config: TrainingConfig, dtype=np.float32) -> EmbeddingModel:
    """Fresh model: inputs uniform in [-0.5/dim, 0.5/dim] from seed, weights zero."""
    n = len(vocab)
    if n < 1:
        raise ConfigError("empty vocabulary")
    if config.negative > 0 and n < 2:
        raise ConfigError("negative sampling needs a vocabulary of at least 2 words")
    rng = np.random.RandomState(config.seed)
    inputs = ((rng.random_sample((n, config.dim)) - 0.5) / config.dim).astype(dtype)
    hs_weights = None
    huffman = None
    if config.hs:
        huffman = build_huffman(vocab)
        hs_weights = np.zeros((huffman.n_internal, config.dim), dtype=dtype)
    ns_weights = np.zeros((n, config.dim), dtype=dtype) if config.negative > 0 else None
    return EmbeddingModel(vocab, inputs, hs_weights, ns_weights, config, huffman)


def config_with(config: TrainingConfig, **overrides) -> TrainingConfig:
    """Copy of `config` with fields replaced (revalidates invariants)."""
    return replace(config, **overrides)
