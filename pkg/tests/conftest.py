import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wordspace.model import EmbeddingModel
from wordspace.vocab import Vocabulary


def make_model(words, vectors, counts=None, config=None) -> EmbeddingModel:
    """Hand-built query-only model from explicit vectors."""
    vectors = np.asarray(vectors, dtype=np.float32)
    if counts is None:
        counts = [1] * len(words)
    vocab = Vocabulary.from_pairs(zip(words, counts))
    return EmbeddingModel(vocab, vectors, config=config)


def brute_distance(model, word, k):
    """Per-word cosine scan, sorted by (-similarity, word)."""
    vecs = model.input_vectors.astype(np.float64)
    norms = np.linalg.norm(vecs, axis=1)
    qi = model.vocab.index[word]
    q = vecs[qi] / norms[qi]
    out = []
    for i, w in enumerate(model.vocab.words):
        if i == qi or norms[i] == 0:
            continue
        out.append((w, float(np.dot(vecs[i] / norms[i], q))))
    out.sort(key=lambda ws: (-ws[1], ws[0]))
    return out[:k]


def brute_analogy(model, a, b, c, k):
    vecs = model.input_vectors.astype(np.float64)
    norms = np.linalg.norm(vecs, axis=1)
    idx = model.vocab.index
    ia, ib, ic = idx[a], idx[b], idx[c]
    x = vecs[ia] / norms[ia] - vecs[ib] / norms[ib] + vecs[ic] / norms[ic]
    x = x / np.linalg.norm(x)
    out = []
    for i, w in enumerate(model.vocab.words):
        if i in (ia, ib, ic) or norms[i] == 0:
            continue
        out.append((w, float(np.dot(vecs[i] / norms[i], x))))
    out.sort(key=lambda ws: (-ws[1], ws[0]))
    return out[:k]


def run_cli(argv):
    """Invoke the CLI in-process; normalize SystemExit into a return code."""
    from wordspace.cli import main
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 0
    return code


@pytest.fixture
def tiny_corpus_lines():
    return [
        ["the", "drug", "treats", "the", "disease"],
        ["a", "drug", "may", "help", "a", "disease"],
        ["the", "disease", "responds", "to", "the", "drug"],
    ] * 40
