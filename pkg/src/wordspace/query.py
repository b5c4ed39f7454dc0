"""Nearest-neighbor (distance) and vector-offset (analogy) queries.

Results are (word, cosine) pairs sorted by similarity descending, ties broken
lexicographically; query words are excluded and zero-norm rows are never
retrieved. The same ranking engine backs the CLI and the HTTP service.
"""

from __future__ import annotations

import weakref

import numpy as np

from .errors import WordNotFoundError, ZeroVectorError
from .model import EmbeddingModel

DEFAULT_TOP_K = 40

QueryResult = list[tuple[str, float]]

# per-model ranking caches: (units id, nonzero-row indices, word array)
_cache: "weakref.WeakKeyDictionary[EmbeddingModel, tuple]" = weakref.WeakKeyDictionary()


def _ranking_arrays(model: EmbeddingModel):
    units = model.unit_vectors()
    cached = _cache.get(model)
    if cached is None or cached[0] is not units:
        nonzero = np.einsum("ij,ij->i", units, units) > 0
        words = np.asarray(model.vocab.words, dtype=str)
        cached = (units, nonzero, words)
        _cache[model] = cached
    return cached


def cosine(u, v) -> float:
    """Cosine similarity of two vectors (error on zero norm)."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ZeroVectorError("cosine similarity undefined for zero-norm vector")
    return float(np.dot(u, v) / (nu * nv))


def distance_query(model: EmbeddingModel, word: str, k: int = DEFAULT_TOP_K) -> QueryResult:
    """Top-k vocabulary words by cosine to `word`'s vector, excluding the word."""
    wid = _resolve(model, [word])[0]
    units = model.unit_vectors()
    q = units[wid]
    if not q.any():
        raise ZeroVectorError(f"vector for {word!r} has zero norm")
    return _rank(model, units @ q, {wid}, k)


def analogy_query(model: EmbeddingModel, positive_a: str, negative_b: str, positive_c: str,
                  k: int = DEFAULT_TOP_K) -> QueryResult:
    """Top-k words by cosine to n(a) - n(b) + n(c), excluding the three inputs."""
    ia, ib, ic = _resolve(model, [positive_a, negative_b, positive_c])
    units = model.unit_vectors()
    for idx, w in ((ia, positive_a), (ib, negative_b), (ic, positive_c)):
        if not units[idx].any():
            raise ZeroVectorError(f"vector for {w!r} has zero norm")
    x = units[ia] - units[ib] + units[ic]
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise ZeroVectorError("analogy offset vector has zero norm")
    return _rank(model, units @ (x / norm), {ia, ib, ic}, k)


def _resolve(model: EmbeddingModel, words: list[str]) -> list[int]:
    missing = [w for w in words if w not in model.vocab.index]
    if missing:
        raise WordNotFoundError(missing)
    return [model.vocab.index[w] for w in words]


def _rank(model: EmbeddingModel, sims: np.ndarray, exclude: set[int], k: int) -> QueryResult:
    if k <= 0:
        return []
    _units, nonzero, words_arr = _ranking_arrays(model)
    mask = nonzero.copy()
    if exclude:
        mask[list(exclude)] = False
    valid = np.flatnonzero(mask)
    if valid.size == 0:
        return []
    words = words_arr[valid]
    svals = sims[valid]
    # primary: similarity descending; secondary: word ascending
    order = np.lexsort((words, -svals))[:k]
    return [(str(words[i]), float(svals[i])) for i in order]


def format_result(result: QueryResult) -> str:
    """Rank-ordered word<TAB>similarity lines, similarity to 6 decimals."""
    return "\n".join(f"{w}\t{s:.6f}" for w, s in result)
