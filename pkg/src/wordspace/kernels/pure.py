"""Reference NumPy implementation of the training inner loops.

The compiled extension (`_inner`) implements the same contract; this module
is the import-time fallback and the ground truth the tests verify against.
Both kernels consume the same 64-bit LCG stream, so each path is fully
deterministic for a given seed (bit-identity across the two paths is not
promised — float summation order differs).

Update semantics per training step: all dot products are evaluated at the
current parameter values, the input-side gradient is accumulated into a
buffer, output-side rows are updated, and the buffer is applied to the input
row(s) once at the end. This makes every step an exact gradient step on its
local objective, which the finite-difference tests rely on.
"""

from __future__ import annotations

import numpy as np

from ..sigmoid import MAX_Z, TABLE_SIZE, sigmoid

BACKEND = "pure"

_LCG_MULT = 25214903917
_LCG_ADD = 11
_MASK64 = (1 << 64) - 1

MAX_SEGMENT = 10_000  # kept tokens per training segment; windows never span segments


class Lcg:
    """64-bit linear congruential generator shared by both kernel backends."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state * _LCG_MULT + _LCG_ADD) & _MASK64
        return self.state

    def uniform16(self) -> float:
        """Uniform in [0, 1) on a 1/65536 grid."""
        return (self.next_u64() & 0xFFFF) / 65536.0

    def window_size(self, window: int) -> int:
        """Effective window drawn uniformly from 1..window."""
        return 1 + self.next_u64() % window

    def draw(self, table: np.ndarray) -> int:
        return int(table[(self.next_u64() >> 16) % len(table)])


def _sig(f: np.ndarray, sig_table: np.ndarray | None) -> np.ndarray:
    if sig_table is None:
        return sigmoid(f)
    idx = ((f + MAX_Z) * (TABLE_SIZE / (2 * MAX_Z))).astype(np.int64)
    np.clip(idx, 0, TABLE_SIZE - 1, out=idx)
    return sig_table[idx].astype(np.float64)


def _hs_accumulate(x, target, syn1, codes, points, lengths, alpha, sig_table, neu1e, learn):
    """Hierarchical-softmax update against `target`'s Huffman path; returns loss."""
    length = int(lengths[target])
    nodes = points[target, :length]
    bits = codes[target, :length]
    rows = syn1[nodes]  # copy: reads happen before any write
    f = rows @ x
    p = _sig(f, sig_table)
    # probability assigned to the observed branch: sigma((1 - 2*bit) * f)
    p_branch = np.where(bits == 0, p, 1.0 - p)
    loss = float(-np.log(np.maximum(p_branch, 1e-300)).sum())
    if learn:
        g = alpha * (1.0 - bits - p)
        neu1e += g @ rows
        syn1[nodes] += g[:, None] * np.asarray(x)
    return loss


def _ns_accumulate(x, target, syn1neg, table, k, alpha, rng, sig_table, neu1e, learn):
    """Negative-sampling update: one positive plus k resampled negatives; returns loss."""
    idxs = np.empty(k + 1, dtype=np.int64)
    labels = np.zeros(k + 1)
    idxs[0] = target
    labels[0] = 1.0
    for d in range(1, k + 1):
        neg = rng.draw(table)
        while neg == target:
            neg = rng.draw(table)
        idxs[d] = neg
    rows = syn1neg[idxs]
    f = rows @ x
    p = _sig(f, sig_table)
    p_label = np.where(labels == 1.0, p, 1.0 - p)
    loss = float(-np.log(np.maximum(p_label, 1e-300)).sum())
    if learn:
        g = alpha * (labels - p)
        neu1e += g @ rows
        # duplicate negatives must accumulate, hence add.at
        np.add.at(syn1neg, idxs, (g[:, None] * np.asarray(x)).astype(syn1neg.dtype))
    return loss


def hs_step(model, input_row: int, target: int, alpha: float, learn: bool = True,
            sig_table: np.ndarray | None = None) -> float:
    """One hierarchical-softmax step on (input row, target word); returns the loss."""
    x = model.input_vectors[input_row]
    neu1e = np.zeros(model.dim)
    hc = model.huffman
    loss = _hs_accumulate(x, target, model.hs_weights, hc.codes, hc.points, hc.lengths,
                          alpha, sig_table, neu1e, learn)
    if learn:
        x += neu1e.astype(x.dtype, copy=False)
    return loss


def ns_step(model, input_row: int, target: int, table: np.ndarray, k: int, alpha: float,
            rng: Lcg, learn: bool = True, sig_table: np.ndarray | None = None) -> float:
    """One negative-sampling step on (input row, target word); returns the loss."""
    x = model.input_vectors[input_row]
    neu1e = np.zeros(model.dim)
    loss = _ns_accumulate(x, target, model.ns_weights, table, k, alpha, rng,
                          sig_table, neu1e, learn)
    if learn:
        x += neu1e.astype(x.dtype, copy=False)
    return loss


def cbow_step(model, context_rows, target: int, alpha: float, table=None, k: int = 0,
              rng: Lcg | None = None, learn: bool = True,
              sig_table: np.ndarray | None = None) -> float:
    """One CBOW step: context mean predicts `target`.

    The accumulated input-side gradient is divided by the context size, so
    each contributor receives the true gradient of the mean.
    """
    context_rows = list(context_rows)
    m = len(context_rows)
    if m == 0:
        return 0.0
    x = model.input_vectors[context_rows].mean(axis=0)
    neu1e = np.zeros(model.dim)
    loss = 0.0
    if model.hs_weights is not None:
        hc = model.huffman
        loss += _hs_accumulate(x, target, model.hs_weights, hc.codes, hc.points,
                               hc.lengths, alpha, sig_table, neu1e, learn)
    if k > 0:
        loss += _ns_accumulate(x, target, model.ns_weights, table, k, alpha, rng,
                               sig_table, neu1e, learn)
    if learn:
        share = (neu1e / m).astype(model.input_vectors.dtype, copy=False)
        for row in context_rows:
            model.input_vectors[row] += share
    return loss


def train_chunk(arch, hs, negative,
                data, starts, sent_indices,
                syn0, syn1, syn1neg,
                codes, points, lengths,
                table, keep_prob,
                window, alpha,
                rng_state, sig_table, exact_sigmoid):
    """Train the sentences listed in `sent_indices` at fixed learning rate.

    Returns (tokens_seen, updates): in-vocabulary tokens consumed (before
    subsampling) and training steps applied. `rng_state` (uint64[1]) is
    advanced in place.
    """
    rng = Lcg(int(rng_state[0]))
    sig = None if exact_sigmoid else sig_table
    tokens_seen = 0
    updates = 0
    buf = []
    for s in sent_indices:
        lo, hi = int(starts[s]), int(starts[s + 1])
        buf.clear()
        for t in range(lo, hi):
            w = int(data[t])
            tokens_seen += 1
            kp = float(keep_prob[w])
            if kp < 1.0 and rng.uniform16() >= kp:
                continue
            buf.append(w)
            if len(buf) >= MAX_SEGMENT:
                updates += _train_segment(arch, hs, negative, buf, syn0, syn1, syn1neg,
                                          codes, points, lengths, table, window, alpha,
                                          rng, sig)
                buf.clear()
        updates += _train_segment(arch, hs, negative, buf, syn0, syn1, syn1neg,
                                  codes, points, lengths, table, window, alpha, rng, sig)
    rng_state[0] = rng.state
    return tokens_seen, updates


def _train_segment(arch, hs, negative, sent, syn0, syn1, syn1neg,
                   codes, points, lengths, table, window, alpha, rng, sig_table):
    n = len(sent)
    updates = 0
    for pos in range(n):
        center = sent[pos]
        b = rng.window_size(window)
        lo = max(0, pos - b)
        hi = min(n, pos + b + 1)
        if arch == 0:  # skip-gram: context row is the input, center is the target
            for p2 in range(lo, hi):
                if p2 == pos:
                    continue
                x = syn0[sent[p2]]
                neu1e = np.zeros(syn0.shape[1])
                if hs:
                    _hs_accumulate(x, center, syn1, codes, points, lengths,
                                   alpha, sig_table, neu1e, True)
                if negative > 0:
                    _ns_accumulate(x, center, syn1neg, table, negative, alpha,
                                   rng, sig_table, neu1e, True)
                x += neu1e.astype(syn0.dtype, copy=False)
                updates += 1
        else:  # cbow: mean of context rows predicts the center
            ctx = [sent[p2] for p2 in range(lo, hi) if p2 != pos]
            m = len(ctx)
            if m == 0:
                continue
            x = syn0[ctx].mean(axis=0)
            neu1e = np.zeros(syn0.shape[1])
            if hs:
                _hs_accumulate(x, center, syn1, codes, points, lengths,
                               alpha, sig_table, neu1e, True)
            if negative > 0:
                _ns_accumulate(x, center, syn1neg, table, negative, alpha,
                               rng, sig_table, neu1e, True)
            share = (neu1e / m).astype(syn0.dtype, copy=False)
            for row in ctx:
                syn0[row] += share
            updates += 1
    return updates
