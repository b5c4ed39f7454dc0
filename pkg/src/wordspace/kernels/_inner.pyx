# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled training inner loops.

Mirrors kernels.pure exactly: same LCG stream, same update ordering, float32
arithmetic in plain C loops. The GIL is released for the duration of a chunk,
which is what makes lock-free multithreaded training effective.
"""

import numpy as np

from libc.math cimport exp as c_exp

BACKEND = "compiled"

cdef enum:
    MAX_SEGMENT = 10000
    SIG_TABLE_SIZE = 1000

ctypedef unsigned long long u64


cdef inline u64 lcg_next(u64 s) noexcept nogil:
    return s * 25214903917ULL + 11ULL


cdef inline double sig_value(float f, const float[::1] sig_table, bint exact) noexcept nogil:
    cdef int i
    if exact:
        if f >= 0:
            return 1.0 / (1.0 + c_exp(-f))
        return c_exp(f) / (1.0 + c_exp(f))
    i = <int>((f + 6.0) * (SIG_TABLE_SIZE / 12.0))
    if i < 0:
        i = 0
    elif i >= SIG_TABLE_SIZE:
        i = SIG_TABLE_SIZE - 1
    return sig_table[i]


cdef inline void hs_pair(float* x, int target,
                         float[:, ::1] syn1,
                         const unsigned char[:, ::1] codes,
                         const int[:, ::1] points,
                         const int[::1] lengths,
                         float alpha, const float[::1] sig_table, bint exact,
                         float* neu1e, int dim) noexcept nogil:
    cdef int j, d, node
    cdef float f, g, p
    cdef float* row
    for j in range(lengths[target]):
        node = points[target, j]
        row = &syn1[node, 0]
        f = 0.0
        for d in range(dim):
            f += x[d] * row[d]
        p = <float>sig_value(f, sig_table, exact)
        g = alpha * (1.0 - codes[target, j] - p)
        for d in range(dim):
            neu1e[d] += g * row[d]
        for d in range(dim):
            row[d] += g * x[d]


cdef inline u64 ns_pair(float* x, int target,
                        float[:, ::1] syn1neg,
                        const int[::1] table, int k,
                        float alpha, const float[::1] sig_table, bint exact,
                        float* neu1e, int dim, u64 rng,
                        long long* tgt_buf, float* g_buf) noexcept nogil:
    cdef int d, i, tgt
    cdef float f, label
    cdef float* row
    cdef Py_ssize_t table_size = table.shape[0]
    # phase 1: sample, read at current parameters, accumulate the input gradient
    for i in range(k + 1):
        if i == 0:
            tgt = target
            label = 1.0
        else:
            rng = lcg_next(rng)
            tgt = table[<Py_ssize_t>((rng >> 16) % <u64>table_size)]
            while tgt == target:
                rng = lcg_next(rng)
                tgt = table[<Py_ssize_t>((rng >> 16) % <u64>table_size)]
            label = 0.0
        row = &syn1neg[tgt, 0]
        f = 0.0
        for d in range(dim):
            f += x[d] * row[d]
        g_buf[i] = alpha * (label - <float>sig_value(f, sig_table, exact))
        tgt_buf[i] = tgt
        for d in range(dim):
            neu1e[d] += g_buf[i] * row[d]
    # phase 2: apply output-side updates (duplicates accumulate)
    for i in range(k + 1):
        row = &syn1neg[tgt_buf[i], 0]
        for d in range(dim):
            row[d] += g_buf[i] * x[d]
    return rng


def train_chunk(int arch, int hs, int negative,
                const int[::1] data, const long long[::1] starts,
                const long long[::1] sent_indices,
                float[:, ::1] syn0, float[:, ::1] syn1, float[:, ::1] syn1neg,
                const unsigned char[:, ::1] codes, const int[:, ::1] points,
                const int[::1] lengths,
                const int[::1] table, const float[::1] keep_prob,
                int window, float alpha,
                u64[::1] rng_state, const float[::1] sig_table, int exact_sigmoid):
    """Same contract as kernels.pure.train_chunk (see there)."""
    cdef int dim = syn0.shape[1]
    cdef bint exact = exact_sigmoid != 0

    sent_np = np.empty(MAX_SEGMENT, dtype=np.int32)
    neu1_np = np.empty(dim, dtype=np.float32)
    neu1e_np = np.empty(dim, dtype=np.float32)
    tgt_np = np.empty(negative + 1, dtype=np.int64)
    g_np = np.empty(negative + 1, dtype=np.float32)
    cdef int[::1] sent = sent_np
    cdef float[::1] neu1 = neu1_np
    cdef float[::1] neu1e = neu1e_np
    cdef long long[::1] tgt_buf = tgt_np
    cdef float[::1] g_buf = g_np

    cdef u64 rng = rng_state[0]
    cdef long long tokens_seen = 0
    cdef long long updates = 0
    cdef Py_ssize_t si
    cdef long long s, t, lo, hi
    cdef int n, w
    cdef float kp

    with nogil:
        for si in range(sent_indices.shape[0]):
            s = sent_indices[si]
            lo = starts[s]
            hi = starts[s + 1]
            n = 0
            for t in range(lo, hi):
                w = data[t]
                tokens_seen += 1
                kp = keep_prob[w]
                if kp < 1.0:
                    rng = lcg_next(rng)
                    if (rng & 0xFFFF) / 65536.0 >= kp:
                        continue
                sent[n] = w
                n += 1
                if n >= MAX_SEGMENT:
                    rng = train_segment(arch, hs, negative, sent, n, syn0, syn1, syn1neg,
                                        codes, points, lengths, table, window, alpha,
                                        sig_table, exact, neu1, neu1e,
                                        &tgt_buf[0], &g_buf[0], dim, rng, &updates)
                    n = 0
            rng = train_segment(arch, hs, negative, sent, n, syn0, syn1, syn1neg,
                                codes, points, lengths, table, window, alpha,
                                sig_table, exact, neu1, neu1e,
                                &tgt_buf[0], &g_buf[0], dim, rng, &updates)

    rng_state[0] = rng
    return int(tokens_seen), int(updates)


cdef u64 train_segment(int arch, int hs, int negative,
                       const int[::1] sent, int n,
                       float[:, ::1] syn0, float[:, ::1] syn1, float[:, ::1] syn1neg,
                       const unsigned char[:, ::1] codes, const int[:, ::1] points,
                       const int[::1] lengths,
                       const int[::1] table, int window, float alpha,
                       const float[::1] sig_table, bint exact,
                       float[::1] neu1, float[::1] neu1e,
                       long long* tgt_buf, float* g_buf,
                       int dim, u64 rng, long long* updates) noexcept nogil:
    cdef int pos, p2, center, b, lo2, hi2, d, m
    cdef float inv_m
    cdef float* x

    for pos in range(n):
        center = sent[pos]
        rng = lcg_next(rng)
        b = 1 + <int>(rng % <u64>window)
        lo2 = pos - b
        if lo2 < 0:
            lo2 = 0
        hi2 = pos + b + 1
        if hi2 > n:
            hi2 = n

        if arch == 0:  # skip-gram
            for p2 in range(lo2, hi2):
                if p2 == pos:
                    continue
                x = &syn0[sent[p2], 0]
                for d in range(dim):
                    neu1e[d] = 0.0
                if hs:
                    hs_pair(x, center, syn1, codes, points, lengths, alpha,
                            sig_table, exact, &neu1e[0], dim)
                if negative > 0:
                    rng = ns_pair(x, center, syn1neg, table, negative, alpha,
                                  sig_table, exact, &neu1e[0], dim, rng, tgt_buf, g_buf)
                for d in range(dim):
                    x[d] += neu1e[d]
                updates[0] += 1
        else:  # cbow
            m = 0
            for d in range(dim):
                neu1[d] = 0.0
            for p2 in range(lo2, hi2):
                if p2 == pos:
                    continue
                x = &syn0[sent[p2], 0]
                for d in range(dim):
                    neu1[d] += x[d]
                m += 1
            if m == 0:
                continue
            inv_m = 1.0 / m
            for d in range(dim):
                neu1[d] *= inv_m
            for d in range(dim):
                neu1e[d] = 0.0
            if hs:
                hs_pair(&neu1[0], center, syn1, codes, points, lengths, alpha,
                        sig_table, exact, &neu1e[0], dim)
            if negative > 0:
                rng = ns_pair(&neu1[0], center, syn1neg, table, negative, alpha,
                              sig_table, exact, &neu1e[0], dim, rng, tgt_buf, g_buf)
            for d in range(dim):
                neu1e[d] *= inv_m
            for p2 in range(lo2, hi2):
                if p2 == pos:
                    continue
                x = &syn0[sent[p2], 0]
                for d in range(dim):
                    x[d] += neu1e[d]
            updates[0] += 1
    return rng
