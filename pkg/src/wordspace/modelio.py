"""Model persistence in the classic word-vector interchange formats.

Binary: ASCII header "<vocab_size> <dim>\n", then per word in canonical
order: word bytes, one space, dim little-endian float32 values, newline.
Text: same header, then "<word> <f1> ... <fdim>\n" with shortest
round-trip float32 decimals.

Alongside `<path>` the saver writes `<path>.vocab` (word<TAB>count lines)
and, when objective weights exist, `<path>.weights` — the same record layout
with synthetic row labels hs0..hsN / ns0..nsN. Queries never need either
sidecar; they exist for inspection and training resumption.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import FormatError
from .model import EmbeddingModel
from .util import atomic_path
from .vocab import Vocabulary

_MAX_WORD_BYTES = 10_000


def save_model(model: EmbeddingModel, path, binary: bool = True) -> None:
    """Write the model, its vocabulary counts, and any objective weights."""
    path = os.fspath(path)
    with atomic_path(path) as tmp:
        _write_records(tmp, model.vocab.words, model.input_vectors, binary)
    with atomic_path(path + ".vocab") as tmp:
        model.vocab.save(tmp)
    labels: list[str] = []
    blocks: list[np.ndarray] = []
    if model.hs_weights is not None:
        labels.extend(f"hs{i}" for i in range(model.hs_weights.shape[0]))
        blocks.append(model.hs_weights)
    if model.ns_weights is not None:
        labels.extend(f"ns{i}" for i in range(model.ns_weights.shape[0]))
        blocks.append(model.ns_weights)
    if blocks:
        with atomic_path(path + ".weights") as tmp:
            _write_records(tmp, labels, np.vstack(blocks), binary)


def load_model(path, binary: bool | None = None) -> EmbeddingModel:
    """Load input vectors and vocabulary; attach sidecar data when present."""
    path = os.fspath(path)
    words, matrix = _read_records(path, binary)
    counts = np.ones(len(words), dtype=np.int64)
    vocab_path = path + ".vocab"
    if os.path.exists(vocab_path):
        stored = Vocabulary.load(vocab_path)
        if stored.words == words:
            counts = stored.counts
    vocab = Vocabulary(words, counts, {w: i for i, w in enumerate(words)}, int(counts.sum()))
    hs_weights = ns_weights = None
    weights_path = path + ".weights"
    if os.path.exists(weights_path):
        labels, wmat = _read_records(weights_path, binary)
        hs_rows = [i for i, lab in enumerate(labels) if lab.startswith("hs")]
        ns_rows = [i for i, lab in enumerate(labels) if lab.startswith("ns")]
        if hs_rows:
            hs_weights = wmat[hs_rows]
        if ns_rows:
            ns_weights = wmat[ns_rows]
    return EmbeddingModel(vocab, matrix, hs_weights, ns_weights)


def _write_records(path, labels, matrix: np.ndarray, binary: bool) -> None:
    mat = np.ascontiguousarray(matrix, dtype="<f4")
    if binary:
        with open(path, "wb") as f:
            f.write(f"{len(labels)} {mat.shape[1]}\n".encode("ascii"))
            for label, row in zip(labels, mat):
                f.write(label.encode("utf-8"))
                f.write(b" ")
                f.write(row.tobytes())
                f.write(b"\n")
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(f"{len(labels)} {mat.shape[1]}\n")
            for label, row in zip(labels, mat):
                f.write(label)
                for v in row:
                    f.write(" ")
                    f.write(str(v))
                f.write("\n")


def _read_records(path, binary: bool | None = None) -> tuple[list[str], np.ndarray]:
    with open(path, "rb") as f:
        header = f.readline(128)
        if not header.endswith(b"\n"):
            raise FormatError(f"{path}: missing header line", 0)
        parts = header[:-1].split(b" ")
        try:
            n_rows, dim = (int(p) for p in parts)
            if n_rows < 0 or dim <= 0:
                raise ValueError
        except ValueError:
            raise FormatError(f"{path}: malformed header {header!r}", 0) from None
        offset = len(header)
        if binary is None:
            binary = _sniff_binary(f, dim)
        reader = _read_binary_rows if binary else _read_text_rows
        labels, matrix = reader(f, path, n_rows, dim, offset)
    return labels, matrix


def _sniff_binary(f, dim: int) -> bool:
    """Peek at the first record: parseable text row of `dim` floats means text."""
    pos = f.tell()
    chunk = f.read(128 + dim * 48)
    f.seek(pos)
    line = chunk.split(b"\n", 1)[0]
    try:
        fields = line.decode("utf-8").split(" ")
        if len(fields) == dim + 1:
            [float(v) for v in fields[1:]]
            return False
    except (UnicodeDecodeError, ValueError):
        pass
    return True


def _read_binary_rows(f, path, n_rows, dim, offset):
    labels = []
    seen: set[str] = set()
    matrix = np.empty((n_rows, dim), dtype=np.float32)
    vec_bytes = 4 * dim
    for i in range(n_rows):
        row_start = offset
        word = bytearray()
        while True:
            ch = f.read(1)
            if not ch:
                raise FormatError(f"{path}: truncated record {i}", offset)
            offset += 1
            if ch == b" ":
                break
            word += ch
            if len(word) > _MAX_WORD_BYTES:
                raise FormatError(f"{path}: unterminated word in record {i}", row_start)
        raw = f.read(vec_bytes)
        if len(raw) != vec_bytes:
            raise FormatError(f"{path}: truncated vector in record {i}", offset)
        offset += vec_bytes
        nl = f.read(1)
        if nl != b"\n":
            raise FormatError(f"{path}: missing record terminator in record {i}", offset)
        offset += 1
        try:
            decoded = word.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"{path}: undecodable word in record {i}", row_start) from exc
        if decoded in seen:
            raise FormatError(f"{path}: duplicate word {decoded!r}", row_start)
        seen.add(decoded)
        labels.append(decoded)
        matrix[i] = np.frombuffer(raw, dtype="<f4")
    if f.read(1):
        raise FormatError(f"{path}: trailing data after {n_rows} records", offset)
    return labels, matrix


def _read_text_rows(f, path, n_rows, dim, offset):
    labels = []
    seen: set[str] = set()
    matrix = np.empty((n_rows, dim), dtype=np.float32)
    for i in range(n_rows):
        line = f.readline()
        if not line:
            raise FormatError(f"{path}: truncated record {i}", offset)
        try:
            fields = line.rstrip(b"\n").decode("utf-8").split(" ")
        except UnicodeDecodeError as exc:
            raise FormatError(f"{path}: undecodable record {i}", offset) from exc
        if len(fields) != dim + 1:
            raise FormatError(
                f"{path}: record {i} has {len(fields) - 1} values, expected {dim}", offset
            )
        try:
            matrix[i] = [np.float32(v) for v in fields[1:]]
        except ValueError as exc:
            raise FormatError(f"{path}: unparseable value in record {i}", offset) from exc
        if fields[0] in seen:
            raise FormatError(f"{path}: duplicate word {fields[0]!r}", offset)
        seen.add(fields[0])
        labels.append(fields[0])
        offset += len(line)
    if f.read(1):
        raise FormatError(f"{path}: trailing data after {n_rows} records", offset)
    return labels, matrix
