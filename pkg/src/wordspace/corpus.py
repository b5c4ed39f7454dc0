"""Corpus preprocessing: normalization, multiword merging, corpus statistics.

Raw text is reduced to lowercase tokens over letters, digits, hyphen and
underscore; everything else is a token boundary. Dictionary-listed multiword
phrases are then collapsed into single underscore-joined tokens so downstream
training treats them as one word.
"""

from __future__ import annotations

import io
import os
import re
from dataclasses import dataclass, field
from typing import Iterator

from .errors import InputError

# Token characters: word characters (unicode letters, digits, underscore)
# plus ASCII hyphen. Hyphen/underscore may not lead or trail a token.
_TOKEN_RE = re.compile(r"[\w\-]+")
_UNDERSCORE_RUN = re.compile(r"_+")

_TRIE_END = ""  # marker key inside trie nodes


def normalize_text(raw: str) -> list[str]:
    """Lowercase `raw` and split it into clean tokens.

    Punctuation and whitespace become token boundaries; leading/trailing
    hyphens and underscores are stripped; empty tokens are dropped.
    """
    tokens = []
    for tok in _TOKEN_RE.findall(raw.lower()):
        tok = tok.strip("-_")
        if "_" in tok:
            tok = _UNDERSCORE_RUN.sub("_", tok)
        if tok:
            tokens.append(tok)
    return tokens


@dataclass
class MultiwordDictionary:
    """Set of normalized multi-token phrases plus a token trie for matching."""

    phrases: set[str] = field(default_factory=set)
    max_phrase_len: int = 0
    _trie: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.phrases)

    def __contains__(self, phrase: str) -> bool:
        return phrase in self.phrases

    def add(self, tokens: list[str]) -> None:
        """Add a phrase given as a normalized token list (ignored if < 2 tokens)."""
        if len(tokens) < 2:
            return
        phrase = " ".join(tokens)
        if phrase in self.phrases:
            return
        self.phrases.add(phrase)
        self.max_phrase_len = max(self.max_phrase_len, len(tokens))
        node = self._trie
        for tok in tokens:
            node = node.setdefault(tok, {})
        node[_TRIE_END] = True


def load_multiword_dictionary(source) -> MultiwordDictionary:
    """Build a MultiwordDictionary from `source`: a path or an iterable of lines.

    Each line is normalized like corpus text; underscores inside dictionary
    entries act as separators, so "heart_attack" and "Heart Attack" load as
    the same two-token phrase. Lines yielding fewer than two tokens are
    discarded.
    """
    mwdict = MultiwordDictionary()
    for line in _iter_lines(source):
        tokens = []
        for tok in normalize_text(line):
            tokens.extend(part for part in tok.split("_") if part)
        mwdict.add(tokens)
    return mwdict


def merge_multiwords(tokens: list[str], mwdict: MultiwordDictionary) -> list[str]:
    """Greedy longest-match scan joining dictionary phrases with underscores."""
    if not mwdict.phrases:
        return list(tokens)
    trie = mwdict._trie
    limit = mwdict.max_phrase_len
    out = []
    i = 0
    n = len(tokens)
    while i < n:
        node = trie.get(tokens[i])
        best = 0
        j = i + 1
        while node is not None:
            if _TRIE_END in node and j - i >= 2:
                best = j - i
            if j >= n or j - i >= limit:
                break
            node = node.get(tokens[j])
            j += 1
        if best:
            out.append("_".join(tokens[i : i + best]))
            i += best
        else:
            out.append(tokens[i])
            i += 1
    return out


@dataclass(frozen=True)
class PreprocessStats:
    word_count: int
    distinct_words: int


def preprocess_text(raw: str, mwdict: MultiwordDictionary | None = None) -> list[str]:
    """Normalize then merge one piece of text."""
    tokens = normalize_text(raw)
    if mwdict is not None and mwdict.phrases:
        tokens = merge_multiwords(tokens, mwdict)
    return tokens


def preprocess_corpus(source, mwdict: MultiwordDictionary | None, sink) -> PreprocessStats:
    """Stream `source` through normalization and merging into `sink`.

    One output line per input line, tokens space-separated. Returns total and
    distinct token counts over the whole output.
    """
    word_count = 0
    distinct: set[str] = set()
    out, close_out = _open_sink(sink)
    try:
        for line in _iter_lines(source):
            tokens = preprocess_text(line, mwdict)
            word_count += len(tokens)
            distinct.update(tokens)
            out.write(" ".join(tokens))
            out.write("\n")
    finally:
        if close_out:
            out.close()
    return PreprocessStats(word_count, len(distinct))


def _iter_lines(source) -> Iterator[str]:
    if isinstance(source, (str, os.PathLike)):
        try:
            with open(source, "r", encoding="utf-8") as f:
                yield from (line.rstrip("\n") for line in f)
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from exc
    elif hasattr(source, "read"):
        yield from (line.rstrip("\n") for line in source)
    else:
        yield from iter(source)


def _open_sink(sink) -> tuple[io.TextIOBase, bool]:
    if isinstance(sink, (str, os.PathLike)):
        try:
            return open(sink, "w", encoding="utf-8"), True
        except OSError as exc:
            raise InputError(f"cannot write {sink}: {exc}") from exc
    return sink, False
