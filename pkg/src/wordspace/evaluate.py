"""Relation-retrieval evaluation and parameter sweeps.

A subject is a hit when its top-k retrieved words intersect its gold objects.
Accuracy is hits / evaluable unique subjects; out-of-vocabulary subjects are
skipped and reported, never counted as misses.
"""

from __future__ import annotations

import csv
import io
import itertools
import logging
import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ConfigError, EvaluationError, WordspaceError
from .model import CBOW, SKIP_GRAM, EmbeddingModel, TrainingConfig, config_with
from .query import DEFAULT_TOP_K, analogy_query, distance_query
from .relations import GoldStandard
from .trainer import encode_corpus, train_encoded
from .vocab import build_vocabulary

logger = logging.getLogger(__name__)

TOOL_DISTANCE = "distance"
TOOL_ANALOGY = "analogy"

CSV_HEADER = "corpus,tool,predicate,arch,dim,window,hs,negative,k,evaluable,skipped,hits,accuracy"

_ARCH_SHORT = {SKIP_GRAM: "sg", CBOW: "cbow"}


@dataclass
class EvalRow:
    corpus: str
    tool: str
    predicate: str
    arch: str
    dim: int
    window: int
    hs: int
    negative: int
    k: int
    evaluable: int
    skipped: int
    hits: int
    accuracy: Optional[float]  # None marks a failed cell

    @property
    def failed(self) -> bool:
        return self.accuracy is None

    def csv_fields(self) -> list[str]:
        acc = "" if self.accuracy is None else f"{self.accuracy:.4f}"
        return [
            self.corpus, self.tool, self.predicate, self.arch, str(self.dim),
            str(self.window), str(self.hs), str(self.negative), str(self.k),
            str(self.evaluable), str(self.skipped), str(self.hits), acc,
        ]


def _config_fields(model: EmbeddingModel) -> tuple[str, int, int, int, int]:
    cfg = model.config
    if cfg is None:
        return "", model.dim, 0, int(model.hs_weights is not None), 0
    return (
        _ARCH_SHORT[cfg.architecture], cfg.dim, cfg.window,
        int(cfg.hs), cfg.negative,
    )


def pick_exemplar(model: EmbeddingModel, gold: GoldStandard, predicate: str) -> tuple[str, str]:
    """Default analogy exemplar: in-vocabulary pair with highest combined count.

    Ties break on vocabulary order of subject, then object, so the choice is
    deterministic.
    """
    vocab = model.vocab
    rel = gold[predicate]
    best = None
    best_key = None
    for s in rel.subjects:
        if s not in vocab.index:
            continue
        for o in sorted(rel.objects[s]):
            if o not in vocab.index:
                continue
            si, oi = vocab.index[s], vocab.index[o]
            key = (-(int(vocab.counts[si]) + int(vocab.counts[oi])), si, oi)
            if best_key is None or key < best_key:
                best_key = key
                best = (s, o)
    if best is None:
        raise EvaluationError(f"no in-vocabulary exemplar pair for predicate {predicate!r}")
    return best


def evaluate_relationship(
    model: EmbeddingModel,
    gold: GoldStandard,
    predicate: str,
    tool: str,
    k: int = DEFAULT_TOP_K,
    exemplar: Optional[tuple[str, str]] = None,
    corpus_id: str = "",
) -> EvalRow:
    """Score one (model, predicate, tool) combination over all unique subjects."""
    if predicate not in gold:
        raise EvaluationError(f"predicate {predicate!r} not present in gold standard")
    if tool not in (TOOL_DISTANCE, TOOL_ANALOGY):
        raise EvaluationError(f"unknown tool {tool!r}")
    rel = gold[predicate]
    vocab = model.vocab

    ex_subject = ex_object = None
    if tool == TOOL_ANALOGY:
        if exemplar is None:
            ex_subject, ex_object = pick_exemplar(model, gold, predicate)
        else:
            ex_subject, ex_object = exemplar
        exemplar_ok = ex_subject in vocab.index and ex_object in vocab.index

    evaluable = skipped = hits = 0
    for subject in rel.subjects:
        if tool == TOOL_ANALOGY:
            # the exemplar pair never vouches for its own subject
            if subject == ex_subject or not exemplar_ok or subject not in vocab.index:
                skipped += 1
                continue
            result = analogy_query(model, ex_object, ex_subject, subject, k)
        else:
            if subject not in vocab.index:
                skipped += 1
                continue
            result = distance_query(model, subject, k)
        evaluable += 1
        objects = rel.objects[subject]
        if any(word in objects for word, _sim in result):
            hits += 1

    if evaluable == 0:
        raise EvaluationError(f"no evaluable subjects for predicate {predicate!r}")
    arch, dim, window, hs, negative = _config_fields(model)
    return EvalRow(corpus_id, tool, predicate, arch, dim, window, hs, negative,
                   k, evaluable, skipped, hits, hits / evaluable)


def compare_tools(
    model: EmbeddingModel,
    gold: GoldStandard,
    predicates: Optional[Sequence[str]] = None,
    k: int = DEFAULT_TOP_K,
    corpus_id: str = "",
) -> list[EvalRow]:
    """Tool x predicate accuracy matrix for one model."""
    if predicates is None:
        predicates = gold.predicates()
    return [
        evaluate_relationship(model, gold, predicate, tool, k, corpus_id=corpus_id)
        for tool in (TOOL_ANALOGY, TOOL_DISTANCE)
        for predicate in predicates
    ]


def run_sweep(
    corpus,
    gold: GoldStandard,
    architectures: Sequence[str],
    windows: Sequence[int],
    dims: Sequence[int],
    tools: Sequence[str] = (TOOL_ANALOGY, TOOL_DISTANCE),
    predicates: Optional[Sequence[str]] = None,
    base_config: Optional[TrainingConfig] = None,
    alpha0: Optional[float] = None,
    k: int = DEFAULT_TOP_K,
    corpus_id: Optional[str] = None,
    kernel: Optional[str] = None,
) -> list[EvalRow]:
    """Train one model per (architecture, window, dim) cell and score the grid.

    Models are shared across the tool and predicate axes. A failing cell or
    evaluation yields rows with empty accuracy instead of aborting the sweep.
    `alpha0=None` keeps each architecture's own default learning rate.
    """
    if predicates is None:
        predicates = gold.predicates()
    axes = (architectures, windows, dims, tools, predicates)
    if any(len(axis) == 0 for axis in axes):
        raise ConfigError("sweep grid is empty")
    for tool in tools:
        if tool not in (TOOL_DISTANCE, TOOL_ANALOGY):
            raise ConfigError(f"unknown tool {tool!r}")
    if base_config is None:
        base_config = TrainingConfig()
    if corpus_id is None:
        corpus_id = os.path.basename(os.fspath(corpus)) if isinstance(corpus, (str, os.PathLike)) else "corpus"

    vocab = build_vocabulary(corpus, base_config.min_count)
    data, starts, _raw = encode_corpus(corpus, vocab)

    rows: list[EvalRow] = []
    for arch, window, dim in itertools.product(architectures, windows, dims):
        config = config_with(
            base_config,
            architecture=arch, window=window, dim=dim,
            alpha0=alpha0, min_alpha=None,
        )
        arch_s = _ARCH_SHORT[arch]
        try:
            model = train_encoded(data, starts, vocab, config, kernel)
        except WordspaceError as exc:
            logger.error("training failed for %s-w%d-d%d: %s", arch_s, window, dim, exc)
            for tool, predicate in itertools.product(tools, predicates):
                rows.append(EvalRow(corpus_id, tool, predicate, arch_s, dim, window,
                                    int(config.hs), config.negative, k, 0, 0, 0, None))
            continue
        for tool, predicate in itertools.product(tools, predicates):
            try:
                rows.append(evaluate_relationship(model, gold, predicate, tool, k,
                                                  corpus_id=corpus_id))
            except WordspaceError as exc:
                logger.error("evaluation failed for %s/%s: %s", tool, predicate, exc)
                rows.append(EvalRow(corpus_id, tool, predicate, arch_s, dim, window,
                                    int(config.hs), config.negative, k, 0, 0, 0, None))
    return rows


def write_report_csv(rows: Sequence[EvalRow], sink) -> None:
    """Write rows under the canonical header (accuracy to 4 decimals)."""
    own = isinstance(sink, (str, os.PathLike))
    f = open(sink, "w", encoding="utf-8", newline="") if own else sink
    try:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for row in rows:
            writer.writerow(row.csv_fields())
    finally:
        if own:
            f.close()


def report_to_string(rows: Sequence[EvalRow]) -> str:
    buf = io.StringIO()
    write_report_csv(rows, buf)
    return buf.getvalue()
