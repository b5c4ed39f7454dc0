"""Gold-standard subject-predicate-object triples for relation evaluation.

Input is TSV (subject<TAB>predicate<TAB>object). Every field goes through the
corpus normalization rules and multiword merging with the same dictionary used
to preprocess the corpus; fields that still span several tokens are joined
with underscores so each field is a single queryable token.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

from .corpus import MultiwordDictionary, preprocess_text
from .errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelationTriple:
    subject: str
    predicate: str
    obj: str


@dataclass
class PredicateRelations:
    """Unique subjects (first-appearance order) and their gold object sets."""

    subjects: list[str] = field(default_factory=list)
    objects: dict[str, set[str]] = field(default_factory=dict)
    n_triples: int = 0

    def add(self, subject: str, obj: str) -> None:
        if subject not in self.objects:
            self.subjects.append(subject)
            self.objects[subject] = set()
        self.objects[subject].add(obj)
        self.n_triples += 1


@dataclass
class GoldStandard:
    relations: dict[str, PredicateRelations] = field(default_factory=dict)
    n_triples: int = 0

    def predicates(self) -> list[str]:
        return list(self.relations)

    def __contains__(self, predicate: str) -> bool:
        return predicate in self.relations

    def __getitem__(self, predicate: str) -> PredicateRelations:
        return self.relations[predicate]

    def add(self, triple: RelationTriple) -> None:
        rel = self.relations.setdefault(triple.predicate, PredicateRelations())
        rel.add(triple.subject, triple.obj)
        self.n_triples += 1


def normalize_field(text: str, mwdict: MultiwordDictionary | None) -> str:
    """Reduce a label to one normalized token (underscore-joined if multiword)."""
    tokens = preprocess_text(text, mwdict)
    return "_".join(tokens)


def load_gold_standard(source, mwdict: MultiwordDictionary | None = None) -> GoldStandard:
    """Parse, normalize, and deduplicate triples from `source` (path or lines)."""
    gold = GoldStandard()
    seen: set[RelationTriple] = set()
    rejected: list[int] = []
    for lineno, line in enumerate(_iter_lines(source), 1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            rejected.append(lineno)
            continue
        subject, predicate, obj = (normalize_field(f, mwdict) for f in fields)
        if not subject or not predicate or not obj or subject == obj:
            rejected.append(lineno)
            continue
        triple = RelationTriple(subject, predicate, obj)
        if triple in seen:
            continue
        seen.add(triple)
        gold.add(triple)
    if rejected:
        logger.warning(
            "rejected %d gold-standard line(s): %s", len(rejected),
            ", ".join(str(n) for n in rejected[:20]) + ("..." if len(rejected) > 20 else ""),
        )
    if gold.n_triples == 0:
        raise InputError("gold standard contains no valid triples")
    return gold


def _iter_lines(source):
    if isinstance(source, (str, os.PathLike)):
        try:
            with open(source, "r", encoding="utf-8") as f:
                yield from (line.rstrip("\n") for line in f)
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from exc
    else:
        for line in source:
            yield line.rstrip("\n")
