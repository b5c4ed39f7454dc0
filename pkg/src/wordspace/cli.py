"""Single entry point dispatching all subcommands.

Exit codes: 0 success, 1 validation errors (bad flags or configuration),
2 runtime failures (I/O, malformed inputs, failed queries). Logs go to the
error stream; --quiet suppresses everything below WARNING.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .corpus import MultiwordDictionary, load_multiword_dictionary, preprocess_corpus
from .errors import ConfigError, WordspaceError
from .evaluate import (TOOL_ANALOGY, TOOL_DISTANCE, evaluate_relationship, run_sweep,
                       write_report_csv)
from .model import CBOW, SKIP_GRAM, TrainingConfig
from .modelio import load_model, save_model
from .query import analogy_query, distance_query, format_result
from .relations import load_gold_standard, normalize_field
from .service import QueryService, ServiceConfig
from .trainer import train
from .util import atomic_path

logger = logging.getLogger(__name__)

_ARCH = {"sg": SKIP_GRAM, "cbow": CBOW}


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wordspace", description=__doc__.splitlines()[0])
    parser.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("preprocess", help="normalize a raw corpus and merge multiwords")
    p.add_argument("--input", required=True, help="raw UTF-8 text file")
    p.add_argument("--dict", default=None, help="multiword term list, one per line")
    p.add_argument("--output", required=True, help="preprocessed corpus destination")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("train", help="train a vector-space model")
    p.add_argument("--input", required=True, help="preprocessed corpus")
    p.add_argument("--output", required=True, help="model file destination")
    p.add_argument("--arch", choices=("sg", "cbow"), default="sg")
    p.add_argument("--dim", type=int, default=200, help="vector dimensionality")
    p.add_argument("--window", type=int, default=5, help="max context span per side")
    p.add_argument("--hs", type=int, choices=(0, 1), default=1, help="hierarchical softmax")
    p.add_argument("--negative", type=int, default=0, help="negative samples per target")
    p.add_argument("--sample", type=float, default=1e-3, help="subsampling threshold")
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--alpha", type=float, default=None, help="initial learning rate")
    p.add_argument("--min-alpha", type=float, default=None, help="final learning rate")
    p.add_argument("--min-count", type=int, default=5, help="discard rarer words")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=1, help="root of all randomness")
    p.add_argument("--binary", type=int, choices=(0, 1), default=1, help="binary model format")
    p.add_argument("--exact-sigmoid", type=int, choices=(0, 1), default=0,
                   help="exact sigmoid instead of the lookup table")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("distance", help="nearest neighbors by cosine similarity")
    p.add_argument("--model", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--top", type=int, default=40)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("analogy", help="vector-offset query: a - b + c")
    p.add_argument("--model", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--top", type=int, default=40)
    p.set_defaults(func=cmd_analogy)

    p = sub.add_parser("evaluate", help="score one relation against a gold standard")
    p.add_argument("--model", required=True)
    p.add_argument("--gold", required=True, help="subject<TAB>predicate<TAB>object TSV")
    p.add_argument("--predicate", required=True)
    p.add_argument("--tool", choices=(TOOL_DISTANCE, TOOL_ANALOGY), required=True)
    p.add_argument("--exemplar", default=None, metavar="S:O",
                   help="analogy exemplar pair (default: most frequent in-vocabulary pair)")
    p.add_argument("--top", type=int, default=40)
    p.add_argument("--dict", default=None, help="multiword dictionary used for the corpus")
    p.add_argument("--corpus-id", default="", help="corpus column value in the report")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="train and evaluate a parameter grid")
    p.add_argument("--corpus", required=True, help="preprocessed corpus")
    p.add_argument("--gold", required=True)
    p.add_argument("--arch", default="sg,cbow", help="comma-separated: sg,cbow")
    p.add_argument("--dims", default="200", help="comma-separated dimensionalities")
    p.add_argument("--windows", default="5", help="comma-separated window sizes")
    p.add_argument("--tools", default=f"{TOOL_ANALOGY},{TOOL_DISTANCE}")
    p.add_argument("--predicates", default=None, help="default: all predicates in the gold file")
    p.add_argument("--hs", type=int, choices=(0, 1), default=1)
    p.add_argument("--negative", type=int, default=0)
    p.add_argument("--sample", type=float, default=1e-3)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--min-count", type=int, default=5)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--top", type=int, default=40)
    p.add_argument("--dict", default=None)
    p.add_argument("--corpus-id", default=None)
    p.add_argument("--out", required=True, help="report CSV destination")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="serve distance/analogy over HTTP")
    p.add_argument("--model", required=True)
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (WordspaceError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _load_dict(path) -> MultiwordDictionary | None:
    return load_multiword_dictionary(path) if path else None


def cmd_preprocess(args) -> int:
    mwdict = _load_dict(args.dict)
    with atomic_path(args.output) as tmp:
        stats = preprocess_corpus(args.input, mwdict, tmp)
    print(f"{stats.word_count} {stats.distinct_words}")
    return 0


def cmd_train(args) -> int:
    config = TrainingConfig(
        architecture=_ARCH[args.arch],
        dim=args.dim,
        window=args.window,
        hs=bool(args.hs),
        negative=args.negative,
        sample=args.sample,
        epochs=args.epochs,
        alpha0=args.alpha,
        min_alpha=args.min_alpha,
        min_count=args.min_count,
        threads=args.threads,
        seed=args.seed,
        exact_sigmoid=bool(args.exact_sigmoid),
    )
    model = train(args.input, config)
    save_model(model, args.output, binary=bool(args.binary))
    return 0


def cmd_distance(args) -> int:
    model = load_model(args.model)
    result = distance_query(model, args.word, args.top)
    if result:
        print(format_result(result))
    return 0


def cmd_analogy(args) -> int:
    model = load_model(args.model)
    result = analogy_query(model, args.a, args.b, args.c, args.top)
    if result:
        print(format_result(result))
    return 0


def cmd_evaluate(args) -> int:
    if args.top < 0:
        raise ConfigError("--top must be >= 0")
    model = load_model(args.model)
    mwdict = _load_dict(args.dict)
    gold = load_gold_standard(args.gold, mwdict)
    exemplar = None
    if args.exemplar is not None:
        if ":" not in args.exemplar:
            raise ConfigError("--exemplar must look like SUBJECT:OBJECT")
        s, o = args.exemplar.split(":", 1)
        exemplar = (normalize_field(s, mwdict), normalize_field(o, mwdict))
    row = evaluate_relationship(model, gold, args.predicate, args.tool,
                                k=args.top, exemplar=exemplar, corpus_id=args.corpus_id)
    if args.out:
        with atomic_path(args.out) as tmp:
            write_report_csv([row], tmp)
    else:
        write_report_csv([row], sys.stdout)
    return 0


def cmd_sweep(args) -> int:
    archs = [_parse_arch(a) for a in _split(args.arch)]
    dims = [int(v) for v in _split(args.dims)]
    windows = [int(v) for v in _split(args.windows)]
    tools = _split(args.tools)
    if args.top < 0:
        raise ConfigError("--top must be >= 0")
    base = TrainingConfig(
        hs=bool(args.hs), negative=args.negative, sample=args.sample,
        epochs=args.epochs, min_count=args.min_count, threads=args.threads,
        seed=args.seed,
    )
    mwdict = _load_dict(args.dict)
    gold = load_gold_standard(args.gold, mwdict)
    predicates = _split(args.predicates) if args.predicates else None
    rows = run_sweep(
        args.corpus, gold, archs, windows, dims, tools, predicates,
        base_config=base, alpha0=args.alpha, k=args.top,
        corpus_id=args.corpus_id or os.path.basename(args.corpus),
    )
    with atomic_path(args.out) as tmp:
        write_report_csv(rows, tmp)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_serve(args) -> int:
    service = QueryService(ServiceConfig(model_path=args.model, host=args.host, port=args.port))
    service.load()
    service.serve_forever()
    return 0


def _split(csvish: str) -> list[str]:
    return [v.strip() for v in csvish.split(",") if v.strip()]


def _parse_arch(name: str) -> str:
    if name not in _ARCH:
        raise ConfigError(f"unknown architecture {name!r} (expected sg or cbow)")
    return _ARCH[name]


if __name__ == "__main__":
    sys.exit(main())
