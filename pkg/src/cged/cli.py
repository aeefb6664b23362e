"""Command-line front end.

Subcommands: ``contract`` (contract one graph file), ``ged`` (edit distance
between two graph files), ``benchmark`` (timing/expansion grid over a
corpus, written as CSV plus a JSON summary), ``classify`` (nearest-neighbor
classification), ``stats`` (corpus statistics), and ``bench-backends``
(compare the compiled and numpy kernel backends).

Graph files are .gxl documents or the line-oriented debug text format.
Corpora come either from a downloaded archive (located by ``--data-root``
or the ``CGED_DATA_ROOT`` environment variable) or from the deterministic
synthetic generator (``--dataset synthetic``, the default).

Exit codes: 0 success, 2 usage error, 3 graph parse error,
4 configuration error, 5 dataset resolution or load error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__, kernels
from .centrality import CentralityMeasure
from .contraction import t_centrality_node_contraction
from .costs import CostModel, SearchSettings, load_cost_config
from .dataset import (
    Corpus,
    DatasetError,
    GxlParseError,
    Split,
    corpus_stats,
    load_graph_file,
    load_iam_corpus,
    locate_iam_indexes,
    split_corpus,
    synthesize_letter_like,
    write_debug_graph,
)
from .evaluation import (
    nn_classify,
    parse_level,
    run_timing_benchmark,
    summarize_benchmark,
    write_benchmark_csv,
)
from .ged import Heuristic, SearchSpec, brute_force_ged, run_search, t_centrality_ged

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_CONFIG = 4
EXIT_DATASET = 5

_DATASETS = ("synthetic", "letter-high", "letter-med", "letter-low", "aids")


class ConfigError(Exception):
    pass


# ----------------------------------------------------------------------
# shared argument plumbing
# ----------------------------------------------------------------------

def _add_search_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="FILE",
                   help="cost-model file ('key = value' lines; see README)")
    p.add_argument("--search", choices=("astar", "beam"), default="astar",
                   help="exact best-first search or width-limited beam (default: astar)")
    p.add_argument("--beam-width", type=int, default=None, metavar="W",
                   help="open-list width for --search beam (default: config file or 10)")
    p.add_argument("--heuristic", choices=("zero", "count_bound"), default=None,
                   help="lower bound added to accumulated cost (default: config file or zero)")


def _load_config(args) -> tuple[CostModel, SearchSettings]:
    if not args.config:
        return CostModel(), SearchSettings()
    try:
        return load_cost_config(args.config)
    except OSError as exc:
        raise ConfigError(f"cannot read config {args.config}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"bad config {args.config}: {exc}") from None


def _search_from_args(args) -> tuple[CostModel, SearchSpec]:
    cm, settings = _load_config(args)
    heuristic = Heuristic(args.heuristic or settings.heuristic)
    if args.search == "beam":
        width = args.beam_width if args.beam_width is not None else settings.beam_width
        if width < 1:
            raise ConfigError(f"beam width must be >= 1, got {width}")
        return cm, SearchSpec.beam(width)
    return cm, SearchSpec.astar(heuristic)


def _add_dataset_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dataset", choices=_DATASETS, default="synthetic",
                   help="corpus source (default: synthetic)")
    p.add_argument("--data-root", default=None, metavar="DIR",
                   help="root of the downloaded corpora (default: $CGED_DATA_ROOT)")
    p.add_argument("--train-index", default=None, metavar="CXL",
                   help="explicit train index file (overrides --dataset layout)")
    p.add_argument("--test-index", default=None, metavar="CXL",
                   help="explicit test index file (overrides --dataset layout)")
    p.add_argument("--syn-count", type=int, default=64, metavar="N",
                   help="synthetic corpus size (default: 64)")
    p.add_argument("--syn-classes", type=int, default=4, metavar="K",
                   help="synthetic class count (default: 4)")
    p.add_argument("--syn-distortion", type=float, default=0.3, metavar="D",
                   help="synthetic noise scale (default: 0.3)")
    p.add_argument("--seed", type=int, default=42,
                   help="seed for synthesis and pair sampling (default: 42)")


def _data_root(args) -> Path:
    root = args.data_root or os.environ.get("CGED_DATA_ROOT")
    if not root:
        raise DatasetError(
            "no dataset root: pass --data-root or set CGED_DATA_ROOT "
            "(or use --dataset synthetic)")
    return Path(root)


def _resolve_pair_corpora(args) -> tuple[Corpus, Corpus]:
    """(train, test) corpora per the dataset flags."""
    if args.train_index or args.test_index:
        if not (args.train_index and args.test_index):
            raise DatasetError("--train-index and --test-index must be given together")
        return (load_iam_corpus(args.train_index, Split.TRAIN),
                load_iam_corpus(args.test_index, Split.TEST))
    if args.dataset == "synthetic":
        corpus = synthesize_letter_like(
            args.seed, args.syn_count, args.syn_classes, args.syn_distortion)
        return split_corpus(corpus)
    train_path, test_path = locate_iam_indexes(_data_root(args), args.dataset)
    return (load_iam_corpus(train_path, Split.TRAIN),
            load_iam_corpus(test_path, Split.TEST))


def _resolve_single_corpus(args) -> Corpus:
    train, test = _resolve_pair_corpora(args)
    return train if getattr(args, "split", "test") == "train" else test


def _write_json(obj: dict, path: Optional[str]) -> None:
    text = json.dumps(obj, indent=2)
    if path is None or path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_contract(args) -> int:
    g = load_graph_file(args.graph)
    if args.t < 0:
        raise ConfigError(f"t must be >= 0, got {args.t}")
    measure = CentralityMeasure(args.measure)
    contracted, report = t_centrality_node_contraction(
        g, args.t, measure, recompute=args.recompute, strict_slots=args.strict_slots)
    text = write_debug_graph(contracted)
    if args.out_graph == "-":
        print(text, end="")
        if args.out_report == "-":
            print()
    else:
        Path(args.out_graph).write_text(text, encoding="utf-8")
    _write_json(report.to_json_dict(), args.out_report)
    return EXIT_OK


def cmd_ged(args) -> int:
    cm, search = _search_from_args(args)
    if args.t < 0:
        raise ConfigError(f"t must be >= 0, got {args.t}")
    g1 = load_graph_file(args.graph1)
    g2 = load_graph_file(args.graph2)
    measure = CentralityMeasure(args.measure)
    kernels.warm_up()  # report search time, not first-call compilation
    result = t_centrality_ged(g1, g2, args.t, measure, cm, search,
                              recompute=args.recompute, strict_slots=args.strict_slots)
    if args.json:
        _write_json(result.to_json_dict(), args.out)
        return EXIT_OK
    rep1, rep2 = result.contraction_reports
    print(f"cost: {result.cost}")
    print(f"search: {search.describe()}  expanded: {result.expanded_nodes}  "
          f"elapsed: {result.elapsed:.4f}s  backend: {kernels.backend_name()}")
    print(f"contracted: {rep1.removed_ids} | {rep2.removed_ids}")
    print(f"operations ({len(result.path.operations)}):")
    for op in result.path.operations:
        print(f"  {op.kind.value:<9} {op.source!r:>10} -> {op.target!r:<10} cost {op.cost}")
    return EXIT_OK


def cmd_oracle_ged(args) -> int:
    cm, search = _search_from_args(args)
    g1 = load_graph_file(args.graph1)
    g2 = load_graph_file(args.graph2)
    searched = run_search(g1, g2, cm, search).cost
    exact = brute_force_ged(g1, g2, cm)
    agree = abs(searched - exact) <= 1e-9
    print(f"search: {searched}")
    print(f"oracle: {exact}")
    print(f"agree: {agree}")
    return EXIT_OK if agree else 1


def cmd_benchmark(args) -> int:
    cm, search = _search_from_args(args)
    corpus = _resolve_single_corpus(args)
    if args.measures == "all":
        measures = list(CentralityMeasure)
    else:
        measures = [CentralityMeasure(m.strip()) for m in args.measures.split(",") if m.strip()]
    levels = [parse_level(s) for s in args.levels.split(",") if s.strip()]
    records = run_timing_benchmark(
        corpus, measures, levels, search,
        sample=args.sample, seed=args.seed, cm=cm, workers=args.workers)
    write_benchmark_csv(records, args.out_csv)
    summary = {
        "corpus": corpus.name,
        "search": search.describe(),
        "seed": args.seed,
        "sample": args.sample,
        **summarize_benchmark(records),
    }
    _write_json(summary, args.out_json)
    print(f"wrote {len(records)} records to {args.out_csv} and summary to {args.out_json}")
    print(f"{'measure':<13} {'level':<6} {'pairs':>5} {'mean_cost':>10} "
          f"{'mean_ms':>9} {'mean_expanded':>14}")
    for m in summary["means"]:
        print(f"{m['measure']:<13} {m['level']:<6} {m['pairs']:>5} "
              f"{m['mean_cost']:>10.4f} {m['mean_elapsed_seconds'] * 1e3:>9.3f} "
              f"{m['mean_expanded_nodes']:>14.2f}")
    return EXIT_OK


def cmd_classify(args) -> int:
    cm, search = _search_from_args(args)
    train, test = _resolve_pair_corpora(args)
    measure = CentralityMeasure(args.measure)
    level = parse_level(args.level)
    result = nn_classify(train, test, measure, level, search, cm,
                         workers=args.workers, k=args.knn)
    payload = {
        "measure": measure.value,
        "level": level.value,
        "search": search.describe(),
        "train": train.name,
        "test": test.name,
        **result.to_json_dict(),
    }
    _write_json(payload, args.out_json)
    print(f"accuracy: {result.accuracy:.4f} "
          f"({payload['correct']}/{payload['total']}) at {level} with {measure}")
    return EXIT_OK


def cmd_stats(args) -> int:
    corpus = _resolve_single_corpus(args)
    stats = corpus_stats(corpus)
    payload = {"corpus": corpus.name, "split": corpus.split.value, **stats.to_json_dict()}
    _write_json(payload, args.out_json)
    return EXIT_OK


def cmd_bench_backends(args) -> int:
    rng = np.random.default_rng(args.seed)
    n2 = args.nodes
    adj2 = (rng.random((n2, n2)) < 0.3).astype(np.uint8)
    adj2 = np.triu(adj2, 1)
    adj2 = adj2 + adj2.T
    w2 = np.zeros((n2, n2))
    a1u = (rng.random(n2) < 0.4).astype(np.uint8)
    w1u = np.zeros(n2)
    depth = n2 // 2
    mapping = np.arange(depth, dtype=np.int64)
    mapping[::3] = kernels.EPS_SLOT
    used = np.zeros(n2, bool)
    used[mapping[mapping >= 0]] = True
    node_dist = rng.random(n2)
    extend_args = (a1u, w1u, adj2, w2, mapping, depth, used, node_dist,
                   1.0, 1.0, 1.0, 1.0)

    nb = args.bet_nodes
    dense = (rng.random((nb, nb)) < 0.05).astype(np.uint8)
    dense = np.triu(dense, 1)
    dense = dense + dense.T
    indptr = np.zeros(nb + 1, np.int64)
    indptr[1:] = np.cumsum(dense.sum(axis=1))
    indices = np.nonzero(dense)[1].astype(np.int64)

    def best(fn, fargs, inner):
        fn(*fargs)  # warm-up (and first-call compilation)
        times = []
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            for _ in range(inner):
                fn(*fargs)
            times.append((time.perf_counter() - t0) / inner)
        return min(times)

    rows = []
    rows.append(("extend_costs", "numpy",
                 best(kernels.extend_costs_numpy, extend_args, 200)))
    if kernels.extend_costs_numba is not None:
        rows.append(("extend_costs", "numba",
                     best(kernels.extend_costs_numba, extend_args, 200)))
    rows.append(("betweenness", "numpy",
                 best(kernels.betweenness_numpy, (indptr, indices, nb), 2)))
    if kernels.betweenness_numba is not None:
        rows.append(("betweenness", "numba",
                     best(kernels.betweenness_numba, (indptr, indices, nb), 2)))

    print(f"active backend: {kernels.backend_name()}")
    print(f"{'kernel':<14} {'backend':<8} {'best_us':>10}")
    by_kernel: dict[str, dict[str, float]] = {}
    for kernel, backend, t in rows:
        by_kernel.setdefault(kernel, {})[backend] = t
        print(f"{kernel:<14} {backend:<8} {t * 1e6:>10.2f}")
    for kernel, t in by_kernel.items():
        if "numba" in t and "numpy" in t:
            print(f"{kernel}: numba is {t['numpy'] / t['numba']:.1f}x "
                  f"the numpy backend's speed")
    if kernels.extend_costs_numba is None:
        print("numba backend unavailable (not installed or disabled via CGED_NO_NUMBA)")
    return EXIT_OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cged",
        description="Graph edit distance with centrality-guided node contraction.",
        epilog=(
            "examples:\n"
            "  cged ged a.gxl b.gxl --t 2 --measure pagerank\n"
            "  cged benchmark --dataset synthetic --sample 100 --search beam --beam-width 10\n"
            "  cged benchmark --dataset letter-high --data-root ~/iam --sample 100\n"
            "  cged classify --dataset aids --data-root ~/iam --level 'T1*' --workers 4\n"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("contract", help="contract one graph file, write result + report")
    p.add_argument("graph", help=".gxl or debug-format graph file")
    p.add_argument("--t", type=int, default=0, help="number of nodes to contract")
    p.add_argument("--measure", choices=[m.value for m in CentralityMeasure],
                   default="degree")
    p.add_argument("--recompute", action="store_true",
                   help="re-rank remaining nodes after every deletion")
    p.add_argument("--strict-slots", action="store_true",
                   help="skipped candidates consume contraction slots")
    p.add_argument("--out-graph", default="-", metavar="FILE",
                   help="contracted graph in debug format (default: stdout)")
    p.add_argument("--out-report", default="-", metavar="FILE",
                   help="JSON contraction report (default: stdout)")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("ged", help="edit distance between two graph files")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--t", type=int, default=0, help="contraction budget per graph")
    p.add_argument("--measure", choices=[m.value for m in CentralityMeasure],
                   default="degree")
    p.add_argument("--recompute", action="store_true")
    p.add_argument("--strict-slots", action="store_true")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", default="-", metavar="FILE",
                   help="where to write --json output (default: stdout)")
    _add_search_args(p)
    p.set_defaults(func=cmd_ged)

    p = sub.add_parser("oracle-ged")  # hidden cross-check: search vs exhaustive
    p.add_argument("graph1")
    p.add_argument("graph2")
    _add_search_args(p)
    p.set_defaults(func=cmd_oracle_ged)

    p = sub.add_parser("benchmark", help="timing/expansion grid -> CSV + JSON summary")
    _add_dataset_args(p)
    p.add_argument("--split", choices=("train", "test"), default="test",
                   help="which split to benchmark (default: test)")
    p.add_argument("--measures", default="all",
                   help="comma-separated measures, or 'all' (default)")
    p.add_argument("--levels", default="T0,T1*,T2*,T3*",
                   help="comma-separated contraction levels (default: all four)")
    p.add_argument("--sample", type=int, default=100, help="number of graph pairs")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--out-csv", default="benchmark.csv", metavar="FILE")
    p.add_argument("--out-json", default="benchmark.json", metavar="FILE")
    _add_search_args(p)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("classify", help="nearest-neighbor classification -> JSON")
    _add_dataset_args(p)
    p.add_argument("--measure", choices=[m.value for m in CentralityMeasure],
                   default="degree")
    p.add_argument("--level", default="T0", help="contraction level (default: T0)")
    p.add_argument("--knn", type=int, default=1, help="neighbors to vote (default: 1)")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--out-json", default="classification.json", metavar="FILE")
    _add_search_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("stats", help="corpus statistics (counts, means, histogram)")
    _add_dataset_args(p)
    p.add_argument("--split", choices=("train", "test"), default="test")
    p.add_argument("--out-json", default="-", metavar="FILE")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench-backends",
                       help="compare the compiled and numpy kernel backends")
    p.add_argument("--nodes", type=int, default=12,
                   help="target-graph size for the expansion kernel (default: 12)")
    p.add_argument("--bet-nodes", type=int, default=300,
                   help="graph size for the betweenness kernel (default: 300)")
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_bench_backends)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GxlParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATASET
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
