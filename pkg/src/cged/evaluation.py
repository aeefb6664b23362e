"""Benchmark and classification harness.

Two experiments are reproduced here: per-pair timing/expansion benchmarks
across centrality measures and contraction levels, and nearest-neighbor
classification where the distance is the contracted edit distance.

Levels follow the iterated-degree convention: level Tk* contracts, per
graph, as many nodes as a degree-1..k contraction chain of that graph
removes; T0 contracts nothing. The two graphs of a pair may therefore use
different t values.

Everything is deterministic under a fixed seed: pair sampling, search
tie-breaking, and worker scheduling all preserve a total order, so results
are byte-identical whether computed serially or across a process pool
(elapsed fields excepted).
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .centrality import CentralityMeasure
from .contraction import t_centrality_node_contraction, t_star_value
from .costs import CostModel
from .dataset import Corpus
from .ged import SearchSpec, run_search
from .graph import Graph


class TLevel(Enum):
    T0 = "T0"
    T1STAR = "T1*"
    T2STAR = "T2*"
    T3STAR = "T3*"

    def __str__(self) -> str:
        return self.value


_LEVEL_ALIASES = {
    "t0": TLevel.T0, "t1*": TLevel.T1STAR, "t2*": TLevel.T2STAR, "t3*": TLevel.T3STAR,
    "t1star": TLevel.T1STAR, "t2star": TLevel.T2STAR, "t3star": TLevel.T3STAR,
    "t1": TLevel.T1STAR, "t2": TLevel.T2STAR, "t3": TLevel.T3STAR,
}


def parse_level(s: str) -> TLevel:
    try:
        return _LEVEL_ALIASES[s.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown level {s!r}; use T0, T1*, T2* or T3*") from None


def t_star_levels(g: Graph) -> dict[TLevel, int]:
    """Per-level contraction budget of one graph: 0 at T0, the size of a
    degree-1..k contraction chain at Tk*."""
    return {
        TLevel.T0: 0,
        TLevel.T1STAR: t_star_value(g, 1),
        TLevel.T2STAR: t_star_value(g, 2),
        TLevel.T3STAR: t_star_value(g, 3),
    }


@dataclass
class BenchmarkRecord:
    """One (pair, measure, level) cell of the benchmark grid."""

    pair_id: str
    measure: CentralityMeasure
    t_level: TLevel
    t_used_1: int
    t_used_2: int
    search: str
    cost: float
    elapsed: float
    expanded_nodes: int

    CSV_HEADER = ("pair_id", "measure", "level", "t_used_1", "t_used_2",
                  "search", "cost", "elapsed_seconds", "expanded_nodes")

    def csv_row(self) -> tuple:
        return (self.pair_id, self.measure.value, self.t_level.value,
                self.t_used_1, self.t_used_2, self.search,
                repr(self.cost), repr(self.elapsed), self.expanded_nodes)


@dataclass
class ClassificationResult:
    """Per-graph predictions plus accuracy and confusion counts."""

    predictions: list[tuple[str, str, str]]  # (graph name, true, predicted)
    accuracy: float
    confusion: dict[tuple[str, str], int] = field(default_factory=dict)

    @classmethod
    def from_predictions(cls, preds: list[tuple[str, str, str]]) -> "ClassificationResult":
        confusion: dict[tuple[str, str], int] = {}
        correct = 0
        for _, true, predicted in preds:
            confusion[(true, predicted)] = confusion.get((true, predicted), 0) + 1
            correct += true == predicted
        accuracy = correct / len(preds) if preds else 0.0
        return cls(list(preds), accuracy, confusion)

    def to_json_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "total": len(self.predictions),
            "correct": sum(t == p for _, t, p in self.predictions),
            "predictions": [
                {"graph": g, "true": t, "predicted": p}
                for g, t, p in self.predictions
            ],
            "confusion": [
                {"true": t, "predicted": p, "count": c}
                for (t, p), c in sorted(self.confusion.items())
            ],
        }


# ----------------------------------------------------------------------
# timing benchmark
# ----------------------------------------------------------------------

def _benchmark_pair(args) -> list[BenchmarkRecord]:
    pair_id, g1, g2, measures, levels, search, cm = args
    kernels.warm_up()  # keep compilation out of the timed cells
    lv1 = t_star_levels(g1)
    lv2 = t_star_levels(g2)
    records = []
    for measure in measures:
        for level in levels:
            t1, t2 = lv1[level], lv2[level]
            start = time.perf_counter()
            h1, _ = t_centrality_node_contraction(g1, t1, measure)
            h2, _ = t_centrality_node_contraction(g2, t2, measure)
            result = run_search(h1, h2, cm, search)
            elapsed = time.perf_counter() - start
            records.append(BenchmarkRecord(
                pair_id=pair_id, measure=measure, t_level=level,
                t_used_1=t1, t_used_2=t2, search=search.describe(),
                cost=result.cost, elapsed=elapsed,
                expanded_nodes=result.expanded_nodes,
            ))
    return records


def sample_pairs(n: int, sample: int, seed: int) -> list[tuple[int, int]]:
    """Seeded sample of index pairs; distinct indices whenever n > 1."""
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(sample):
        i = int(rng.integers(n))
        j = int(rng.integers(n))
        while n > 1 and j == i:
            j = int(rng.integers(n))
        pairs.append((i, j))
    return pairs


def run_timing_benchmark(
    corpus: Corpus,
    measures: Sequence[CentralityMeasure],
    levels: Sequence[TLevel],
    search: SearchSpec,
    sample: int,
    seed: int,
    cm: Optional[CostModel] = None,
    workers: int = 1,
) -> list[BenchmarkRecord]:
    """Run the (pair x measure x level) grid on a seeded pair sample.

    Each cell contracts both graphs at that graph's own level budget with
    the cell's measure, runs the selected search, and records cost, wall
    time, and expansion count. Records come back sorted by
    (pair, measure, level) regardless of worker count.
    """
    if sample < 1:
        raise ValueError("sample must be >= 1")
    if not corpus.graphs:
        raise ValueError("corpus is empty")
    if not measures or not levels:
        raise ValueError("need at least one measure and one level")
    cm = cm or CostModel()
    graphs = corpus.graphs
    pairs = sample_pairs(len(graphs), sample, seed)
    tasks = [
        (f"{k:05d}:{graphs[i].name}|{graphs[j].name}",
         graphs[i], graphs[j], tuple(measures), tuple(levels), search, cm)
        for k, (i, j) in enumerate(pairs)
    ]
    if workers <= 1:
        chunks = [_benchmark_pair(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_benchmark_pair, tasks))
    records = [r for chunk in chunks for r in chunk]
    level_order = {lv: i for i, lv in enumerate(TLevel)}
    records.sort(key=lambda r: (r.pair_id, r.measure.value, level_order[r.t_level]))
    return records


def summarize_benchmark(records: Sequence[BenchmarkRecord]) -> dict:
    """Per-(measure, level) means of cost, wall time, and expansion count."""
    groups: dict[tuple[str, str], list[BenchmarkRecord]] = {}
    for r in records:
        groups.setdefault((r.measure.value, r.t_level.value), []).append(r)
    means = []
    for (measure, level), rs in sorted(groups.items()):
        means.append({
            "measure": measure,
            "level": level,
            "pairs": len(rs),
            "mean_cost": float(np.mean([r.cost for r in rs])),
            "mean_elapsed_seconds": float(np.mean([r.elapsed for r in rs])),
            "mean_expanded_nodes": float(np.mean([r.expanded_nodes for r in rs])),
        })
    return {"records": len(records), "means": means}


def write_benchmark_csv(records: Sequence[BenchmarkRecord],
                        path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(BenchmarkRecord.CSV_HEADER)
        for r in records:
            writer.writerow(r.csv_row())


# ----------------------------------------------------------------------
# nearest-neighbor classification
# ----------------------------------------------------------------------

def _classify_one(args) -> tuple[str, str, str]:
    g, train_contracted, train_classes, measure, level, search, cm, k = args
    budget = t_star_levels(g)[level]
    h, _ = t_centrality_node_contraction(g, budget, measure)
    dists = [run_search(h, ht, cm, search).cost for ht in train_contracted]
    order = sorted(range(len(dists)), key=lambda i: (dists[i], i))
    if k == 1:
        predicted = train_classes[order[0]]
    else:
        top = order[:k]
        votes: dict[str, int] = {}
        for i in top:
            votes[train_classes[i]] = votes.get(train_classes[i], 0) + 1
        best = max(votes.values())
        # tie between classes: the nearest neighbor among them decides
        predicted = next(train_classes[i] for i in top if votes[train_classes[i]] == best)
    return (g.name or "", g.class_label or "", predicted)


def nn_classify(
    train: Corpus,
    test: Corpus,
    measure: CentralityMeasure,
    level: TLevel,
    search: SearchSpec,
    cm: Optional[CostModel] = None,
    workers: int = 1,
    k: int = 1,
) -> ClassificationResult:
    """Predict each test graph's class from its nearest training graph.

    Distances are contracted edit distances (each graph contracted at its
    own level budget with the given measure). Ties go to the lowest
    training index; k > 1 switches to majority vote among the k nearest.
    """
    if not train.graphs:
        raise ValueError("training corpus is empty")
    if k < 1:
        raise ValueError("k must be >= 1")
    cm = cm or CostModel()
    train_contracted = []
    train_classes = []
    for g in train.graphs:
        budget = t_star_levels(g)[level]
        h, _ = t_centrality_node_contraction(g, budget, measure)
        train_contracted.append(h)
        train_classes.append(g.class_label or "")
    tasks = [
        (g, train_contracted, train_classes, measure, level, search, cm, k)
        for g in test.graphs
    ]
    if workers <= 1:
        preds = [_classify_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            preds = list(pool.map(_classify_one, tasks))
    return ClassificationResult.from_predictions(preds)
