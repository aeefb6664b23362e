"""Graph edit distance by best-first search over partial node mappings.

The search processes the first graph's nodes in ascending id order. Each
open-list entry is a prefix mapping: every processed node is either mapped
onto a distinct node of the second graph or deleted. Expanding an entry
places the next node every possible way; edge operations are charged as
soon as both endpoints are placed, so the accumulated cost of a prefix is
exact. Once all source nodes are placed, the leftover target nodes and
their edges are inserted in one step, making the entry complete.

Entries are ordered by (accumulated + heuristic cost, deeper first,
mapping lexicographic), which makes costs, edit paths, and expansion
counts reproducible. The exact solver pops entries until a complete one
surfaces; the beam variant additionally prunes the open list to the best
``w`` entries after each expansion, trading optimality for speed while
never returning less than the true distance.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .centrality import CentralityMeasure, EigenvectorConfig, PageRankConfig
from .contraction import ContractionReport, t_centrality_node_contraction
from .costs import CostModel, EditOperation, EditPath, node_label_distance
from .graph import Graph

EPS = kernels.EPS_SLOT  # mapping value for "deleted"


class Heuristic(Enum):
    ZERO = "zero"
    COUNT_BOUND = "count_bound"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SearchSpec:
    """Which solver to run: exact best-first or width-limited beam."""

    kind: str
    w: int = 0
    heuristic: Heuristic = Heuristic.ZERO

    def __post_init__(self) -> None:
        if self.kind not in ("astar", "beam"):
            raise ValueError(f"search kind must be 'astar' or 'beam', got {self.kind!r}")
        if self.kind == "beam" and self.w < 1:
            raise ValueError(f"beam width must be >= 1, got {self.w}")

    @classmethod
    def astar(cls, heuristic: Heuristic = Heuristic.ZERO) -> "SearchSpec":
        return cls("astar", 0, heuristic)

    @classmethod
    def beam(cls, w: int) -> "SearchSpec":
        return cls("beam", w)

    def describe(self) -> str:
        return "astar" if self.kind == "astar" else f"beam(w={self.w})"


@dataclass
class GedResult:
    """Distance plus the edit path that realizes it and search statistics."""

    cost: float
    path: EditPath
    expanded_nodes: int
    elapsed: float
    contraction_reports: Optional[Tuple[ContractionReport, ContractionReport]] = None

    def to_json_dict(self) -> dict:
        reports = None
        if self.contraction_reports is not None:
            reports = [r.to_json_dict() for r in self.contraction_reports]
        return {
            "cost": self.cost,
            "path": self.path.to_json_dict(),
            "expanded_nodes": self.expanded_nodes,
            "elapsed_seconds": self.elapsed,
            "contraction_reports": reports,
        }


class _PairView:
    """Numpy mirror of one graph pair, indexed by node position."""

    __slots__ = ("ids1", "ids2", "n1", "n2", "adj1", "w1", "adj2", "w2",
                 "node_dist", "e2i", "e2j", "e2_count", "er1_suffix")

    def __init__(self, g1: Graph, g2: Graph):
        self.ids1 = g1.nodes()
        self.ids2 = g2.nodes()
        self.n1 = len(self.ids1)
        self.n2 = len(self.ids2)
        self.adj1, self.w1 = _dense_edges(g1, self.ids1)
        self.adj2, self.w2 = _dense_edges(g2, self.ids2)
        labels1 = [g1.node_label(u) for u in self.ids1]
        labels2 = [g2.node_label(v) for v in self.ids2]
        dist = np.zeros((self.n1, self.n2), np.float64)
        for i, a in enumerate(labels1):
            for j, b in enumerate(labels2):
                dist[i, j] = node_label_distance(a, b)
        self.node_dist = dist
        ei, ej = np.nonzero(np.triu(self.adj2, k=1))
        self.e2i = ei.astype(np.int64)
        self.e2j = ej.astype(np.int64)
        self.e2_count = int(ei.size)
        # er1_suffix[d] = edges of g1 with both endpoint positions >= d
        # (positions are sorted, so that is: min endpoint position >= d)
        per_min = np.zeros(self.n1, np.int64)
        fi, _ = np.nonzero(np.triu(self.adj1, k=1))
        for i in fi:
            per_min[i] += 1
        suffix = np.zeros(self.n1 + 1, np.int64)
        if self.n1:
            suffix[: self.n1] = np.cumsum(per_min[::-1])[::-1]
        self.er1_suffix = suffix


def _dense_edges(g: Graph, ids: list[int]) -> tuple[np.ndarray, np.ndarray]:
    n = len(ids)
    pos = {u: i for i, u in enumerate(ids)}
    kind = np.zeros((n, n), np.uint8)
    val = np.zeros((n, n), np.float64)
    for u, v, label in g.edges():
        i, j = pos[u], pos[v]
        k = 1 if label is None else 2
        kind[i, j] = kind[j, i] = k
        if label is not None:
            val[i, j] = val[j, i] = float(label)
    return kind, val


def _completion_cost(view: _PairView, used: np.ndarray, cm: CostModel) -> float:
    # insert every unused target node, plus every target edge that was not
    # already charged (an edge is charged only once both endpoints are used)
    unused = view.n2 - int(np.count_nonzero(used))
    covered = int(np.count_nonzero(used[view.e2i] & used[view.e2j])) if view.e2_count else 0
    return cm.x_node * unused + cm.x_edge * (view.e2_count - covered)


def _count_bound(view: _PairView, depth: int, used: np.ndarray, cm: CostModel) -> float:
    r1 = view.n1 - depth
    r2 = view.n2 - int(np.count_nonzero(used))
    er1 = int(view.er1_suffix[depth])
    if view.e2_count:
        er2 = int(np.count_nonzero(~used[view.e2i] & ~used[view.e2j]))
    else:
        er2 = 0
    return abs(r1 - r2) * cm.x_node + abs(er1 - er2) * cm.x_edge


def _search(g1: Graph, g2: Graph, cm: CostModel, heuristic: Heuristic,
            width: Optional[int]) -> GedResult:
    t0 = time.perf_counter()
    view = _PairView(g1, g2)
    n1, n2 = view.n1, view.n2
    count_bound = heuristic is Heuristic.COUNT_BOUND

    root_used = np.zeros(n2, bool)
    if n1 == 0:
        root_g = _completion_cost(view, root_used, cm)
        root_h = 0.0
    else:
        root_g = 0.0
        root_h = _count_bound(view, 0, root_used, cm) if count_bound else 0.0
    # entry: (f, -depth, mapping, g); the first three form the total order
    heap: list[tuple[float, int, tuple[int, ...], float]] = [
        (root_g + root_h, 0, (), root_g)
    ]
    expanded = 0
    while heap:
        _, negd, mapping, g = heapq.heappop(heap)
        depth = -negd
        if depth == n1:
            path = _reconstruct(view, g1, g2, cm, mapping)
            elapsed = time.perf_counter() - t0
            return GedResult(cost=path.total_cost, path=path,
                             expanded_nodes=expanded, elapsed=elapsed)
        expanded += 1
        mapping_arr = np.array(mapping, np.int64) if mapping else np.zeros(0, np.int64)
        used = np.zeros(n2, bool)
        live = mapping_arr[mapping_arr >= 0]
        used[live] = True
        costs = kernels.extend_costs(
            view.adj1[depth], view.w1[depth], view.adj2, view.w2,
            mapping_arr, depth, used, view.node_dist[depth],
            cm.x_node, cm.y_node, cm.x_edge, cm.y_edge,
        )
        final = depth + 1 == n1
        for v in range(n2 + 1):
            slot = EPS if v == n2 else v
            if slot != EPS and used[slot]:
                continue
            child_g = g + float(costs[v])
            child_mapping = mapping + (slot,)
            if final or count_bound:
                child_used = used if slot == EPS else _with(used, slot)
                if final:
                    child_g += _completion_cost(view, child_used, cm)
                    child_h = 0.0
                else:
                    child_h = _count_bound(view, depth + 1, child_used, cm)
            else:
                child_h = 0.0
            heapq.heappush(heap, (child_g + child_h, -(depth + 1), child_mapping, child_g))
        if width is not None and len(heap) > width:
            heap = heapq.nsmallest(width, heap)
            heapq.heapify(heap)
    raise RuntimeError("open list exhausted before a complete mapping")  # unreachable


def _with(used: np.ndarray, v: int) -> np.ndarray:
    out = used.copy()
    out[v] = True
    return out


def _reconstruct(view: _PairView, g1: Graph, g2: Graph, cm: CostModel,
                 mapping: tuple[int, ...]) -> EditPath:
    """Expand a complete position mapping into an ordered operation list."""
    ids1, ids2 = view.ids1, view.ids2
    target_of: dict[int, Optional[int]] = {}
    ops: list[EditOperation] = []
    for i, slot in enumerate(mapping):
        u = ids1[i]
        if slot == EPS:
            target_of[u] = None
            ops.append(EditOperation.node_del(u, cm.x_node))
        else:
            v = ids2[slot]
            target_of[u] = v
            cost = cm.node_sub_cost(g1.node_label(u), g2.node_label(v))
            ops.append(EditOperation.node_sub(u, v, cost))
    mapped_targets = {v for v in target_of.values() if v is not None}
    for v in ids2:
        if v not in mapped_targets:
            ops.append(EditOperation.node_ins(v, cm.x_node))
    consumed: set[tuple[int, int]] = set()
    for u, v, label in g1.edges():
        a, b = target_of[u], target_of[v]
        if a is not None and b is not None and g2.has_edge(a, b):
            f = (a, b) if a < b else (b, a)
            consumed.add(f)
            cost = cm.edge_sub_cost(label, g2.edge_label(a, b))
            ops.append(EditOperation.edge_sub((u, v), f, cost))
        else:
            ops.append(EditOperation.edge_del((u, v), cm.x_edge))
    for a, b, _ in g2.edges():
        if (a, b) not in consumed:
            ops.append(EditOperation.edge_ins((a, b), cm.x_edge))
    return EditPath.from_operations(ops, complete=True)


def astar_ged(g1: Graph, g2: Graph, cm: Optional[CostModel] = None,
              heuristic: Heuristic = Heuristic.ZERO) -> GedResult:
    """Exact edit distance; returns the cheapest complete edit path."""
    return _search(g1, g2, cm or CostModel(), heuristic, width=None)


def beam_ged(g1: Graph, g2: Graph, cm: Optional[CostModel] = None,
             w: int = 10) -> GedResult:
    """Width-limited search; cost is an upper bound on the exact distance."""
    if w < 1:
        raise ValueError(f"beam width must be >= 1, got {w}")
    return _search(g1, g2, cm or CostModel(), Heuristic.ZERO, width=w)


def run_search(g1: Graph, g2: Graph, cm: CostModel, search: SearchSpec) -> GedResult:
    if search.kind == "astar":
        return astar_ged(g1, g2, cm, search.heuristic)
    return beam_ged(g1, g2, cm, search.w)


def t_centrality_ged(
    g1: Graph,
    g2: Graph,
    t: int,
    measure: CentralityMeasure,
    cm: Optional[CostModel] = None,
    search: SearchSpec = SearchSpec.astar(),
    recompute: bool = False,
    strict_slots: bool = False,
    eigenvector_cfg: Optional[EigenvectorConfig] = None,
    pagerank_cfg: Optional[PageRankConfig] = None,
) -> GedResult:
    """Contract the t least-central deletable nodes of each graph, then search.

    Contracted nodes and their incident edges are simply absent from the
    searched pair, so they contribute nothing to the returned cost; the two
    contraction reports ride along in the result.
    """
    cm = cm or CostModel()
    t0 = time.perf_counter()
    h1, rep1 = t_centrality_node_contraction(
        g1, t, measure, recompute, strict_slots, eigenvector_cfg, pagerank_cfg)
    h2, rep2 = t_centrality_node_contraction(
        g2, t, measure, recompute, strict_slots, eigenvector_cfg, pagerank_cfg)
    result = run_search(h1, h2, cm, search)
    result.contraction_reports = (rep1, rep2)
    result.elapsed = time.perf_counter() - t0
    return result


def brute_force_ged(g1: Graph, g2: Graph, cm: Optional[CostModel] = None) -> float:
    """Exhaustive reference distance; usable only for tiny pairs.

    Enumerates every injective partial mapping between the node sets,
    prices it with the plain graph API (shared with nothing in the search
    path), and returns the minimum.
    """
    cm = cm or CostModel()
    if g1.order + g2.order > 9:
        raise ValueError("brute_force_ged is limited to |V1| + |V2| <= 9")
    ids1, ids2 = g1.nodes(), g2.nodes()
    edges1, edges2 = g1.edges(), g2.edges()
    best = float("inf")
    for r in range(min(len(ids1), len(ids2)) + 1):
        for sources in itertools.combinations(ids1, r):
            for targets in itertools.permutations(ids2, r):
                m = dict(zip(sources, targets))
                cost = (len(ids1) - r + len(ids2) - r) * cm.x_node
                for u, v in m.items():
                    cost += cm.node_sub_cost(g1.node_label(u), g2.node_label(v))
                consumed = set()
                for u, v, label in edges1:
                    a, b = m.get(u), m.get(v)
                    if a is not None and b is not None and g2.has_edge(a, b):
                        consumed.add((a, b) if a < b else (b, a))
                        cost += cm.edge_sub_cost(label, g2.edge_label(a, b))
                    else:
                        cost += cm.x_edge
                for a, b, _ in edges2:
                    if (a, b) not in consumed:
                        cost += cm.x_edge
                if cost < best:
                    best = cost
    return best
