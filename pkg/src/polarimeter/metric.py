"""Multi-opinion polarization scoring.

Pipeline per run: scale edge weights by the average population share of the
two endpoint opinions, split the scaled weight mass into within-community and
between-community opinion-pair matrices, score each matrix by how little of
its mass sits on cross-opinion pairs, and combine the two scores weighted by
their mass. The multi-run entry point repeats community detection across a
seed schedule and reports summary statistics.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .community import LouvainConfig, Partition, louvain
from .graph import LabeledGraph, OpinionCensus, census


@dataclass(frozen=True)
class ScaledWeights:
    """Per-edge scaled weights, aligned with ``LabeledGraph.edges`` order."""

    values: np.ndarray

    @property
    def total(self) -> float:
        return float(self.values.sum())


@dataclass(frozen=True)
class FrequencyMatrices:
    """Symmetric opinion-by-opinion tallies of scaled edge weight.

    ``within`` collects edges whose endpoints share a community, ``between``
    collects edges that span two communities. Together they conserve the
    total scaled weight: each edge lands in exactly one matrix, once.
    """

    within: np.ndarray
    between: np.ndarray

    @property
    def within_sum(self) -> float:
        return _upper_sum(self.within)

    @property
    def between_sum(self) -> float:
        return _upper_sum(self.between)


def _upper_sum(matrix: np.ndarray) -> float:
    """Sum over the upper triangle including the diagonal."""
    k = matrix.shape[0]
    return float(matrix[np.triu_indices(k)].sum())


def scale_weights(graph: LabeledGraph, counts: OpinionCensus) -> ScaledWeights:
    """Scale each edge weight by the mean population fraction of its endpoint
    opinions, so edges of minority opinions contribute proportionally less."""
    fractions = np.asarray(counts.fractions, dtype=np.float64)
    eu, ev, ew = graph.edge_arrays()
    opinion = graph.opinion_array()
    values = 0.5 * (fractions[opinion[eu]] + fractions[opinion[ev]]) * ew
    return ScaledWeights(values=values)


def accumulate(
    graph: LabeledGraph, scaled: ScaledWeights, partition: Partition
) -> FrequencyMatrices:
    """Split scaled edge mass into the within/between opinion-pair matrices."""
    assignment = partition.assignment
    try:
        comm = np.fromiter(
            (assignment[u] for u in graph.nodes), dtype=np.int64, count=graph.node_count
        )
    except KeyError as exc:
        raise ValueError(f"node {exc.args[0]!r} missing from partition") from None

    eu, ev, _ = graph.edge_arrays()
    opinion = graph.opinion_array()
    lo = np.minimum(opinion[eu], opinion[ev])
    hi = np.maximum(opinion[eu], opinion[ev])
    same = comm[eu] == comm[ev]

    k = graph.num_opinions
    within = np.zeros((k, k), dtype=np.float64)
    between = np.zeros((k, k), dtype=np.float64)
    np.add.at(within, (lo[same], hi[same]), scaled.values[same])
    np.add.at(between, (lo[~same], hi[~same]), scaled.values[~same])
    # mirror the strict upper triangle so F(m, n) == F(n, m)
    within = within + np.triu(within, 1).T
    between = between + np.triu(between, 1).T
    return FrequencyMatrices(within=within, between=between)


def polarization_component(matrix: np.ndarray) -> float:
    """Score one frequency matrix: 1 when no mass crosses opinions, reaching 0
    once cross-opinion mass is at least half of the total. Empty matrix
    scores 0 (its weight in the combined score is simultaneously 0)."""
    if (matrix < 0).any():
        raise ValueError("frequency matrix has negative entries")
    k = matrix.shape[0]
    cross = float(matrix[np.triu_indices(k, 1)].sum())
    total = cross + float(np.trace(matrix))
    if total == 0.0:
        return 0.0
    ratio = cross / total
    capped = ratio if ratio < 0.5 else 0.5
    return 1.0 - 2.0 * capped


def combine(matrices: FrequencyMatrices, p_within: float, p_between: float) -> float:
    """Mass-weighted average of the two component scores."""
    s_w = matrices.within_sum
    s_b = matrices.between_sum
    if s_w + s_b == 0.0:
        raise ValueError("both frequency matrices are empty")
    return (s_w * p_within + s_b * p_between) / (s_w + s_b)


def score_partition(
    graph: LabeledGraph, scaled: ScaledWeights, partition: Partition
) -> tuple[float, float, float]:
    """(p_within, p_between, polarization) for one fixed partition."""
    matrices = accumulate(graph, scaled, partition)
    p_w = polarization_component(matrices.within)
    p_b = polarization_component(matrices.between)
    return p_w, p_b, combine(matrices, p_w, p_b)


@dataclass(frozen=True)
class PolarizationReport:
    """Per-run scores plus summary statistics over the seed schedule."""

    p_within_runs: tuple[float, ...]
    p_between_runs: tuple[float, ...]
    polarization_runs: tuple[float, ...]
    communities_per_run: tuple[int, ...]
    seed: int
    runs: int
    graph_nodes: int
    graph_edges: int
    num_opinions: int

    @property
    def p_within_mean(self) -> float:
        return _mean(self.p_within_runs)

    @property
    def p_within_std(self) -> float:
        return _std(self.p_within_runs)

    @property
    def p_between_mean(self) -> float:
        return _mean(self.p_between_runs)

    @property
    def p_between_std(self) -> float:
        return _std(self.p_between_runs)

    @property
    def polarization_mean(self) -> float:
        return _mean(self.polarization_runs)

    @property
    def polarization_std(self) -> float:
        return _std(self.polarization_runs)

    @property
    def polarization_min(self) -> float:
        return min(self.polarization_runs)

    @property
    def polarization_max(self) -> float:
        return max(self.polarization_runs)

    @property
    def communities_mean(self) -> float:
        return _mean(self.communities_per_run)

    def to_dict(self) -> dict:
        """Report fields in fixed serialization order."""
        return {
            "graph": {"nodes": self.graph_nodes, "edges": self.graph_edges},
            "num_opinions": self.num_opinions,
            "runs": self.runs,
            "seed": self.seed,
            "p_within": {"mean": self.p_within_mean, "std": self.p_within_std},
            "p_between": {"mean": self.p_between_mean, "std": self.p_between_std},
            "polarization": {
                "mean": self.polarization_mean,
                "std": self.polarization_std,
                "min": self.polarization_min,
                "max": self.polarization_max,
            },
            "communities": {"mean": self.communities_mean},
        }


def _mean(values) -> float:
    # fsum keeps the result independent of accumulation order, which keeps
    # reports byte-identical across worker counts
    return math.fsum(values) / len(values)


def _std(values) -> float:
    mean = _mean(values)
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / len(values))


_WORKER: tuple[LabeledGraph, np.ndarray, LouvainConfig] | None = None


def _init_worker(graph: LabeledGraph, values: np.ndarray, config: LouvainConfig):
    global _WORKER
    _WORKER = (graph, values, config)


def _run_index(run: int) -> tuple[float, float, float, int]:
    graph, values, config = _WORKER
    return _single_run(graph, ScaledWeights(values), config, run)


def _single_run(
    graph: LabeledGraph, scaled: ScaledWeights, config: LouvainConfig, run: int
) -> tuple[float, float, float, int]:
    partition = louvain(graph, replace(config, seed=config.seed + run))
    p_w, p_b, p = score_partition(graph, scaled, partition)
    return p_w, p_b, p, partition.k


def analyze(
    graph: LabeledGraph,
    config: LouvainConfig,
    runs: int = 100,
    threads: int = 1,
) -> PolarizationReport:
    """Run the full metric ``runs`` times with seeds config.seed + run index.

    Community detection is greedy and seed-dependent, so scores are averaged
    over the seed schedule. Results are identical for any ``threads`` value;
    workers only parallelize independent runs.
    """
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    counts = census(graph)
    scaled = scale_weights(graph, counts)

    if threads > 1 and runs > 1:
        graph.adjacency()  # build caches once, before shipping to workers
        graph.edge_arrays()
        graph.opinion_array()
        workers = min(threads, runs)
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_worker,
            initargs=(graph, scaled.values, config),
        ) as pool:
            results = list(pool.map(_run_index, range(runs), chunksize=8))
    else:
        results = [_single_run(graph, scaled, config, r) for r in range(runs)]

    return PolarizationReport(
        p_within_runs=tuple(r[0] for r in results),
        p_between_runs=tuple(r[1] for r in results),
        polarization_runs=tuple(r[2] for r in results),
        communities_per_run=tuple(r[3] for r in results),
        seed=config.seed,
        runs=runs,
        graph_nodes=graph.node_count,
        graph_edges=graph.edge_count,
        num_opinions=graph.num_opinions,
    )
