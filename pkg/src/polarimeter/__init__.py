"""Polarization scoring for weighted networks with multi-opinion node labels.

The score splits edge weight into within-community and between-community
frequency matrices over opinion pairs, after rescaling each edge by the
population share of its endpoint opinions, and combines the two views into
a single value in [0, 1]. Community structure comes from seeded modularity
optimization, and scores are averaged over a seed schedule because the
optimizer is greedy.
"""

from __future__ import annotations

from .community import LouvainConfig, Partition, louvain, modularity
from .errors import InputError
from .graph import LabeledGraph, OpinionCensus, census
from .io import (
    load_graph,
    load_karate,
    report_csv,
    report_json,
    save_report,
    sweep_csv,
    write_edge_list,
    write_labels,
    write_partition,
    write_sweep_csv,
)
from .metric import (
    FrequencyMatrices,
    PolarizationReport,
    ScaledWeights,
    accumulate,
    analyze,
    combine,
    polarization_component,
    scale_weights,
    score_partition,
)
from .stance import (
    OPINION_NAMES,
    STANCES,
    StanceRecord,
    UserStanceCounts,
    build_retweet_network,
    read_stance_records,
    score_users,
    stance_counts,
)
from .synthetic import (
    SbmConfig,
    SweepCell,
    SyntheticLabelConfig,
    generate_sbm,
    relabel,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "FrequencyMatrices",
    "InputError",
    "LabeledGraph",
    "LouvainConfig",
    "OPINION_NAMES",
    "OpinionCensus",
    "Partition",
    "PolarizationReport",
    "STANCES",
    "SbmConfig",
    "ScaledWeights",
    "StanceRecord",
    "SweepCell",
    "SyntheticLabelConfig",
    "UserStanceCounts",
    "accumulate",
    "analyze",
    "build_retweet_network",
    "census",
    "combine",
    "generate_sbm",
    "load_graph",
    "load_karate",
    "louvain",
    "modularity",
    "polarization_component",
    "read_stance_records",
    "relabel",
    "report_csv",
    "report_json",
    "save_report",
    "scale_weights",
    "score_partition",
    "score_users",
    "stance_counts",
    "sweep",
    "sweep_csv",
    "write_edge_list",
    "write_labels",
    "write_partition",
    "write_sweep_csv",
]
