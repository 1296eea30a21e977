"""Disjoint-set union structures, sequential and concurrent, with benchmarks.

The package splits into layers: :mod:`dsulab.core` holds the packed-slot
format and the sequential structure, :mod:`dsulab.concurrent` the
thread-shareable variants over :mod:`dsulab.atomics`, :mod:`dsulab.graphs`
and :mod:`dsulab.workloads` the benchmark inputs and drivers,
:mod:`dsulab.verify` the independent oracles and audits, and
:mod:`dsulab.experiment` plus :mod:`dsulab.cli` the measurement harness.
"""

from .atomics import AtomicWordArray
from .concurrent import ConcurrentDsu, ConfigError, SyncMode, Variant
from .core import (BIG_PRIME, Compaction, Linking, MAX_FIELD, PackedSlot,
                   PriorityFn, ROOT_FLAG, SeqDsu, WORD_BITS, encode_parent,
                   encode_priority, is_prime_u64, next_prime_coprime)
from .experiment import (CSV_HEADER, ExperimentSpec, enumerate_matrix,
                         parse_graph_spec, run_experiment, write_csv)
from .graphs import (Graph, GraphFormatError, MAX_GEN_WEIGHT, gen_erdos_renyi,
                     gen_high_contention, load_dimacs, load_edge_list,
                     write_edge_list)
from .stats import OpCounters, RunStats
from .verify import (AuditReport, LinkRecordingArray, OraclePartition,
                     acceptance_matrix, canonical_labels, make_yield_pause,
                     oracle_components, oracle_mst_weight, partitions_equal,
                     quiescent_audit, run_union_stress)
from .workloads import (MstResult, OpStream, SENTINEL, build_op_stream,
                        default_threshold, op_kinds, run_boruvka, run_cc,
                        update_if_shorter)

__version__ = "0.1.0"

__all__ = [
    "AtomicWordArray",
    "AuditReport",
    "BIG_PRIME",
    "CSV_HEADER",
    "Compaction",
    "ConcurrentDsu",
    "ConfigError",
    "ExperimentSpec",
    "Graph",
    "GraphFormatError",
    "Linking",
    "LinkRecordingArray",
    "MAX_FIELD",
    "MAX_GEN_WEIGHT",
    "MstResult",
    "OpCounters",
    "OpStream",
    "OraclePartition",
    "PackedSlot",
    "PriorityFn",
    "ROOT_FLAG",
    "RunStats",
    "SENTINEL",
    "SeqDsu",
    "SyncMode",
    "Variant",
    "WORD_BITS",
    "acceptance_matrix",
    "build_op_stream",
    "canonical_labels",
    "default_threshold",
    "encode_parent",
    "encode_priority",
    "enumerate_matrix",
    "gen_erdos_renyi",
    "gen_high_contention",
    "is_prime_u64",
    "load_dimacs",
    "load_edge_list",
    "make_yield_pause",
    "next_prime_coprime",
    "op_kinds",
    "oracle_components",
    "oracle_mst_weight",
    "parse_graph_spec",
    "partitions_equal",
    "quiescent_audit",
    "run_boruvka",
    "run_cc",
    "run_experiment",
    "run_union_stress",
    "update_if_shorter",
    "write_csv",
    "write_edge_list",
]
