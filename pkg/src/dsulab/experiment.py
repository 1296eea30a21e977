"""Benchmark harness: experiment records, runners, and CSV emission.

An :class:`ExperimentSpec` pins one benchmark (connected components or
spanning forest) on one graph for one structure configuration across a list
of thread counts. ``run_experiment`` materializes the graph once, replays the
same prebuilt operation stream for every repetition at a given thread count,
and emits one CSV row per measured repetition.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .concurrent import ConcurrentDsu, ConfigError, SyncMode, Variant
from .core import Compaction, Linking
from .graphs import Graph, gen_erdos_renyi, gen_high_contention, load_dimacs, load_edge_list
from .workloads import build_op_stream, run_boruvka, run_cc

CSV_HEADER = ["benchmark", "graph", "n", "m", "variant", "compaction", "sync",
              "ipc", "er", "threads", "iter", "millis", "failed_cas",
              "find_steps", "ipc_hits", "er_terms", "components", "mst_weight"]

BENCHMARKS = ("cc", "mst")


def parse_graph_spec(spec: str, weighted: bool = False) -> Graph:
    """Materialize ``er:n:m[:seed]`` / ``hc:n:m[:seed]`` or load a file.

    File paths holding ``.gr`` (optionally ``.gz``) are read as DIMACS,
    anything else as a whitespace edge list.
    """
    kind = spec.split(":", 1)[0]
    if kind in ("er", "hc"):
        parts = spec.split(":")
        if len(parts) not in (3, 4):
            raise ConfigError(f"generator spec {spec!r} is not kind:n:m[:seed]")
        try:
            n, m = int(parts[1]), int(parts[2])
            seed = int(parts[3]) if len(parts) == 4 else 0
        except ValueError:
            raise ConfigError(f"generator spec {spec!r} has non-integer fields") from None
        gen = gen_erdos_renyi if kind == "er" else gen_high_contention
        return gen(n, m, seed=seed, weighted=weighted)
    base = spec[:-3] if spec.endswith(".gz") else spec
    if base.endswith(".gr"):
        return load_dimacs(spec)
    return load_edge_list(spec)


@dataclass
class ExperimentSpec:
    """One benchmark configuration; ``threads`` fans out into several runs."""

    benchmark: str
    graph: str
    variant: Variant = Variant.CAS_RANK
    compaction: Optional[Compaction] = None
    sync: SyncMode = SyncMode.CAS
    ipc: bool = False
    linking: Optional[Linking] = None
    threads: Tuple[int, ...] = (1,)
    sameset_prob: float = 0.5
    warmup_iters: int = 2
    measured_iters: int = 5
    seed: int = 0
    mst_threshold: Optional[int] = None

    def effective_compaction(self) -> Compaction:
        if self.compaction is not None:
            return self.compaction
        return Compaction.SPLITTING

    def validate(self) -> None:
        if self.benchmark not in BENCHMARKS:
            raise ConfigError(f"unknown benchmark {self.benchmark!r}")
        if not self.threads or any(t < 1 for t in self.threads):
            raise ConfigError("thread counts must be positive")
        if self.warmup_iters < 0 or self.measured_iters < 1:
            raise ConfigError("need non-negative warmup and at least one measured run")
        if not 0.0 <= self.sameset_prob <= 1.0:
            raise ConfigError("sameset_prob must be within [0, 1]")
        self.make_dsu(1)  # surfaces invalid strategy combinations early

    def make_dsu(self, n: int) -> ConcurrentDsu:
        return ConcurrentDsu(n, variant=self.variant,
                             compaction=self.effective_compaction(),
                             sync=self.sync, ipc=self.ipc,
                             linking=self.linking, seed=self.seed)

    def load_graph(self) -> Graph:
        return parse_graph_spec(self.graph, weighted=self.benchmark == "mst")


def run_experiment(spec: ExperimentSpec, graph: Optional[Graph] = None) -> List[dict]:
    """Execute the spec; one row dict (CSV_HEADER keys) per measured run."""
    spec.validate()
    g = graph if graph is not None else spec.load_graph()
    dsu_probe = spec.make_dsu(1)
    er_flag = 1 if spec.variant is Variant.EARLY_RECOGNITION else 0
    rows: List[dict] = []
    for t in spec.threads:
        stream = None
        if spec.benchmark == "cc":
            stream = build_op_stream(g, t, spec.sameset_prob, spec.seed)
        for rep in range(-spec.warmup_iters, spec.measured_iters):
            dsu = spec.make_dsu(g.n)
            components = ""
            mst_weight = ""
            if spec.benchmark == "cc":
                stats = run_cc(g, dsu, threads=t, stream=stream)
                components = dsu.count_components()
            else:
                threshold_fn = None
                if spec.mst_threshold is not None:
                    fixed = spec.mst_threshold

                    def threshold_fn(_n, _fixed=fixed):
                        return _fixed
                result = run_boruvka(g, dsu, threads=t, threshold_fn=threshold_fn)
                stats = result.stats
                mst_weight = result.weight
            if rep < 0:
                continue
            rows.append({
                "benchmark": spec.benchmark,
                "graph": spec.graph,
                "n": g.n,
                "m": g.m,
                "variant": dsu_probe.variant.value,
                "compaction": dsu_probe.compaction.value,
                "sync": spec.sync.value if dsu_probe.slots is not None else "",
                "ipc": 1 if spec.ipc else 0,
                "er": er_flag,
                "threads": t,
                "iter": rep,
                "millis": round(stats.millis, 3),
                "failed_cas": stats.failed_cas,
                "find_steps": stats.find_steps,
                "ipc_hits": stats.ipc_hits,
                "er_terms": stats.er_terminations,
                "components": components,
                "mst_weight": mst_weight,
            })
    return rows


def write_csv(rows: Sequence[dict], fh) -> None:
    """Emit rows with the stable header; missing fields become empty."""
    writer = csv.DictWriter(fh, fieldnames=CSV_HEADER, restval="",
                            lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def median_millis(rows: Sequence[dict]) -> dict:
    """Median wall time per thread count, for quick summaries."""
    by_threads: dict = {}
    for row in rows:
        by_threads.setdefault(row["threads"], []).append(row["millis"])
    return {t: statistics.median(v) for t, v in sorted(by_threads.items())}


def enumerate_matrix(benchmark: str, graph: str, threads: Tuple[int, ...],
                     seed: int = 0, warmup_iters: int = 1,
                     measured_iters: int = 1) -> List[ExperimentSpec]:
    """Every valid strategy combination as a runnable spec.

    Both CAS linkers cross compaction, write discipline, and the parent
    check; early recognition crosses its two compactions, the write
    disciplines, and the parent check; rem crosses the write disciplines;
    the coarse lock crosses linking and compaction.
    """
    specs: List[ExperimentSpec] = []

    def add(**kwargs):
        specs.append(ExperimentSpec(benchmark=benchmark, graph=graph,
                                    threads=threads, seed=seed,
                                    warmup_iters=warmup_iters,
                                    measured_iters=measured_iters, **kwargs))

    for variant in (Variant.CAS_RANK, Variant.CAS_PSEUDO_RANDOM):
        for compaction in (Compaction.COMPRESSION, Compaction.SPLITTING,
                           Compaction.HALVING):
            for sync in SyncMode:
                for ipc in (False, True):
                    add(variant=variant, compaction=compaction, sync=sync,
                        ipc=ipc)
    for compaction in (Compaction.SPLITTING, Compaction.HALVING):
        for sync in SyncMode:
            for ipc in (False, True):
                add(variant=Variant.EARLY_RECOGNITION, compaction=compaction,
                    sync=sync, ipc=ipc)
    for sync in SyncMode:
        add(variant=Variant.REM, sync=sync)
    for linking in Linking:
        for compaction in Compaction:
            add(variant=Variant.COARSE_LOCK, linking=linking,
                compaction=compaction)
    return specs
