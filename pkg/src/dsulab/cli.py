"""Command-line front end.

Subcommands: ``gen`` materializes a generator spec into an edge-list file,
``cc`` and ``mst`` run one benchmark configuration and emit CSV, ``matrix``
sweeps every valid strategy combination over one graph, and ``verify`` runs
a reduced-scale correctness battery (oracle comparisons, structural audits,
interleaving stress) and exits non-zero on any failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

import numpy as np

from . import verify as vf
from .concurrent import ConcurrentDsu, ConfigError, SyncMode, Variant
from .core import Compaction, Linking, PackedSlot, PriorityFn, SeqDsu
from .experiment import (ExperimentSpec, enumerate_matrix, median_millis,
                         parse_graph_spec, run_experiment, write_csv)
from .graphs import gen_erdos_renyi, write_edge_list
from .workloads import run_boruvka, run_cc

_VARIANTS = {v.value: v for v in Variant}
_COMPACTIONS = {c.value: c for c in Compaction}
_SYNCS = {s.value: s for s in SyncMode}
_LINKINGS = {l.value: l for l in Linking}


def _parse_threads(text: str) -> tuple:
    try:
        values = tuple(int(p) for p in text.split(",") if p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad thread list {text!r}") from None
    if not values or any(t < 1 for t in values):
        raise argparse.ArgumentTypeError("thread counts must be positive")
    return values


def _add_structure_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", choices=sorted(_VARIANTS), default=None,
                   help="algorithm family (default cas-rank)")
    p.add_argument("--compaction", choices=sorted(_COMPACTIONS), default=None,
                   help="path shortening (default splitting)")
    p.add_argument("--sync", choices=sorted(_SYNCS), default="cas",
                   help="write discipline for compaction stores")
    p.add_argument("--ipc", action="store_true",
                   help="enable the immediate-parent check")
    p.add_argument("--er", action="store_true",
                   help="use early recognition (implies the pseudo-random linker)")
    p.add_argument("--linking", choices=sorted(_LINKINGS), default=None,
                   help="inner heuristic for the coarse-lock variant")
    p.add_argument("--seed", type=int, default=0)


def _add_run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True,
                   help="er:n:m[:seed], hc:n:m[:seed], or a file path")
    _add_structure_args(p)
    p.add_argument("--threads", type=_parse_threads, default=(1,),
                   help="comma-separated thread counts, e.g. 1,2,4,8")
    p.add_argument("--warmup", type=int, default=2)
    p.add_argument("--iters", type=int, default=5)
    p.add_argument("--csv", default=None,
                   help="write rows to this file (default stdout)")


def _resolve_variant(args) -> Variant:
    if args.er:
        if args.variant in (None, "cas-pseudo-random", "early-recognition"):
            return Variant.EARLY_RECOGNITION
        raise ConfigError(
            "early recognition extends the pseudo-random linker; "
            f"it cannot be combined with {args.variant}")
    if args.variant is None:
        return Variant.CAS_RANK
    return _VARIANTS[args.variant]


def _spec_from_args(args, benchmark: str) -> ExperimentSpec:
    return ExperimentSpec(
        benchmark=benchmark,
        graph=args.graph,
        variant=_resolve_variant(args),
        compaction=_COMPACTIONS[args.compaction] if args.compaction else None,
        sync=_SYNCS[args.sync],
        ipc=args.ipc,
        linking=_LINKINGS[args.linking] if args.linking else None,
        threads=args.threads,
        sameset_prob=getattr(args, "sameset_prob", 0.5),
        warmup_iters=args.warmup,
        measured_iters=args.iters,
        seed=args.seed,
        mst_threshold=getattr(args, "threshold", None),
    )


def _emit(rows: List[dict], csv_path: Optional[str]) -> None:
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            write_csv(rows, fh)
        print(f"wrote {len(rows)} rows to {csv_path}", file=sys.stderr)
    else:
        write_csv(rows, sys.stdout)


def cmd_gen(args) -> int:
    if not (args.spec.startswith("er:") or args.spec.startswith("hc:")):
        raise ConfigError("gen expects a generator spec, not a file path")
    g = parse_graph_spec(args.spec, weighted=args.weighted)
    write_edge_list(g, args.out)
    print(f"{g.name}: n={g.n} m={g.m} -> {args.out}", file=sys.stderr)
    return 0


def cmd_run(args, benchmark: str) -> int:
    spec = _spec_from_args(args, benchmark)
    rows = run_experiment(spec)
    _emit(rows, args.csv)
    for t, med in median_millis(rows).items():
        print(f"threads={t} median={med:.3f} ms", file=sys.stderr)
    return 0


def cmd_matrix(args) -> int:
    specs = enumerate_matrix(args.benchmark, args.graph, args.threads,
                             seed=args.seed, warmup_iters=args.warmup,
                             measured_iters=args.iters)
    g = specs[0].load_graph()
    rows: List[dict] = []
    for i, spec in enumerate(specs, start=1):
        print(f"[{i}/{len(specs)}] {spec.variant.value}"
              f"/{spec.effective_compaction().value}/{spec.sync.value}"
              f" ipc={int(spec.ipc)}"
              + (f" linking={spec.linking.value}" if spec.linking else ""),
              file=sys.stderr)
        rows.extend(run_experiment(spec, graph=g))
    _emit(rows, args.csv)
    return 0


# -- verify battery -------------------------------------------------------------


class _Battery:
    def __init__(self) -> None:
        self.passed = 0
        self.failed = 0

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        if ok:
            self.passed += 1
            print(f"PASS {name}")
        else:
            self.failed += 1
            suffix = f": {detail}" if detail else ""
            print(f"FAIL {name}{suffix}")


def _verify_packing(bat: _Battery) -> None:
    ok = True
    detail = ""
    for value in list(range(1024)) + [2 ** 62, 2 ** 63 - 1]:
        for slot, root in ((PackedSlot.for_parent(value), False),
                           (PackedSlot.for_priority(value), True)):
            if slot.is_root != root or (slot.priority if root else slot.parent) != value:
                ok = False
                detail = f"value {value} round-trips wrong"
    try:
        SeqDsu(2 ** 63)
        ok = False
        detail = "oversized element count accepted"
    except ValueError:
        pass
    bat.check("packing round-trip and bounds", ok, detail)


def _verify_priorities(bat: _Battery, seed: int) -> None:
    ok = True
    detail = ""
    rng = np.random.default_rng(seed)
    for n in (1, 2, 7, 97, 512):
        for _ in range(10):
            fn = PriorityFn.generate(n, seed=int(rng.integers(1 << 31)))
            if sorted(fn.table()) != list(range(n)):
                ok = False
                detail = f"not a bijection for n={n}"
    try:
        PriorityFn(n=6, shift=0, prime=3)
        ok = False
        detail = "shared factor accepted"
    except ValueError:
        pass
    bat.check("pseudo-random priorities are bijections", ok, detail)


def _verify_sequential(bat: _Battery, seed: int) -> None:
    ok = True
    detail = ""
    rng = np.random.default_rng(seed)
    for linking in Linking:
        for compaction in Compaction:
            n = 128
            dsu = SeqDsu(n, linking=linking, compaction=compaction, seed=seed)
            oracle = vf.OraclePartition(n)
            for _ in range(2000):
                u = int(rng.integers(n))
                v = int(rng.integers(n))
                if rng.random() < 0.4:
                    if dsu.same_set(u, v) != oracle.same_set(u, v):
                        ok = False
                        detail = f"{linking.value}/{compaction.value} query diverged"
                else:
                    if dsu.union(u, v) != oracle.union(u, v):
                        ok = False
                        detail = f"{linking.value}/{compaction.value} union diverged"
            if not vf.partitions_equal(dsu.labels(), oracle.labels):
                ok = False
                detail = f"{linking.value}/{compaction.value} partition diverged"
            if not vf.quiescent_audit(dsu, oracle.labels).ok:
                ok = False
                detail = f"{linking.value}/{compaction.value} audit failed"
    bat.check("sequential strategies match the oracle", ok, detail)


def _verify_concurrent(bat: _Battery, seed: int, quick: bool) -> None:
    n = 1024
    pairs_per_run = 20000
    seeds = (seed,) if quick else (seed, seed + 1)
    thread_counts = (2,) if quick else (2, 4)
    for pause_mode in (False, True):
        ok = True
        detail = ""
        for s in seeds:
            rng = np.random.default_rng(s)
            pairs = list(zip(rng.integers(0, n, pairs_per_run).tolist(),
                             rng.integers(0, n, pairs_per_run).tolist()))
            expected = vf.OraclePartition.from_pairs(n, pairs).labels
            for combo in vf.acceptance_matrix():
                for threads in thread_counts:
                    dsu = ConcurrentDsu(n, seed=s, **combo)
                    if pause_mode and dsu.slots is not None:
                        dsu.pause = vf.make_yield_pause(seed=s)
                    vf.run_union_stress(dsu, pairs, threads)
                    report = vf.quiescent_audit(dsu, expected)
                    if not report.ok:
                        ok = False
                        detail = f"{vf.describe_combo(combo)} threads={threads}: {report}"
        name = ("concurrent matrix with injected yields" if pause_mode
                else "concurrent matrix matches the oracle")
        bat.check(name, ok, detail)


def _verify_mst(bat: _Battery, seed: int, quick: bool) -> None:
    ok = True
    detail = ""
    graphs = 2 if quick else 5
    for i in range(graphs):
        g = gen_erdos_renyi(500, 2000, seed=seed + i, weighted=True)
        want = vf.oracle_mst_weight(g)
        for threads in (1, 4):
            dsu = ConcurrentDsu(g.n)
            got = run_boruvka(g, dsu, threads=threads, threshold_fn=lambda n: n // 8)
            if got.weight != want:
                ok = False
                detail = f"seed {seed + i} threads={threads}: {got.weight} != {want}"
    bat.check("spanning forest matches the sorted-edge oracle", ok, detail)


def _verify_cc(bat: _Battery, seed: int) -> None:
    from .graphs import Graph
    from .workloads import op_kinds

    g = gen_erdos_renyi(20000, 50000, seed=seed)
    # Queries do not merge anything, so the reference components come from
    # the union-edge subgraph of the same stream.
    kinds = op_kinds(g.m, 0.5, seed)
    sub = Graph(n=g.n, u=g.u[~kinds], v=g.v[~kinds], name="union-subset")
    count, labels = vf.oracle_components(sub)
    dsu = ConcurrentDsu(g.n)
    stats = run_cc(g, dsu, threads=4, seed=seed)
    ok = dsu.count_components() == count
    ok = ok and vf.partitions_equal(dsu.labels(), labels)
    detail = f"components {dsu.count_components()} vs {count}"
    rate = stats.failed_cas / stats.cas_attempts if stats.cas_attempts else 0.0
    bat.check("components benchmark matches breadth-first search", ok, detail)
    bat.check("failed compare-and-set rate is small",
              rate < 0.05, f"rate {rate:.4%}")


def cmd_verify(args) -> int:
    bat = _Battery()
    _verify_packing(bat)
    _verify_priorities(bat, args.seed)
    _verify_sequential(bat, args.seed)
    _verify_concurrent(bat, args.seed, args.quick)
    _verify_mst(bat, args.seed, args.quick)
    _verify_cc(bat, args.seed)
    print(f"SUMMARY passed={bat.passed} failed={bat.failed}")
    return 0 if bat.failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsulab",
        description="Concurrent disjoint-set benchmarks and self-checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="materialize a generator spec to a file")
    p.add_argument("spec", help="er:n:m[:seed] or hc:n:m[:seed]")
    p.add_argument("out", help="output path (.gz compresses)")
    p.add_argument("--weighted", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cc", help="connected-components benchmark")
    _add_run_args(p)
    p.add_argument("--sameset-prob", dest="sameset_prob", type=float, default=0.5)
    p.set_defaults(func=lambda a: cmd_run(a, "cc"))

    p = sub.add_parser("mst", help="minimum-spanning-forest benchmark")
    _add_run_args(p)
    p.add_argument("--threshold", type=int, default=None,
                   help="fixed component count for the sequential handover")
    p.set_defaults(func=lambda a: cmd_run(a, "mst"))

    p = sub.add_parser("matrix", help="sweep every valid strategy combination")
    p.add_argument("--benchmark", choices=("cc", "mst"), default="cc")
    p.add_argument("--graph", required=True)
    p.add_argument("--threads", type=_parse_threads, default=(4,))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--warmup", type=int, default=1)
    p.add_argument("--iters", type=int, default=1)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("verify", help="reduced-scale correctness battery")
    p.add_argument("--quick", action="store_true", help="fewer seeds and threads")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
