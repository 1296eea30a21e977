"""Benchmark workloads driving a set structure over a graph.

Connected components replays the edge list as a seeded, shuffled stream of
union/same_set operations dealt into per-thread chunks. Minimum spanning
forest runs two-phase rounds: phase one scans the surviving edges, discards
those inside one component, and lowers a per-root candidate slot holding the
lightest incident edge; phase two scans the candidate slots and unions the
chosen edges. Rounds repeat until the component count falls to a threshold,
then a sequential pass over the survivors finishes the forest.

Candidate slots pack ``(weight << 32) | edge_index`` so numeric comparison
orders by weight with the edge index as tiebreak; all-ones means empty. With
that total order the outcome is deterministic for any thread count.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from .atomics import AtomicWordArray
from .graphs import Graph
from .stats import OpCounters, RunStats

#: Empty candidate slot; compares greater than any packed edge.
SENTINEL = (1 << 64) - 1

_EDGE_MASK = (1 << 32) - 1
_MAX_PACK_WEIGHT = (1 << 31) - 1


@dataclass
class OpStream:
    """Per-thread operation chunks: parallel (u, v, is_query) lists."""

    chunks: list
    sameset_prob: float
    seed: int

    @property
    def threads(self) -> int:
        return len(self.chunks)

    @property
    def total_ops(self) -> int:
        return sum(len(c[0]) for c in self.chunks)


def op_kinds(m: int, sameset_prob: float, seed: int) -> np.ndarray:
    """Operation kind per original edge index: True becomes a same_set query.

    A pure function of (index, seed), independent of the shuffle and the
    thread count, so the union-edge subset of a stream is reproducible.
    """
    if not 0.0 <= sameset_prob <= 1.0:
        raise ValueError("sameset_prob must be within [0, 1]")
    return np.random.default_rng([seed, 1]).random(m) < sameset_prob


def build_op_stream(g: Graph, threads: int, sameset_prob: float = 0.5,
                    seed: int = 0) -> OpStream:
    """Shuffle g's edges and deal them into contiguous per-thread chunks.

    The operation kind is a pure function of the original edge index and the
    seed, so an edge stays the same operation wherever the shuffle lands it.
    """
    if threads < 1:
        raise ValueError("thread count must be positive")
    m = g.m
    perm = np.random.default_rng([seed, 0]).permutation(m)
    kind = op_kinds(m, sameset_prob, seed)
    us = g.u[perm]
    vs = g.v[perm]
    ks = kind[perm]
    chunks = []
    for idx in np.array_split(np.arange(m), threads):
        chunks.append((us[idx].tolist(), vs[idx].tolist(), ks[idx].tolist()))
    return OpStream(chunks=chunks, sameset_prob=sameset_prob, seed=seed)


def _check_dsu(g: Graph, dsu, threads: int) -> None:
    if dsu.n != g.n:
        raise ValueError(f"structure covers {dsu.n} elements, graph has {g.n}")
    if threads > 1 and not getattr(dsu, "thread_safe", False):
        raise ValueError("multi-threaded runs need a thread-safe structure")
    if threads < 1:
        raise ValueError("thread count must be positive")


def run_cc(g: Graph, dsu, threads: int = 1, sameset_prob: float = 0.5,
           seed: int = 0, stream: Optional[OpStream] = None) -> RunStats:
    """Drive the union/same_set mix over g. Timing excludes stream setup.

    Pass a prebuilt ``stream`` to reuse one shuffle across repetitions; it
    must have been built for the same thread count.
    """
    _check_dsu(g, dsu, threads)
    if stream is None:
        stream = build_op_stream(g, threads, sameset_prob, seed)
    elif stream.threads != threads:
        raise ValueError(f"stream built for {stream.threads} threads, not {threads}")
    counters = [OpCounters() for _ in range(threads)]

    def work(chunk, ctr):
        union = dsu.union
        same_set = dsu.same_set
        us, vs, ks = chunk
        for u, v, k in zip(us, vs, ks):
            if k:
                same_set(u, v, ctr)
            else:
                union(u, v, ctr)

    if threads == 1:
        t0 = time.perf_counter()
        work(stream.chunks[0], counters[0])
        elapsed = time.perf_counter() - t0
    else:
        workers = [threading.Thread(target=work, args=(chunk, ctr))
                   for chunk, ctr in zip(stream.chunks, counters)]
        t0 = time.perf_counter()
        for wk in workers:
            wk.start()
        for wk in workers:
            wk.join()
        elapsed = time.perf_counter() - t0
    return RunStats.merge(elapsed * 1000.0, counters)


def update_if_shorter(slots: AtomicWordArray, index: int, packed: int,
                      stats: Optional[OpCounters] = None) -> bool:
    """Lower a candidate slot to ``packed`` if it is an improvement.

    Retries the compare-and-set until the slot holds ``packed`` or something
    at least as small. True iff this call installed its value.
    """
    values = slots.values
    while True:
        cur = values[index]
        if packed >= cur:
            return False
        if stats is not None:
            stats.cas_attempts += 1
        if slots.cas(index, cur, packed):
            return True
        if stats is not None:
            stats.failed_cas += 1


def default_threshold(n: int) -> int:
    """Component count at which the parallel rounds hand over."""
    return max(1024, n // 64)


@dataclass
class MstResult:
    """Minimum spanning forest: total weight, edge indices, run stats."""

    weight: int
    edges: List[int]
    stats: RunStats


def run_boruvka(g: Graph, dsu, threads: int = 1,
                threshold_fn: Optional[Callable[[int], int]] = None) -> MstResult:
    """Minimum spanning forest of g using the given set structure.

    ``stats.millis`` covers the parallel rounds only; the sequential
    completion below the component threshold is excluded. The result is
    deterministic for a given graph regardless of thread count.
    """
    if g.w is None:
        raise ValueError("spanning forest needs edge weights")
    _check_dsu(g, dsu, threads)
    if g.m and int(g.w.max()) > _MAX_PACK_WEIGHT:
        raise ValueError(f"weights above {_MAX_PACK_WEIGHT} do not pack")
    if g.m > _EDGE_MASK:
        raise ValueError("more edges than the packed index field can hold")
    threshold = (threshold_fn or default_threshold)(g.n)

    us = g.u.tolist()
    vs = g.v.tolist()
    ws = g.w.tolist()
    n = g.n
    slots = AtomicWordArray([SENTINEL] * n)

    if getattr(dsu, "thread_safe", False):
        cfind = dsu._find

        def root_of(x, ctr):
            return cfind(x, ctr)[0]
    else:
        root_of = dsu._find

    def phase_candidates(chunk, ctr, survivors):
        for i in chunk:
            ru = root_of(us[i], ctr)
            rv = root_of(vs[i], ctr)
            if ru == rv:
                continue
            survivors.append(i)
            packed = (ws[i] << 32) | i
            update_if_shorter(slots, ru, packed, ctr)
            update_if_shorter(slots, rv, packed, ctr)

    def phase_link(lo, hi, ctr, added):
        union = dsu.union
        vals = slots.values
        for x in range(lo, hi):
            word = vals[x]
            if word != SENTINEL:
                i = word & _EDGE_MASK
                if union(us[i], vs[i], ctr):
                    added.append(i)

    def run_phase(target, arg_lists):
        if threads == 1:
            target(*arg_lists[0])
            return
        workers = [threading.Thread(target=target, args=args)
                   for args in arg_lists]
        for wk in workers:
            wk.start()
        for wk in workers:
            wk.join()

    counters = [OpCounters() for _ in range(threads)]
    splits = np.linspace(0, n, threads + 1).astype(int).tolist()
    chunks = [idx.tolist() for idx in np.array_split(np.arange(g.m), threads)]
    components = dsu.count_components()
    mst_edges: List[int] = []
    weight = 0

    t0 = time.perf_counter()
    while components > threshold:
        slots.fill(SENTINEL)
        next_chunks = [[] for _ in range(threads)]
        run_phase(phase_candidates,
                  [(chunks[t], counters[t], next_chunks[t]) for t in range(threads)])
        chunks = next_chunks
        added = [[] for _ in range(threads)]
        run_phase(phase_link,
                  [(splits[t], splits[t + 1], counters[t], added[t])
                   for t in range(threads)])
        linked = 0
        for part in added:
            for i in part:
                mst_edges.append(i)
                weight += ws[i]
                linked += 1
        components -= linked
        if linked == 0:
            break  # every surviving edge is internal to some component
    elapsed = time.perf_counter() - t0

    if components > 1:
        survivors = [i for chunk in chunks for i in chunk]
        if survivors:
            order = np.argsort(g.w[np.array(survivors, dtype=np.int64)],
                               kind="stable")
            ctr = counters[0]
            for k in order.tolist():
                i = survivors[k]
                if dsu.union(us[i], vs[i], ctr):
                    mst_edges.append(i)
                    weight += ws[i]
                    components -= 1
                    if components == 1:
                        break

    return MstResult(weight=weight, edges=mst_edges,
                     stats=RunStats.merge(elapsed * 1000.0, counters))
