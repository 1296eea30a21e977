"""Independent oracles, structural audits, and race-hunting helpers.

Everything here deliberately avoids the production data structures: the
partition oracle keeps explicit member lists, components come from plain
breadth-first search, and the spanning-forest weight from a sort plus the
same list-merging partition. Their agreement with the packed-slot structures
is what the test suite is built on.
"""

from __future__ import annotations

import random
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .atomics import AtomicWordArray
from .concurrent import ConcurrentDsu, SyncMode, Variant
from .core import Compaction, Linking, MAX_FIELD, ROOT_FLAG, SeqDsu
from .graphs import Graph
from .stats import OpCounters, RunStats


class OraclePartition:
    """Quadratic-flavor partition: a label per element plus member lists.

    ``union`` always relabels the second argument's list, no weighting, no
    paths, so its behavior shares nothing with the structures under test.
    """

    def __init__(self, n: int) -> None:
        self.labels = list(range(n))
        self.members = [[i] for i in range(n)]

    def union(self, u: int, v: int) -> bool:
        lu = self.labels[u]
        lv = self.labels[v]
        if lu == lv:
            return False
        labels = self.labels
        moved = self.members[lv]
        for x in moved:
            labels[x] = lu
        self.members[lu].extend(moved)
        self.members[lv] = []
        return True

    def same_set(self, u: int, v: int) -> bool:
        return self.labels[u] == self.labels[v]

    def count(self) -> int:
        return sum(1 for i, l in enumerate(self.labels) if i == l)

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "OraclePartition":
        part = cls(n)
        for u, v in pairs:
            part.union(u, v)
        return part


def canonical_labels(labels: Sequence[int]) -> List[int]:
    """Rewrite labels so each class is named by its first member."""
    seen: dict = {}
    return [seen.setdefault(l, i) for i, l in enumerate(labels)]


def partitions_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    return canonical_labels(a) == canonical_labels(b)


def oracle_components(g: Graph) -> tuple:
    """(count, labels) by breadth-first search over an adjacency list."""
    n = g.n
    adj: List[list] = [[] for _ in range(n)]
    for a, b in zip(g.u.tolist(), g.v.tolist()):
        if a != b:
            adj[a].append(b)
            adj[b].append(a)
    labels = [-1] * n
    count = 0
    for s in range(n):
        if labels[s] != -1:
            continue
        count += 1
        labels[s] = s
        queue = deque((s,))
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if labels[y] == -1:
                    labels[y] = s
                    queue.append(y)
    return count, labels


def oracle_mst_weight(g: Graph) -> int:
    """Spanning-forest weight: edges by (weight, index), list-merge partition."""
    if g.w is None:
        raise ValueError("weight oracle needs a weighted graph")
    order = np.argsort(g.w, kind="stable")
    part = OraclePartition(g.n)
    us = g.u.tolist()
    vs = g.v.tolist()
    ws = g.w.tolist()
    total = 0
    remaining = g.n - 1
    for i in order.tolist():
        if part.union(us[i], vs[i]):
            total += ws[i]
            remaining -= 1
            if remaining == 0:
                break
    return total


# -- structural audit ---------------------------------------------------------


@dataclass
class AuditReport:
    """Outcome of :func:`quiescent_audit`; empty violations means clean."""

    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "audit clean"
        head = "\n  ".join(self.violations[:12])
        more = len(self.violations) - 12
        tail = f"\n  ... and {more} more" if more > 0 else ""
        return f"audit found {len(self.violations)} violation(s):\n  {head}{tail}"


def _resolve_forest(snapshot, is_root, parent_of, n, violations):
    """Root of every element, flagging cycles and range errors."""
    state = bytearray(n)  # 0 new, 1 on the current path, 2 resolved
    root_of = [-1] * n
    for start in range(n):
        if state[start]:
            continue
        path = []
        x = start
        root = -1
        while True:
            if state[x] == 1:
                violations.append(f"cycle through element {x}")
                break
            if state[x] == 2:
                root = root_of[x]
                break
            state[x] = 1
            path.append(x)
            word = snapshot[x]
            if is_root(x, word):
                root = x
                break
            p = parent_of(x, word)
            if not 0 <= p < n:
                violations.append(f"element {x} points outside the array: {p}")
                break
            x = p
        for y in path:
            state[y] = 2
            root_of[y] = root
    return root_of


def quiescent_audit(dsu, expected_labels: Optional[Sequence[int]] = None) -> AuditReport:
    """Structural invariants of a quiesced structure, plus an optional
    partition comparison.

    Checks that every slot decodes, the parent graph is an acyclic forest,
    priorities strictly increase along parent links for the priority-ordered
    variants, stored sizes match tree sizes for size linking, and the rank
    bound holds for sequential rank linking without compaction. Run this only
    when no mutators are active.
    """
    report = AuditReport()
    violations = report.violations

    if isinstance(dsu, ConcurrentDsu) and dsu.variant is Variant.COARSE_LOCK:
        dsu = dsu._seq

    n = dsu.n
    snapshot = dsu.raw_slots()
    rem = isinstance(dsu, ConcurrentDsu) and dsu.variant is Variant.REM

    if rem:
        def is_root(x, word):
            return word == x

        def parent_of(x, word):
            return word
    else:
        def is_root(x, word):
            return word >= ROOT_FLAG

        def parent_of(x, word):
            return word

    for x, word in enumerate(snapshot):
        if not 0 <= word < (1 << 64):
            violations.append(f"slot {x} holds a non-word value {word}")
    root_of = _resolve_forest(snapshot, is_root, parent_of, n, violations)

    prio = None
    if rem:
        def prio(x):
            return x
    elif isinstance(dsu, SeqDsu) and dsu.linking is Linking.RANDOM:
        table = dsu.random_priorities

        def prio(x):
            return table[x]
    elif dsu.priority_fn is not None:
        prio = dsu.priority_fn
    if prio is not None:
        for x, word in enumerate(snapshot):
            if is_root(x, word):
                continue
            p = parent_of(x, word)
            if 0 <= p < n and not prio(x) < prio(p):
                violations.append(
                    f"priority does not increase along {x} -> {p}")

    linking = getattr(dsu, "linking", None)
    if linking is Linking.SIZE:
        sizes: dict = {}
        for r in root_of:
            if r >= 0:
                sizes[r] = sizes.get(r, 0) + 1
        for r, size in sizes.items():
            stored = snapshot[r] & MAX_FIELD
            if snapshot[r] >= ROOT_FLAG and stored != size:
                violations.append(
                    f"root {r} stores size {stored}, tree has {size}")
    if (isinstance(dsu, SeqDsu) and linking is Linking.RANK
            and dsu.compaction is Compaction.NONE):
        sizes = {}
        for r in root_of:
            if r >= 0:
                sizes[r] = sizes.get(r, 0) + 1
        for r, size in sizes.items():
            rank = snapshot[r] & MAX_FIELD
            if snapshot[r] >= ROOT_FLAG and (1 << rank) > size:
                violations.append(
                    f"root {r} has rank {rank} but only {size} elements")

    if expected_labels is not None:
        if min(root_of, default=0) < 0:
            violations.append("partition not comparable; unresolved elements")
        elif not partitions_equal(root_of, list(expected_labels)):
            violations.append("partition differs from the expected labels")

    return report


# -- race hunting -------------------------------------------------------------


class LinkRecordingArray(AtomicWordArray):
    """Word array that logs every successful compare-and-set transition.

    Appending under the interpreter lock keeps the log consistent; filter the
    ``(index, old, new)`` triples afterwards, for example for old values with
    the root flag set to see each element linked at most once.
    """

    def __init__(self, values, stripes: int = AtomicWordArray.DEFAULT_STRIPES) -> None:
        super().__init__(values, stripes)
        self.transitions: List[tuple] = []

    def compare_and_set(self, i: int, expected: int, new: int) -> bool:
        with self._locks[i & self._mask]:
            if self.values[i] != expected:
                return False
            self.values[i] = new
            self.transitions.append((i, expected, new))
            return True

    # Rebind: the base alias would bypass the override above.
    cas = compare_and_set


def make_yield_pause(prob: float = 1 / 32, seed: Optional[int] = None):
    """Hook for ``ConcurrentDsu(pause=...)``: random interpreter yields.

    ``time.sleep(0)`` releases the interpreter lock mid-operation, forcing
    interleavings the scheduler would rarely produce on its own.
    """
    rng = random.Random(seed)

    def pause(_label: str) -> None:
        if rng.random() < prob:
            time.sleep(0)

    return pause


def run_union_stress(dsu, pairs: Sequence, threads: int) -> RunStats:
    """Apply union over the (u, v) pairs, dealt round-robin to threads."""
    chunks = [pairs[t::threads] for t in range(threads)]
    counters = [OpCounters() for _ in range(threads)]

    def work(chunk, ctr):
        union = dsu.union
        for u, v in chunk:
            union(u, v, ctr)

    workers = [threading.Thread(target=work, args=(chunk, ctr))
               for chunk, ctr in zip(chunks, counters)]
    t0 = time.perf_counter()
    for wk in workers:
        wk.start()
    for wk in workers:
        wk.join()
    elapsed = time.perf_counter() - t0
    return RunStats.merge(elapsed * 1000.0, counters)


def acceptance_matrix() -> List[dict]:
    """Constructor keyword sets covering the full strategy grid.

    Both CAS linkers cross every compaction, write discipline, and parent
    check; the remaining variants appear once each in their reference
    configuration.
    """
    combos: List[dict] = []
    for variant in (Variant.CAS_RANK, Variant.CAS_PSEUDO_RANDOM):
        for compaction in (Compaction.COMPRESSION, Compaction.SPLITTING,
                           Compaction.HALVING):
            for sync in SyncMode:
                for ipc in (False, True):
                    combos.append(dict(variant=variant, compaction=compaction,
                                       sync=sync, ipc=ipc))
    combos.append(dict(variant=Variant.EARLY_RECOGNITION,
                       compaction=Compaction.SPLITTING, sync=SyncMode.CAS))
    combos.append(dict(variant=Variant.REM, sync=SyncMode.CAS))
    combos.append(dict(variant=Variant.COARSE_LOCK, linking=Linking.RANK,
                       compaction=Compaction.HALVING))
    return combos


def describe_combo(kwargs: dict) -> str:
    """Short stable name for a constructor keyword set."""
    variant = kwargs["variant"].value
    parts = [variant]
    if "compaction" in kwargs:
        parts.append(kwargs["compaction"].value)
    if "sync" in kwargs:
        parts.append(kwargs["sync"].value)
    if kwargs.get("ipc"):
        parts.append("ipc")
    if "linking" in kwargs:
        parts.append(kwargs["linking"].value)
    return "/".join(parts)
