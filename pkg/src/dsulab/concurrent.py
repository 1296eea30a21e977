"""Thread-shareable disjoint-set union variants.

All variants except the coarse lock are lock-free: linking is a compare-and-set
on the losing root's slot, retried from fresh finds on failure, and path
compaction is issued through one of three write disciplines (:class:`SyncMode`).
A slot only ever makes one root-to-inner transition, which is what makes the
relaxed compaction writes safe: every compaction store targets a slot already
observed as an inner node and installs a value that was an ancestor of it.

``union`` returns True iff the calling thread performed the link; under races,
exactly one thread gets True per merged pair of sets. ``same_set`` is
linearizable: a False answer re-validates that the first root was still a root
when the second find completed.

Reads in the hot loops index the backing list directly (the plain-load
primitive); the spots that require a synchronizing read, the root re-checks,
go through :meth:`AtomicWordArray.load`.
"""

from __future__ import annotations

import enum
import threading
from typing import Callable, Optional

from .atomics import AtomicWordArray
from .core import (Compaction, Linking, MAX_FIELD, PriorityFn, ROOT_FLAG,
                   SeqDsu, _check_element_count)
from .stats import OpCounters


class ConfigError(ValueError):
    """Invalid combination of variant, compaction, sync mode, or flags."""


class SyncMode(enum.Enum):
    """How compaction writes are issued."""

    CAS = "cas"
    ORDERED_WRITE = "ordered-write"
    PLAIN_WRITE = "plain-write"


class Variant(enum.Enum):
    CAS_RANK = "cas-rank"
    CAS_PSEUDO_RANDOM = "cas-pseudo-random"
    EARLY_RECOGNITION = "early-recognition"
    REM = "rem"
    COARSE_LOCK = "coarse-lock"


#: Variants that accept the immediate-parent check.
IPC_VARIANTS = frozenset({Variant.CAS_RANK, Variant.CAS_PSEUDO_RANDOM,
                          Variant.EARLY_RECOGNITION})


class ConcurrentDsu:
    """Disjoint-set union over ``0..n-1`` shareable across threads.

    Parameters
    ----------
    variant:
        Algorithm family. ``CAS_RANK`` and ``CAS_PSEUDO_RANDOM`` are
        find-then-link with CAS linking; ``EARLY_RECOGNITION`` replaces the
        two finds with a dual climb ordered by pseudo-random priority;
        ``REM`` stores plain parent indices (roots are self-parents, the
        parent values double as priorities) with one-step splitting built in;
        ``COARSE_LOCK`` serializes a :class:`SeqDsu` behind one mutex.
    compaction:
        Path shortening applied by finds. Rem ignores this (its splitting is
        part of the algorithm); early recognition supports splitting and
        halving only.
    sync:
        Write discipline for compaction stores: ``CAS`` issues a single
        compare-and-set per shortened link and ignores failure; the ordered
        and plain modes store unconditionally.
    ipc:
        Immediate-parent check: union/same_set first read both argument slots
        once and resolve ``u == v``, or equal inner-node parents, without any
        find. Only the lock-free flag-slot variants accept it.
    linking:
        Inner heuristic for ``COARSE_LOCK`` only (default rank).
    pause:
        Optional hook called with a short label at interleaving-sensitive
        points; test harnesses install a randomized yield here. May be
        (re)assigned between operations but not while threads are running.
    """

    thread_safe = True

    def __init__(self, n: int, variant: Variant = Variant.CAS_RANK,
                 compaction: Compaction = Compaction.SPLITTING,
                 sync: SyncMode = SyncMode.CAS, ipc: bool = False,
                 linking: Optional[Linking] = None,
                 seed: Optional[int] = None,
                 pause: Optional[Callable[[str], None]] = None,
                 stripes: int = AtomicWordArray.DEFAULT_STRIPES) -> None:
        _check_element_count(n)
        self.n = n
        self.variant = variant
        self.sync = sync
        self.ipc = bool(ipc)
        self.pause = pause
        self.priority_fn: Optional[PriorityFn] = None
        self.priorities: Optional[list] = None
        self.linking: Optional[Linking] = None
        self.slots: Optional[AtomicWordArray] = None
        self._seq: Optional[SeqDsu] = None
        self._lock: Optional[threading.Lock] = None

        if ipc and variant not in IPC_VARIANTS:
            raise ConfigError(
                f"the immediate-parent check does not apply to {variant.value}")

        if variant is Variant.COARSE_LOCK:
            self.linking = linking if linking is not None else Linking.RANK
            self.compaction = compaction
            self._seq = SeqDsu(n, linking=self.linking, compaction=compaction,
                               seed=seed)
            self._lock = threading.Lock()
            self.union = self._union_lock
            self.same_set = self._same_set_lock
            self._find = self._find_lock
            return

        if linking is not None:
            raise ConfigError("linking is selectable only for the coarse-lock variant")

        self._compact = {
            SyncMode.CAS: self._compact_cas,
            SyncMode.ORDERED_WRITE: self._compact_ordered,
            SyncMode.PLAIN_WRITE: self._compact_plain,
        }[sync]

        if variant is Variant.REM:
            # One-step splitting is part of the algorithm itself.
            self.compaction = Compaction.SPLITTING
            self.slots = AtomicWordArray(range(n), stripes)
            self.union = self._union_rem
            self.same_set = self._same_set_rem
            self._find = self._find_rem
            return

        if compaction is Compaction.NONE:
            raise ConfigError("concurrent finds need a compacting strategy")
        if variant is Variant.EARLY_RECOGNITION and compaction is Compaction.COMPRESSION:
            raise ConfigError(
                "early recognition climbs one link at a time; use splitting or halving")
        self.compaction = compaction
        self.slots = AtomicWordArray([ROOT_FLAG] * n, stripes)
        self._find = {
            Compaction.COMPRESSION: self._find_compression,
            Compaction.SPLITTING: self._find_splitting,
            Compaction.HALVING: self._find_halving,
        }[compaction]
        if variant is Variant.CAS_RANK:
            self.union = self._union_rank
            self.same_set = self._same_set_flag
        elif variant is Variant.CAS_PSEUDO_RANDOM:
            self.priority_fn = PriorityFn.generate(n, seed)
            self.union = self._union_pseudo
            self.same_set = self._same_set_flag
        elif variant is Variant.EARLY_RECOGNITION:
            self.priority_fn = PriorityFn.generate(n, seed)
            self.priorities = self.priority_fn.table()
            self.union = self._union_er
            self.same_set = self._same_set_er
        else:
            raise ConfigError(f"unknown variant {variant!r}")

    # -- compaction writes ---------------------------------------------------

    def _compact_cas(self, i, expected, target, stats):
        pause = self.pause
        if pause is not None:
            pause("compact:cas")
        if stats is not None:
            stats.cas_attempts += 1
            if not self.slots.cas(i, expected, target):
                stats.failed_cas += 1
        else:
            self.slots.cas(i, expected, target)  # a lone failure is benign

    def _compact_ordered(self, i, expected, target, stats):
        pause = self.pause
        if pause is not None:
            pause("compact:store")
        self.slots.store_release(i, target)

    def _compact_plain(self, i, expected, target, stats):
        # Caller observed slot i holding the inner-node value `expected`;
        # i can never become a root again and `target` was an ancestor of it,
        # so an unconditional store keeps the partition intact under any
        # interleaving.
        pause = self.pause
        if pause is not None:
            pause("compact:store")
        self.slots.values[i] = target

    # -- finds -----------------------------------------------------------------

    def find(self, u: int, stats: Optional[OpCounters] = None) -> tuple:
        """Return ``(root, priority)`` for u at some linearization point."""
        r, w = self._find(u, stats)
        return r, w & MAX_FIELD

    def _find_splitting(self, u, stats=None):
        slots = self.slots
        vals = slots.values
        compact = self._compact
        steps = 0
        while True:
            p = vals[u]
            if p >= ROOT_FLAG:
                w = slots.load(u)  # root re-check
                if w >= ROOT_FLAG:
                    if stats is not None:
                        stats.find_steps += steps
                    return u, w
                p = w
            gp = vals[p]
            if gp < ROOT_FLAG:
                compact(u, p, gp, stats)
            steps += 1
            u = p

    def _find_halving(self, u, stats=None):
        slots = self.slots
        vals = slots.values
        compact = self._compact
        steps = 0
        while True:
            p = vals[u]
            if p >= ROOT_FLAG:
                w = slots.load(u)
                if w >= ROOT_FLAG:
                    if stats is not None:
                        stats.find_steps += steps
                    return u, w
                p = w
            gp = vals[p]
            if gp < ROOT_FLAG:
                compact(u, p, gp, stats)
                steps += 2
                u = gp
            else:
                steps += 1
                u = p

    def _find_compression(self, u, stats=None):
        slots = self.slots
        vals = slots.values
        path = []
        steps = 0
        x = u
        while True:
            p = vals[x]
            if p >= ROOT_FLAG:
                w = slots.load(x)
                if w >= ROOT_FLAG:
                    root, raw = x, w
                    break
                p = w
            path.append((x, p))
            steps += 1
            x = p
        compact = self._compact
        for y, py in path:
            if py != root:
                compact(y, py, root, stats)
        if stats is not None:
            stats.find_steps += steps
        return root, raw

    def _find_rem(self, u, stats=None):
        slots = self.slots
        vals = slots.values
        compact = self._compact
        steps = 0
        while True:
            p = vals[u]
            if p == u:
                w = slots.load(u)
                if w == u:
                    if stats is not None:
                        stats.find_steps += steps
                    return u, u
                p = w
            gp = vals[p]
            if gp != p:
                compact(u, p, gp, stats)
            steps += 1
            u = p

    def _find_lock(self, u, stats=None):
        with self._lock:
            seq = self._seq
            r = seq._find(u, stats)
            return r, seq._slots[r]

    # -- immediate-parent check -------------------------------------------------

    def _ipc_same(self, u, v, stats):
        if u == v:
            if stats is not None:
                stats.ipc_hits += 1
            return True
        vals = self.slots.values
        wu = vals[u]
        wv = vals[v]
        if wu == wv and wu < ROOT_FLAG:  # same parent, both inner nodes
            if stats is not None:
                stats.ipc_hits += 1
            return True
        return False

    # -- flag-slot unions ---------------------------------------------------------

    def _union_rank(self, u, v, stats=None):
        if self.ipc and self._ipc_same(u, v, stats):
            return False
        slots = self.slots
        find = self._find
        pause = self.pause
        while True:
            ru, wu = find(u, stats)
            if pause is not None:
                pause("union:first-find")
            rv, wv = find(v, stats)
            if ru == rv:
                return False
            if wu != wv:
                if wu < wv:
                    loser, lw, winner = ru, wu, rv
                else:
                    loser, lw, winner = rv, wv, ru
                if pause is not None:
                    pause("union:link-cas")
                if stats is not None:
                    stats.cas_attempts += 1
                if slots.cas(loser, lw, winner):
                    return True
            else:
                # Equal ranks: lower index becomes the child, winner's rank
                # grows by one. The bump is a single attempt; losing that race
                # only costs tree quality, never correctness.
                if ru < rv:
                    loser, lw, winner, ww = ru, wu, rv, wv
                else:
                    loser, lw, winner, ww = rv, wv, ru, wu
                if pause is not None:
                    pause("union:link-cas")
                if stats is not None:
                    stats.cas_attempts += 1
                if slots.cas(loser, lw, winner):
                    if stats is not None:
                        stats.cas_attempts += 1
                    if not slots.cas(winner, ww, ww + 1):
                        if stats is not None:
                            stats.failed_cas += 1
                    return True
            if stats is not None:
                stats.failed_cas += 1

    def _union_pseudo(self, u, v, stats=None):
        if self.ipc and self._ipc_same(u, v, stats):
            return False
        slots = self.slots
        find = self._find
        prio = self.priority_fn
        pause = self.pause
        while True:
            ru, wu = find(u, stats)
            if pause is not None:
                pause("union:first-find")
            rv, wv = find(v, stats)
            if ru == rv:
                return False
            if prio(ru) < prio(rv):
                loser, lw, winner = ru, wu, rv
            else:
                loser, lw, winner = rv, wv, ru
            if pause is not None:
                pause("union:link-cas")
            if stats is not None:
                stats.cas_attempts += 1
            if slots.cas(loser, lw, winner):
                return True
            if stats is not None:
                stats.failed_cas += 1

    def _same_set_flag(self, u, v, stats=None):
        if self.ipc and self._ipc_same(u, v, stats):
            return True
        slots = self.slots
        find = self._find
        pause = self.pause
        while True:
            ru, _ = find(u, stats)
            if pause is not None:
                pause("sameset:first-find")
            rv, _ = find(v, stats)
            if ru == rv:
                return True
            if slots.load(ru) >= ROOT_FLAG:
                # First root unchanged while the second find ran, so the two
                # sets really were distinct at that moment.
                return False

    # -- early recognition ---------------------------------------------------------

    def _union_er(self, u, v, stats=None):
        if self.ipc and self._ipc_same(u, v, stats):
            return False
        if u == v:
            return False
        prio = self.priorities
        slots = self.slots
        vals = slots.values
        compact = self._compact
        halve = self.compaction is Compaction.HALVING
        pause = self.pause
        while True:
            # Climb the lower-priority walker; pr(a) < pr(b) is the loop
            # invariant (priorities are distinct).
            a, b = u, v
            pa = prio[a]
            pb = prio[b]
            if pb < pa:
                a, b, pa, pb = b, a, pb, pa
            while True:
                ra = vals[a]
                if ra >= ROOT_FLAG:
                    w = slots.load(a)
                    if w >= ROOT_FLAG:
                        # a is a root and every element of its tree has
                        # priority below pr(b): link a under b itself.
                        if pause is not None:
                            pause("union:link-cas")
                        if stats is not None:
                            stats.cas_attempts += 1
                        if slots.cas(a, w, b):
                            if stats is not None:
                                stats.er_terminations += 1
                            return True
                        if stats is not None:
                            stats.failed_cas += 1
                        break  # a moved under someone; retry from the arguments
                    ra = w
                p = ra
                gp = vals[p]
                if gp < ROOT_FLAG:
                    compact(a, p, gp, stats)
                    if halve:
                        a = gp
                        if stats is not None:
                            stats.find_steps += 2
                    else:
                        a = p
                        if stats is not None:
                            stats.find_steps += 1
                else:
                    a = p
                    if stats is not None:
                        stats.find_steps += 1
                if a == b:
                    return False
                pa = prio[a]
                if pa > pb:
                    a, b, pa, pb = b, a, pb, pa

    def _same_set_er(self, u, v, stats=None):
        if self.ipc and self._ipc_same(u, v, stats):
            return True
        if u == v:
            return True
        prio = self.priorities
        slots = self.slots
        vals = slots.values
        compact = self._compact
        halve = self.compaction is Compaction.HALVING
        a, b = u, v
        pa = prio[a]
        pb = prio[b]
        if pb < pa:
            a, b, pa, pb = b, a, pb, pa
        while True:
            ra = vals[a]
            if ra >= ROOT_FLAG:
                w = slots.load(a)
                if w >= ROOT_FLAG:
                    # a is a root, so its tree tops out below pr(b); b cannot
                    # be in it.
                    if stats is not None:
                        stats.er_terminations += 1
                    return False
                ra = w
            p = ra
            gp = vals[p]
            if gp < ROOT_FLAG:
                compact(a, p, gp, stats)
                if halve:
                    a = gp
                    if stats is not None:
                        stats.find_steps += 2
                else:
                    a = p
                    if stats is not None:
                        stats.find_steps += 1
            else:
                a = p
                if stats is not None:
                    stats.find_steps += 1
            if a == b:
                return True
            pa = prio[a]
            if pa > pb:
                a, b, pa, pb = b, a, pb, pa

    # -- rem ----------------------------------------------------------------------

    def _union_rem(self, u, v, stats=None):
        slots = self.slots
        vals = slots.values
        pause = self.pause
        while True:
            up = vals[u]
            vp = vals[v]
            if u == v or up == vp:
                return False
            if vp < up:
                u, v, up, vp = v, u, vp, up
            if u == up:  # u is a root of lower priority than v's parent
                if pause is not None:
                    pause("union:link-cas")
                if stats is not None:
                    stats.cas_attempts += 1
                if slots.cas(u, u, vp):
                    return True
                if stats is not None:
                    stats.failed_cas += 1
            w = vals[up]
            if up != w:
                self._compact(u, up, w, stats)
            if stats is not None:
                stats.find_steps += 1
            u = up

    def _same_set_rem(self, u, v, stats=None):
        slots = self.slots
        vals = slots.values
        while True:
            up = vals[u]
            vp = vals[v]
            if u == v or up == vp:
                return True
            if vp < up:
                u, v, up, vp = v, u, vp, up
            if u == up:
                if slots.load(u) == u:  # still a root: the walks are separated
                    return False
                continue
            w = vals[up]
            if up != w:
                self._compact(u, up, w, stats)
            if stats is not None:
                stats.find_steps += 1
            u = up

    # -- coarse lock ----------------------------------------------------------------

    def _union_lock(self, u, v, stats=None):
        with self._lock:
            return self._seq.union(u, v, stats)

    def _same_set_lock(self, u, v, stats=None):
        with self._lock:
            return self._seq.same_set(u, v, stats)

    # -- queries ----------------------------------------------------------------------

    def count_components(self) -> int:
        if self.variant is Variant.COARSE_LOCK:
            return self._seq.count_components()
        vals = self.slots.values
        if self.variant is Variant.REM:
            return sum(1 for i, p in enumerate(vals) if p == i)
        return sum(1 for w in vals if w >= ROOT_FLAG)

    def labels(self) -> list:
        """Root of every element; meaningful once mutators have quiesced."""
        find = self._find
        return [find(i, None)[0] for i in range(self.n)]

    def raw_slots(self) -> list:
        """Snapshot of the slot words, for audits and tests."""
        if self.variant is Variant.COARSE_LOCK:
            return self._seq.raw_slots()
        return self.slots.snapshot()
