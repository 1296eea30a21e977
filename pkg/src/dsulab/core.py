"""Sequential disjoint-set union with packed slots and pluggable heuristics.

Each element owns one 64-bit word. The top bit marks roots; a root's remaining
bits carry its linking priority (rank, tree size, or a random value) and an
inner node's word is a plain parent index. Keeping both in a single word means
the whole structure is one flat array, which is also the layout the concurrent
variants in :mod:`dsulab.concurrent` build on.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .stats import OpCounters

WORD_BITS = 64

#: Flag bit: set in a root's slot, clear in an inner node's slot.
ROOT_FLAG = 1 << (WORD_BITS - 1)

#: Largest parent index or priority a slot can carry.
MAX_FIELD = ROOT_FLAG - 1

#: Default multiplier for pseudo-random priorities, a fixed 62-bit prime.
BIG_PRIME = 4007359087382401217


def encode_parent(parent: int) -> int:
    """Pack a parent index into a slot word."""
    if not 0 <= parent <= MAX_FIELD:
        raise ValueError(f"parent index {parent} does not fit in {WORD_BITS - 1} bits")
    return parent


def encode_priority(priority: int) -> int:
    """Pack a root priority into a slot word (flag bit set)."""
    if not 0 <= priority <= MAX_FIELD:
        raise ValueError(f"priority {priority} does not fit in {WORD_BITS - 1} bits")
    return ROOT_FLAG | priority


@dataclass(frozen=True)
class PackedSlot:
    """Decoded view of one slot word.

    The hot paths below work on raw integers; this wrapper exists for tests,
    audits, and debugging, where readable decode errors beat speed.
    """

    raw: int

    def __post_init__(self) -> None:
        if not 0 <= self.raw < (1 << WORD_BITS):
            raise ValueError(f"slot word {self.raw} out of 64-bit range")

    @classmethod
    def for_parent(cls, parent: int) -> "PackedSlot":
        return cls(encode_parent(parent))

    @classmethod
    def for_priority(cls, priority: int) -> "PackedSlot":
        return cls(encode_priority(priority))

    @property
    def is_root(self) -> bool:
        return self.raw >= ROOT_FLAG

    @property
    def parent(self) -> int:
        if self.is_root:
            raise ValueError("root slot has no parent")
        return self.raw

    @property
    def priority(self) -> int:
        if not self.is_root:
            raise ValueError("inner slot has no priority")
        return self.raw & MAX_FIELD


class Linking(enum.Enum):
    """How union picks the surviving root."""

    SIZE = "size"
    RANK = "rank"
    RANDOM = "random"
    PSEUDO_RANDOM = "pseudo-random"


class Compaction(enum.Enum):
    """How find shortens the path it traverses."""

    COMPRESSION = "compression"
    SPLITTING = "splitting"
    HALVING = "halving"
    NONE = "none"


# Deterministic Miller-Rabin. These twelve bases decide primality exactly for
# every input below 3.3e24, which covers the full 64-bit range used here.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(x: int) -> bool:
    if x < 2:
        return False
    for p in _MR_BASES:
        if x % p == 0:
            return x == p
    d = x - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(s - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def next_prime_coprime(start: int, n: int) -> int:
    """Smallest prime >= start that is coprime to n."""
    if start < 2:
        start = 2
    c = start
    while True:
        if is_prime_u64(c) and math.gcd(c, n) == 1:
            return c
        c += 1


@dataclass(frozen=True)
class PriorityFn:
    """Pseudo-random priority ``x -> (x + shift) * prime mod n``.

    With ``gcd(prime, n) == 1`` the map is a bijection on ``0..n-1``, so
    priorities are distinct; the constructor rejects parameters that break
    that.
    """

    n: int
    shift: int
    prime: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.shift < 0 or self.prime < 1:
            raise ValueError("shift and prime must be non-negative")
        if math.gcd(self.prime, self.n) != 1:
            raise ValueError(
                f"prime {self.prime} shares a factor with n {self.n}; "
                "priorities would collide")

    @classmethod
    def generate(cls, n: int, seed: Optional[int] = None) -> "PriorityFn":
        """Build a function for ``n`` elements: seeded shift, default prime.

        The multiplier starts from :data:`BIG_PRIME` and advances to the next
        prime coprime to ``n`` when needed (only when n is a multiple of it).
        """
        shift = random.Random(seed).getrandbits(62)
        prime = next_prime_coprime(BIG_PRIME, n)
        return cls(n=n, shift=shift, prime=prime)

    def __call__(self, x: int) -> int:
        # Callers keep x < n; larger x still maps into 0..n-1 but is not part
        # of the bijection.
        return (x + self.shift) * self.prime % self.n

    def table_array(self) -> np.ndarray:
        """All n priorities as an int64 array.

        Valid for n up to 2^31: after reducing both factors mod n the product
        stays below 2^62, so the int64 arithmetic cannot overflow.
        """
        n, shift, prime = self.n, self.shift, self.prime
        if n > 1 << 31:
            raise ValueError("vectorized table only supports n <= 2^31")
        xs = np.arange(n, dtype=np.int64)
        return (xs + shift % n) % n * (prime % n) % n

    def table(self) -> list:
        """All n priorities as a list of ints."""
        if self.n <= 1 << 31:
            return self.table_array().tolist()
        return [self(x) for x in range(self.n)]


def _check_element_count(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("element count must be a positive integer")
    if n > MAX_FIELD:
        raise ValueError(
            f"element count {n} needs more than {WORD_BITS - 1} bits; "
            "the flag bit leaves no room")


class SeqDsu:
    """Single-threaded disjoint-set union over elements ``0..n-1``.

    ``linking`` picks the union heuristic, ``compaction`` the find-time path
    shortening. ``seed`` feeds the random and pseudo-random priorities; runs
    with equal seeds are identical.

    Not safe for concurrent use; :class:`dsulab.concurrent.ConcurrentDsu`
    wraps one behind a lock as its coarse-lock variant.
    """

    thread_safe = False

    def __init__(self, n: int, linking: Linking = Linking.RANK,
                 compaction: Compaction = Compaction.HALVING,
                 seed: Optional[int] = None) -> None:
        _check_element_count(n)
        self.n = n
        self.linking = linking
        self.compaction = compaction
        self.priority_fn: Optional[PriorityFn] = None
        self.random_priorities: Optional[list] = None

        if linking is Linking.SIZE:
            slots = [ROOT_FLAG | 1] * n
        elif linking is Linking.RANDOM:
            perm = np.random.default_rng(seed).permutation(n)
            self.random_priorities = perm.tolist()
            slots = [ROOT_FLAG | p for p in self.random_priorities]
        else:
            slots = [ROOT_FLAG] * n
            if linking is Linking.PSEUDO_RANDOM:
                self.priority_fn = PriorityFn.generate(n, seed)
        self._slots = slots

        self._find = {
            Compaction.COMPRESSION: self._find_compression,
            Compaction.SPLITTING: self._find_splitting,
            Compaction.HALVING: self._find_halving,
            Compaction.NONE: self._find_plain,
        }[compaction]
        self._link = {
            Linking.SIZE: self._link_size,
            Linking.RANK: self._link_rank,
            Linking.RANDOM: self._link_priority,
            Linking.PSEUDO_RANDOM: self._link_pseudo,
        }[linking]

    # -- finds -------------------------------------------------------------

    def find(self, u: int, stats: Optional[OpCounters] = None) -> int:
        """Root of u's tree; compacts the traversed path as configured."""
        return self._find(u, stats)

    def _find_plain(self, u, stats=None):
        slots = self._slots
        steps = 0
        while slots[u] < ROOT_FLAG:
            u = slots[u]
            steps += 1
        if stats is not None:
            stats.find_steps += steps
        return u

    def _find_halving(self, u, stats=None):
        slots = self._slots
        steps = 0
        while True:
            p = slots[u]
            if p >= ROOT_FLAG:
                break
            gp = slots[p]
            if gp >= ROOT_FLAG:
                steps += 1
                u = p
                break
            slots[u] = gp
            steps += 2
            u = gp
        if stats is not None:
            stats.find_steps += steps
        return u

    def _find_splitting(self, u, stats=None):
        slots = self._slots
        steps = 0
        while True:
            p = slots[u]
            if p >= ROOT_FLAG:
                break
            gp = slots[p]
            if gp < ROOT_FLAG:
                slots[u] = gp
            steps += 1
            u = p
        if stats is not None:
            stats.find_steps += steps
        return u

    def _find_compression(self, u, stats=None):
        slots = self._slots
        root = u
        steps = 0
        while slots[root] < ROOT_FLAG:
            root = slots[root]
            steps += 1
        while u != root:
            nxt = slots[u]
            if nxt != root:
                slots[u] = root
            u = nxt
        if stats is not None:
            stats.find_steps += steps
        return root

    # -- links -------------------------------------------------------------

    def union(self, u: int, v: int, stats: Optional[OpCounters] = None) -> bool:
        """Merge the sets holding u and v. True iff two sets were linked."""
        find = self._find
        ru = find(u, stats)
        rv = find(v, stats)
        if ru == rv:
            return False
        self._link(ru, rv)
        return True

    def _link_rank(self, ru, rv):
        slots = self._slots
        wu = slots[ru]
        wv = slots[rv]
        if wu < wv:
            slots[ru] = rv
        elif wv < wu:
            slots[rv] = ru
        elif ru < rv:  # equal ranks: lower index becomes the child
            slots[ru] = rv
            slots[rv] = wv + 1
        else:
            slots[rv] = ru
            slots[ru] = wu + 1

    def _link_size(self, ru, rv):
        slots = self._slots
        wu = slots[ru]
        wv = slots[rv]
        if wu < wv or (wu == wv and ru < rv):
            loser, winner, lw, ww = ru, rv, wu, wv
        else:
            loser, winner, lw, ww = rv, ru, wv, wu
        slots[loser] = winner
        slots[winner] = ww + (lw & MAX_FIELD)

    def _link_priority(self, ru, rv):
        # Distinct stored priorities (a permutation), so no tie to break.
        slots = self._slots
        if slots[ru] < slots[rv]:
            slots[ru] = rv
        else:
            slots[rv] = ru

    def _link_pseudo(self, ru, rv):
        slots = self._slots
        f = self.priority_fn
        if f(ru) < f(rv):
            slots[ru] = rv
        else:
            slots[rv] = ru

    # -- queries -----------------------------------------------------------

    def same_set(self, u: int, v: int, stats: Optional[OpCounters] = None) -> bool:
        find = self._find
        return find(u, stats) == find(v, stats)

    def count_components(self) -> int:
        return sum(1 for w in self._slots if w >= ROOT_FLAG)

    def labels(self) -> list:
        """Root of every element; compacts as a side effect."""
        find = self._find
        return [find(i, None) for i in range(self.n)]

    def raw_slots(self) -> list:
        """Snapshot of the packed words, for audits and tests."""
        return list(self._slots)
