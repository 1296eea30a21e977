"""Shared word array with explicit per-slot access modes.

The concurrent set structures are written against five slot primitives:
synchronizing load, plain load, compare-and-set, publication-ordered store,
and plain store. On CPython the interpreter lock serializes bytecodes, so
every list-element load and store is already sequentially consistent; the
plain and ordered forms therefore compile to the same thing and the split is
kept because the algorithms are specified against the weaker contract.
``compare_and_set`` is the one operation that genuinely needs a lock here to
act as a single read-modify-write step; the array stripes a small pool of
locks across slots so unrelated slots rarely contend.

Hot loops may index :attr:`AtomicWordArray.values` directly: a bare
``values[i]`` read or ``values[i] = x`` store is exactly the plain-mode
primitive.
"""

from __future__ import annotations

import threading
from typing import Iterable, List


class AtomicWordArray:
    """Fixed-length array of non-negative integer words, shareable by threads."""

    __slots__ = ("values", "_locks", "_mask")

    DEFAULT_STRIPES = 128

    def __init__(self, values: Iterable[int], stripes: int = DEFAULT_STRIPES) -> None:
        if stripes < 1 or stripes & (stripes - 1):
            raise ValueError("stripe count must be a power of two")
        self.values: List[int] = list(values)
        self._locks = [threading.Lock() for _ in range(stripes)]
        self._mask = stripes - 1

    def __len__(self) -> int:
        return len(self.values)

    # -- loads ---------------------------------------------------------------

    def load(self, i: int) -> int:
        """Synchronizing read of slot i."""
        return self.values[i]

    def load_plain(self, i: int) -> int:
        """Unordered read of slot i."""
        return self.values[i]

    # -- stores --------------------------------------------------------------

    def store_release(self, i: int, value: int) -> None:
        """Store that publishes prior writes before becoming visible."""
        self.values[i] = value

    def store_plain(self, i: int, value: int) -> None:
        """Unordered store; caller must tolerate any interleaving."""
        self.values[i] = value

    # -- read-modify-write -----------------------------------------------------

    def compare_and_set(self, i: int, expected: int, new: int) -> bool:
        """Atomically replace slot i with new iff it still holds expected."""
        with self._locks[i & self._mask]:
            if self.values[i] != expected:
                return False
            self.values[i] = new
            return True

    # Alias used by the hot paths.
    cas = compare_and_set

    # -- whole-array helpers ---------------------------------------------------

    def fill(self, value: int) -> None:
        values = self.values
        for i in range(len(values)):
            values[i] = value

    def snapshot(self) -> List[int]:
        return list(self.values)
