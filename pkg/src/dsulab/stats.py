"""Diagnostic counters collected by set operations and benchmark runs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class OpCounters:
    """Mutable per-thread counters.

    Each worker thread owns one instance, so increments never race; after the
    workers have joined, fold the per-thread instances into a :class:`RunStats`
    with :meth:`RunStats.merge`. All counters are monotonically non-decreasing,
    which makes the merge order-insensitive.
    """

    __slots__ = ("cas_attempts", "failed_cas", "find_steps", "ipc_hits",
                 "er_terminations")

    def __init__(self) -> None:
        self.cas_attempts = 0
        self.failed_cas = 0
        self.find_steps = 0
        self.ipc_hits = 0
        self.er_terminations = 0

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__slots__}

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        body = ", ".join(f"{k}={v}" for k, v in self.as_dict().items())
        return f"OpCounters({body})"


@dataclass
class RunStats:
    """Wall time of one benchmark run plus the merged diagnostic counters."""

    millis: float = 0.0
    cas_attempts: int = 0
    failed_cas: int = 0
    find_steps: int = 0
    ipc_hits: int = 0
    er_terminations: int = 0

    @classmethod
    def merge(cls, millis: float, counters: Iterable[OpCounters]) -> "RunStats":
        out = cls(millis=millis)
        for c in counters:
            out.cas_attempts += c.cas_attempts
            out.failed_cas += c.failed_cas
            out.find_steps += c.find_steps
            out.ipc_hits += c.ipc_hits
            out.er_terminations += c.er_terminations
        return out
