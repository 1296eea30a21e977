"""Graph containers, file loaders, and seeded generators for the benchmarks.

Two input formats are supported: whitespace-separated edge lists (``u v`` or
``u v w`` per line, ``#`` comments, arbitrary non-negative vertex ids that get
compacted to ``0..n-1`` in first-appearance order) and the shortest-path
subset of the DIMACS challenge format (``p sp n m`` header, ``a u v w`` arc
lines with 1-based endpoints, ``c`` comments). Files ending in ``.gz`` are
transparently decompressed. Generators return seeded, reproducible instances.
"""

from __future__ import annotations

import gzip
import io
import logging
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

log = logging.getLogger(__name__)

#: Generated edge weights are uniform integers in [1, MAX_GEN_WEIGHT].
MAX_GEN_WEIGHT = 10 ** 6


class GraphFormatError(ValueError):
    """Malformed graph input; message carries the offending line number."""


@dataclass
class Graph:
    """Undirected multigraph as parallel endpoint (and optional weight) arrays.

    Self-loops and duplicate edges are legal; the set algorithms treat them as
    no-ops and the MST code never selects them twice.
    """

    n: int
    u: np.ndarray
    v: np.ndarray
    w: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self) -> None:
        self.u = np.ascontiguousarray(self.u, dtype=np.int64)
        self.v = np.ascontiguousarray(self.v, dtype=np.int64)
        if self.u.shape != self.v.shape or self.u.ndim != 1:
            raise ValueError("endpoint arrays must be equal-length vectors")
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if self.u.size:
            lo = min(self.u.min(), self.v.min())
            hi = max(self.u.max(), self.v.max())
            if lo < 0 or hi >= self.n:
                raise ValueError(f"endpoint out of range 0..{self.n - 1}")
        if self.w is not None:
            self.w = np.ascontiguousarray(self.w, dtype=np.int64)
            if self.w.shape != self.u.shape:
                raise ValueError("weight array must match the edge count")
            if self.w.size and self.w.min() < 0:
                raise ValueError("weights must be non-negative")

    @property
    def m(self) -> int:
        return int(self.u.size)

    @property
    def weighted(self) -> bool:
        return self.w is not None

    def edges(self):
        """Iterate (u, v) or (u, v, w) tuples of Python ints."""
        if self.w is None:
            yield from zip(self.u.tolist(), self.v.tolist())
        else:
            yield from zip(self.u.tolist(), self.v.tolist(), self.w.tolist())


def _open_text(source, mode: str = "rt"):
    """Open a path (gzip-aware) or pass a file-like object through."""
    if isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        if path.endswith(".gz"):
            return gzip.open(path, mode), True, os.path.basename(path)
        return open(path, mode), True, os.path.basename(path)
    name = getattr(source, "name", "<stream>")
    if isinstance(name, int):
        name = "<stream>"
    if isinstance(source, (io.RawIOBase, io.BufferedIOBase)):
        return io.TextIOWrapper(source), False, os.path.basename(str(name))
    return source, False, os.path.basename(str(name))


def load_edge_list(source) -> Graph:
    """Read a whitespace edge list, compacting ids in first-appearance order.

    Raises :class:`GraphFormatError` (with a line number) for non-integer or
    negative fields, inconsistent field counts, or an empty edge set.
    """
    ids: dict = {}
    us: list = []
    vs: list = []
    ws: list = []
    width = 0
    fh, owned, name = _open_text(source)
    try:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split()
            if width == 0:
                if len(parts) not in (2, 3):
                    raise GraphFormatError(
                        f"line {lineno}: expected 'u v' or 'u v w', got {len(parts)} fields")
                width = len(parts)
            elif len(parts) != width:
                raise GraphFormatError(
                    f"line {lineno}: expected {width} fields, got {len(parts)}")
            try:
                nums = [int(p) for p in parts]
            except ValueError:
                raise GraphFormatError(
                    f"line {lineno}: non-integer field in {stripped!r}") from None
            if nums[0] < 0 or nums[1] < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex id")
            a = ids.setdefault(nums[0], len(ids))
            b = ids.setdefault(nums[1], len(ids))
            us.append(a)
            vs.append(b)
            if width == 3:
                if nums[2] < 0:
                    raise GraphFormatError(f"line {lineno}: negative weight")
                ws.append(nums[2])
    finally:
        if owned:
            fh.close()
    if not us:
        raise GraphFormatError("no edges found")
    w = np.array(ws, dtype=np.int64) if width == 3 else None
    return Graph(n=len(ids), u=np.array(us, dtype=np.int64),
                 v=np.array(vs, dtype=np.int64), w=w, name=name)


def load_dimacs(source) -> Graph:
    """Read a DIMACS shortest-path file (``p sp n m`` header, ``a u v w`` arcs).

    Endpoints are 1-based in the file and shifted to 0-based; the header vertex
    count is authoritative, so isolated vertices survive. An arc count that
    disagrees with the header is logged as a warning and otherwise accepted;
    anything structurally wrong is a :class:`GraphFormatError`.
    """
    n = None
    declared_m = None
    us: list = []
    vs: list = []
    ws: list = []
    fh, owned, name = _open_text(source)
    try:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped[0] == "c":
                continue
            parts = stripped.split()
            if parts[0] == "p":
                if n is not None:
                    raise GraphFormatError(f"line {lineno}: duplicate problem line")
                if len(parts) != 4 or parts[1] != "sp":
                    raise GraphFormatError(
                        f"line {lineno}: expected 'p sp <n> <m>', got {stripped!r}")
                try:
                    n = int(parts[2])
                    declared_m = int(parts[3])
                except ValueError:
                    raise GraphFormatError(
                        f"line {lineno}: non-integer problem size") from None
                if n < 1 or declared_m < 0:
                    raise GraphFormatError(f"line {lineno}: bad problem size")
            elif parts[0] == "a":
                if n is None:
                    raise GraphFormatError(
                        f"line {lineno}: arc before the problem line")
                if len(parts) != 4:
                    raise GraphFormatError(
                        f"line {lineno}: expected 'a <u> <v> <w>', got {stripped!r}")
                try:
                    a, b, wt = int(parts[1]), int(parts[2]), int(parts[3])
                except ValueError:
                    raise GraphFormatError(
                        f"line {lineno}: non-integer arc field") from None
                if not (1 <= a <= n and 1 <= b <= n):
                    raise GraphFormatError(
                        f"line {lineno}: endpoint outside 1..{n}")
                if wt < 0:
                    raise GraphFormatError(f"line {lineno}: negative arc weight")
                us.append(a - 1)
                vs.append(b - 1)
                ws.append(wt)
            else:
                raise GraphFormatError(
                    f"line {lineno}: unrecognized record {parts[0]!r}")
    finally:
        if owned:
            fh.close()
    if n is None:
        raise GraphFormatError("missing problem line")
    if declared_m != len(us):
        log.warning("%s: header declares %d arcs, file has %d",
                    name, declared_m, len(us))
    return Graph(n=n, u=np.array(us, dtype=np.int64),
                 v=np.array(vs, dtype=np.int64),
                 w=np.array(ws, dtype=np.int64), name=name)


def write_edge_list(g: Graph, path) -> None:
    """Write ``u v`` or ``u v w`` lines; gzip-compressed if path ends in .gz."""
    path = os.fspath(path)
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "wt") as fh:
        if g.w is None:
            for a, b in zip(g.u.tolist(), g.v.tolist()):
                fh.write(f"{a} {b}\n")
        else:
            for a, b, wt in zip(g.u.tolist(), g.v.tolist(), g.w.tolist()):
                fh.write(f"{a} {b} {wt}\n")


def gen_erdos_renyi(n: int, m: int, seed: int = 0,
                    weighted: bool = False) -> Graph:
    """m edges with independently uniform endpoints over n >= 2 vertices."""
    if n < 2:
        raise ValueError("need at least two vertices")
    if m < 0:
        raise ValueError("edge count must be non-negative")
    rng = np.random.default_rng(seed)
    u = rng.integers(0, n, size=m, dtype=np.int64)
    v = rng.integers(0, n, size=m, dtype=np.int64)
    w = rng.integers(1, MAX_GEN_WEIGHT, size=m, dtype=np.int64,
                     endpoint=True) if weighted else None
    return Graph(n=n, u=u, v=v, w=w, name=f"er:{n}:{m}:{seed}")


def gen_high_contention(n: int, m: int, seed: int = 0,
                        weighted: bool = False) -> Graph:
    """Skewed instance: ~90% of edges touch a tiny hub set.

    The hub set is the first ``max(2, n // 1000)`` vertices; each hub edge
    pairs a uniform hub with a uniform vertex, the rest are uniform-uniform.
    Drives the set structure toward a few giant, hammered components.
    """
    if n < 16:
        raise ValueError("need at least 16 vertices")
    if m < 0:
        raise ValueError("edge count must be non-negative")
    hubs = max(2, n // 1000)
    rng = np.random.default_rng(seed)
    hub_edge = rng.random(m) < 0.9
    u = rng.integers(0, n, size=m, dtype=np.int64)
    u[hub_edge] = rng.integers(0, hubs, size=int(hub_edge.sum()), dtype=np.int64)
    v = rng.integers(0, n, size=m, dtype=np.int64)
    w = rng.integers(1, MAX_GEN_WEIGHT, size=m, dtype=np.int64,
                     endpoint=True) if weighted else None
    return Graph(n=n, u=u, v=v, w=w, name=f"hc:{n}:{m}:{seed}")
