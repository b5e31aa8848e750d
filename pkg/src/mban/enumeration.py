"""Exhaustive census of DCT-solving digraphs, up to isomorphism.

A digraph on n nodes is identified with an integer code whose bit ``u*n + v``
is set iff the arc u -> v exists.  The census sweeps every code in
[0, 2^(n^2)), keeps the solvers, and folds each solver to its canonical code
(the minimum code over all node relabellings).
"""

from __future__ import annotations

import itertools
import logging
import os
import struct
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path
from typing import Optional

import numpy as np

from . import _kernels
from .core import Digraph, as_network
from .errors import BudgetExceeded, DomainError, FormatError, ParameterError

log = logging.getLogger(__name__)

CENSUS_FORMAT = "mban-census-v1"
CANONICAL_MAX_N = 8
TABLE_MAX_N = 20
CENSUS_MAX_N = 5
CHUNK = 1 << 20

# Resume file: little-endian header, then `canonical` u64 codes in ascending order
RESUME_MAGIC = b"MBNC"
RESUME_VERSION = 1
_RESUME_HEADER = struct.Struct("<4sHHIQQQQ")


def encode(g: Digraph) -> int:
    return sum(1 << (u * g.n + v) for u, v in g.arcs())


def decode(n: int, code: int) -> Digraph:
    if not 0 <= code < 1 << (n * n):
        raise ParameterError(f"code {code} out of range for n={n}")
    return Digraph.from_arcs(
        n, ((u, v) for u in range(n) for v in range(n) if (code >> (u * n + v)) & 1)
    )


@dataclass(frozen=True, order=True)
class GraphCode:
    n: int
    code: int

    @classmethod
    def of(cls, g: Digraph) -> "GraphCode":
        return cls(g.n, encode(g))

    def graph(self) -> Digraph:
        return decode(self.n, self.code)


def canonical_code(g: Digraph) -> GraphCode:
    """Smallest code among all n! relabellings of ``g``."""
    n = g.n
    if n > CANONICAL_MAX_N:
        raise BudgetExceeded(
            f"canonical labelling by permutation needs {n}! relabellings; limit is n <= {CANONICAL_MAX_N}",
            required=factorial(n),
        )
    arcs = g.arcs()
    best = None
    for perm in itertools.permutations(range(n)):
        code = 0
        for u, v in arcs:
            code |= 1 << (perm[u] * n + perm[v])
        if best is None or code < best:
            best = code
    return GraphCode(n, best)


def transition_table(net, max_n: int = TABLE_MAX_N, jobs: int = 1) -> np.ndarray:
    """Successor of every configuration, indexed by its packed value."""
    net = as_network(net)
    n = net.n
    if n > max_n:
        raise BudgetExceeded(
            f"transition table for n={n} has 2^{n} entries; limit is n <= {max_n}",
            required=1 << n,
        )
    masks = np.array(net.graph.in_masks, np.int64)
    degrees = np.array(net.graph.in_degrees(), np.int64)
    size = 1 << n
    table = np.empty(size, np.int64)
    if jobs > 1 and size >= 1 << 12:
        step, _ = divmod(size, jobs)
        bounds = [(i * step, size if i == jobs - 1 else (i + 1) * step) for i in range(jobs)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(lambda b: _kernels.fill_table(masks, degrees, b[0], b[1], table), bounds))
    else:
        _kernels.fill_table(masks, degrees, 0, size, table)
    return table


@dataclass(frozen=True)
class UniverseOptions:
    """Narrowings of the default universe of all labelled digraphs."""

    no_self_loops: bool = False
    odd_degrees_only: bool = False
    weakly_connected: bool = False

    @property
    def flags(self) -> int:
        return (
            (_kernels.FLAG_NO_SELF_LOOPS if self.no_self_loops else 0)
            | (_kernels.FLAG_ODD_DEGREES if self.odd_degrees_only else 0)
            | (_kernels.FLAG_WEAKLY_CONNECTED if self.weakly_connected else 0)
        )

    @classmethod
    def from_flags(cls, flags: int) -> "UniverseOptions":
        return cls(
            bool(flags & _kernels.FLAG_NO_SELF_LOOPS),
            bool(flags & _kernels.FLAG_ODD_DEGREES),
            bool(flags & _kernels.FLAG_WEAKLY_CONNECTED),
        )

    def to_dict(self) -> dict:
        return {
            "no_self_loops": self.no_self_loops,
            "odd_degrees_only": self.odd_degrees_only,
            "weakly_connected": self.weakly_connected,
        }


@dataclass
class SolverCensus:
    n: int
    universe_size: int
    raw_solver_count: int
    canonical_solver_count: int
    canonical_codes: list[int]
    universe_options: UniverseOptions = field(default_factory=UniverseOptions)

    def to_dict(self, count_only: bool = False) -> dict:
        doc = {
            "format": CENSUS_FORMAT,
            "n": self.n,
            "universe": self.universe_size,
            "raw": self.raw_solver_count,
            "canonical": self.canonical_solver_count,
            "options": self.universe_options.to_dict(),
        }
        if not count_only:
            doc["codes"] = list(self.canonical_codes)
        return doc


@dataclass
class _Progress:
    n: int
    flags: int
    next_code: int = 0
    universe: int = 0
    raw: int = 0
    canonical: set = field(default_factory=set)


def write_resume(path: Path, p: _Progress) -> None:
    codes = sorted(p.canonical)
    header = _RESUME_HEADER.pack(
        RESUME_MAGIC, RESUME_VERSION, p.n, p.flags, p.next_code, p.universe, p.raw, len(codes)
    )
    tmp = Path(str(path) + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(np.asarray(codes, dtype="<u8").tobytes())
    os.replace(tmp, path)


def read_resume(path: Path) -> _Progress:
    data = Path(path).read_bytes()
    if len(data) < _RESUME_HEADER.size:
        raise FormatError(f"{path}: truncated resume header")
    magic, version, n, flags, next_code, universe, raw, count = _RESUME_HEADER.unpack_from(data)
    if magic != RESUME_MAGIC or version != RESUME_VERSION:
        raise FormatError(f"{path}: not a version {RESUME_VERSION} census resume file")
    body = data[_RESUME_HEADER.size :]
    if len(body) != 8 * count:
        raise FormatError(f"{path}: expected {count} codes, found {len(body) // 8}")
    codes = np.frombuffer(body, dtype="<u8")
    return _Progress(n, flags, next_code, universe, raw, set(int(c) for c in codes))


def _permutations(n):
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _sweep(n, lo, hi, flags, order, perms):
    out = np.empty(hi - lo, np.int64)
    found, examined = _kernels.census_range(n, lo, hi, flags, order, out)
    raw = out[:found]
    canon = np.empty_like(raw)
    _kernels.canonical_many(raw, n, perms, canon)
    return examined, found, np.unique(canon)


def enumerate_solvers(
    n: int,
    options: Optional[UniverseOptions] = None,
    jobs: int = 1,
    resume: Optional[Path] = None,
    max_n: int = CENSUS_MAX_N,
    chunk: int = CHUNK,
) -> SolverCensus:
    """Count DCT solvers among all digraphs on ``n`` nodes, up to isomorphism.

    With ``resume`` set, progress is saved to that file after every batch of
    chunks and an existing file is picked up where it stopped.
    """
    options = options or UniverseOptions()
    if n % 2 == 0:
        raise DomainError(f"the density classification task needs odd n, got n={n}")
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    if n > max_n:
        raise BudgetExceeded(
            f"census of n={n} sweeps 2^{n * n} graphs; limit is n <= {max_n}",
            required=1 << (n * n),
        )
    if n * n > 62:
        raise BudgetExceeded(f"graph codes for n={n} do not fit the 64-bit sweep")
    total = 1 << (n * n)
    flags = options.flags

    progress = _Progress(n, flags)
    if resume is not None and Path(resume).exists():
        progress = read_resume(resume)
        if progress.n != n or progress.flags != flags:
            raise ParameterError(
                f"{resume} belongs to n={progress.n} with options {UniverseOptions.from_flags(progress.flags)}"
            )
        log.info("resuming n=%d census at code %d", n, progress.next_code)

    order = _kernels.hard_first_order(n)
    perms = _permutations(n)
    jobs = max(1, jobs)
    started = time.monotonic()
    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while progress.next_code < total:
            lo = progress.next_code
            bounds = []
            for _ in range(jobs):
                if lo >= total:
                    break
                hi = min(total, lo + chunk)
                bounds.append((lo, hi))
                lo = hi
            if pool is not None:
                parts = list(pool.map(lambda b: _sweep(n, b[0], b[1], flags, order, perms), bounds))
            else:
                parts = [_sweep(n, b[0], b[1], flags, order, perms) for b in bounds]
            for examined, found, canon in parts:
                progress.universe += int(examined)
                progress.raw += int(found)
                progress.canonical.update(int(c) for c in canon)
            progress.next_code = lo
            if resume is not None:
                write_resume(Path(resume), progress)
            log.debug(
                "n=%d: %d/%d codes, %d solvers, %.1fs",
                n, lo, total, progress.raw, time.monotonic() - started,
            )
    finally:
        if pool is not None:
            pool.shutdown()

    codes = sorted(progress.canonical)
    return SolverCensus(
        n=n,
        universe_size=progress.universe,
        raw_solver_count=progress.raw,
        canonical_solver_count=len(codes),
        canonical_codes=codes,
        universe_options=options,
    )
