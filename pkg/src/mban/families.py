"""Generators for the named MBAN constructions.

Each generator follows the step-by-step construction for its family: start
from an arc set, add or remove arcs, return the digraph.  Nothing here is
random, so equal arguments always give byte-identical serialized graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Digraph
from .errors import ParameterError

FAMILY_NAMES = (
    "complete",
    "cycle",
    "generated",
    "complete-cycle",
    "left-right",
    "circle-triangle",
    "two-cycles",
)


def _all_arcs(n):
    return {(u, v) for u in range(n) for v in range(n)}


def _require_odd(n, minimum, family):
    if n < minimum or n % 2 == 0:
        raise ParameterError(f"{family} needs an odd n >= {minimum}, got n={n}")


def complete(n: int) -> Digraph:
    """K_n with all n^2 arcs, self-loops included."""
    if n < 1:
        raise ParameterError(f"complete needs n >= 1, got n={n}")
    return Digraph.from_arcs(n, _all_arcs(n))


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise ParameterError(f"cycle needs n >= 2, got n={n}")
    return Digraph.from_arcs(n, ((i, (i + 1) % n) for i in range(n)))


def generated(inner: Digraph) -> Digraph:
    """Embed ``inner`` in a 2n+1 node solver.

    The n+1 new nodes ``n..2n`` read every node (themselves included) and feed
    every node, so after one step they all hold the global majority and after
    two the whole network does.
    """
    n = inner.n
    size = 2 * n + 1
    new_nodes = range(n, size)
    arcs = set(inner.arcs())
    arcs.update((s, v) for s in new_nodes for v in range(size))
    arcs.update((u, s) for u in range(size) for s in new_nodes)
    return Digraph.from_arcs(size, arcs)


def complete_cycle(n: int) -> Digraph:
    """Path 0 -> 1 -> ... -> n-1 -> 0 plus an arc from every node into 0."""
    if n < 3 or n % 2 == 0:
        raise ParameterError(f"complete-cycle needs an odd n >= 3, got n={n}")
    arcs = {(i, (i + 1) % n) for i in range(n)}
    arcs.update((i, 0) for i in range(n))
    return Digraph.from_arcs(n, arcs)


def left_right_sequences(n: int):
    """The node sequences (U, R, S, T) of the complementary-left-right family."""
    h = n // 2
    U = [0] + list(range(2, h))
    R = [1] + list(range(h, n))
    S = list(range(0, h - 1))
    T = list(range(h - 1, n))
    return U, R, S, T


def complementary_left_right(n: int) -> Digraph:
    _require_odd(n, 7, "left-right")
    U, R, S, T = left_right_sequences(n)
    arcs = _all_arcs(n)
    for i in range(len(S)):
        arcs.discard((S[(i + 1) % len(S)], U[i]))
        arcs.discard((S[(i + 2) % len(S)], U[i]))
    for i in range(len(T)):
        arcs.discard((T[(i - 1) % len(T)], R[i]))
        arcs.discard((T[(i - 2) % len(T)], R[i]))
    return Digraph.from_arcs(n, arcs)


def complementary_circle_triangle(n: int) -> Digraph:
    _require_odd(n, 7, "circle-triangle")
    arcs = _all_arcs(n)
    arcs -= {(i, (i + 1) % n) for i in range(n)}
    arcs -= {(i, i) for i in range(n) if i not in (0, 2)}
    arcs -= {(0, 2), (2, 0)}
    return Digraph.from_arcs(n, arcs)


def cross_point_range(n: int) -> range:
    """Legal cross points c for two-intersecting-cycles on n nodes."""
    return range((n + 1) // 2, n - 1)


def two_intersecting_cycles(n: int, c: Optional[int] = None) -> Digraph:
    """Two cycles sharing the cross point ``c`` (default: smallest legal value)."""
    _require_odd(n, 7, "two-cycles")
    h, ceil_h = n // 2, (n + 1) // 2
    if c is None:
        c = ceil_h
    if c not in cross_point_range(n):
        raise ParameterError(f"cross point must lie in {ceil_h}..{n - 2}, got c={c}")
    arcs = {(i, i + 1) for i in range(h)}
    arcs.update((i, j) for i in range(1, n) for j in range(ceil_h, n))
    arcs -= {(i - h, i) for i in range(ceil_h, n - 1)}
    arcs.discard((c, n - 1))
    arcs.add((c, 0))
    return Digraph.from_arcs(n, arcs)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    cross_point: Optional[int] = None
    inner: Optional[Digraph] = None

    def build(self) -> Digraph:
        return build_family(self.kind, self.n, cross_point=self.cross_point, inner=self.inner)


def build_family(kind: str, n: Optional[int] = None, *, cross_point=None, inner=None) -> Digraph:
    """Dispatch on the stable family name used by the command line."""
    if kind == "generated":
        if inner is None:
            raise ParameterError("generated needs an inner graph")
        if n is not None and n != 2 * inner.n + 1:
            raise ParameterError(
                f"generated from a {inner.n}-node graph has {2 * inner.n + 1} nodes, not {n}"
            )
        return generated(inner)
    if n is None:
        raise ParameterError(f"{kind} needs n")
    if cross_point is not None and kind != "two-cycles":
        raise ParameterError("a cross point only applies to two-cycles")
    if kind == "complete":
        return complete(n)
    if kind == "cycle":
        return directed_cycle(n)
    if kind == "complete-cycle":
        return complete_cycle(n)
    if kind == "left-right":
        return complementary_left_right(n)
    if kind == "circle-triangle":
        return complementary_circle_triangle(n)
    if kind == "two-cycles":
        return two_intersecting_cycles(n, cross_point)
    raise ParameterError(f"unknown family {kind!r}; choose from {', '.join(FAMILY_NAMES)}")
