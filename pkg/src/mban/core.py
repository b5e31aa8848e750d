"""Synchronous dynamics of majority Boolean automata networks.

Configurations are bit-packed into Python integers: bit ``v`` holds the state
of automaton ``v``.  A digraph is stored as one in-neighbour set per node; the
network precomputes the matching bit masks so one step costs one AND and one
popcount per node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BudgetExceeded, DimensionError, DomainError, ParameterError

MAX_STEPS_CAP = 1 << 20


@dataclass(frozen=True)
class Configuration:
    """Binary state vector of ``n`` automata; ``bits`` bit ``v`` is x_v."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"configuration size must be positive, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ParameterError(f"bits {self.bits:#x} do not fit in {self.n} automata")

    @classmethod
    def from_text(cls, text: str) -> "Configuration":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ParameterError(f"configuration text must be a non-empty 0/1 string, got {text!r}")
        bits = 0
        for v, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << v
        return cls(len(text), bits)

    @classmethod
    def from_states(cls, states: Sequence[int]) -> "Configuration":
        bits = 0
        for v, s in enumerate(states):
            if s not in (0, 1):
                raise ParameterError(f"state at position {v} is {s!r}, expected 0 or 1")
            bits |= s << v
        return cls(len(states), bits)

    @classmethod
    def uniform(cls, n: int, state: int) -> "Configuration":
        return cls(n, (1 << n) - 1 if state else 0)

    def to_text(self) -> str:
        return "".join("1" if (self.bits >> v) & 1 else "0" for v in range(self.n))

    def __str__(self):
        return self.to_text()

    def __getitem__(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(v)
        return (self.bits >> v) & 1

    def __len__(self):
        return self.n

    def ones(self) -> int:
        return self.bits.bit_count()

    def zeros(self) -> int:
        return self.n - self.bits.bit_count()

    def majority(self) -> int:
        """Global majority state; only defined for odd ``n``."""
        if self.n % 2 == 0:
            raise DomainError(f"global majority is undefined for even n={self.n}")
        return int(2 * self.ones() > self.n)

    def complement(self) -> "Configuration":
        return Configuration(self.n, self.bits ^ ((1 << self.n) - 1))

    def is_uniform(self) -> bool:
        return self.bits == 0 or self.bits == (1 << self.n) - 1


@dataclass(frozen=True)
class Digraph:
    """Digraph on nodes ``0..n-1``; ``in_neighbors[v]`` is N(v), self-loops allowed."""

    n: int
    in_neighbors: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"graph must have at least one node, got n={self.n}")
        if len(self.in_neighbors) != self.n:
            raise ParameterError(
                f"expected {self.n} in-neighbourhoods, got {len(self.in_neighbors)}"
            )
        for v, nbrs in enumerate(self.in_neighbors):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ParameterError(f"arc {u} -> {v} references a node outside 0..{self.n - 1}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        """Build from arcs ``(u, v)`` meaning u -> v; duplicates collapse."""
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"arc {u} -> {v} references a node outside 0..{n - 1}")
            sets[v].add(u)
        return cls(n, tuple(frozenset(s) for s in sets))

    @classmethod
    def from_in_sets(cls, sets: Sequence[Iterable[int]]) -> "Digraph":
        return cls(len(sets), tuple(frozenset(s) for s in sets))

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs sorted ascending by (u, v)."""
        return sorted((u, v) for v, nbrs in enumerate(self.in_neighbors) for u in nbrs)

    @property
    def arc_count(self) -> int:
        return sum(len(s) for s in self.in_neighbors)

    def in_degrees(self) -> list[int]:
        return [len(s) for s in self.in_neighbors]

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in nbrs) for nbrs in self.in_neighbors)

    def has_arc(self, u: int, v: int) -> bool:
        return u in self.in_neighbors[v]

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Image of the graph under node map ``v -> perm[v]``."""
        return Digraph.from_arcs(self.n, ((perm[u], perm[v]) for u, v in self.arcs()))


@dataclass(frozen=True)
class MajorityNetwork:
    """MBAN on a digraph: every automaton follows the local majority of N(v)."""

    graph: Digraph
    _masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_masks", self.graph.in_masks)
        object.__setattr__(self, "_degrees", tuple(self.graph.in_degrees()))

    @property
    def n(self) -> int:
        return self.graph.n

    def step_bits(self, x: int) -> int:
        """One synchronous update on the packed representation."""
        y = 0
        for v, (mask, deg) in enumerate(zip(self._masks, self._degrees)):
            twice_ones = 2 * (x & mask).bit_count()
            if twice_ones > deg or (twice_ones == deg and (x >> v) & 1):
                y |= 1 << v
        return y


def as_network(net) -> MajorityNetwork:
    if isinstance(net, MajorityNetwork):
        return net
    if isinstance(net, Digraph):
        return MajorityNetwork(net)
    raise TypeError(f"expected Digraph or MajorityNetwork, got {type(net).__name__}")


@dataclass(frozen=True)
class TrajectoryOutcome:
    transient: int
    cycle_length: int
    entry_config: Configuration
    steps_evaluated: int

    @property
    def is_fixed_point(self) -> bool:
        return self.cycle_length == 1


@dataclass(frozen=True)
class NetworkMetrics:
    edge_count: int
    distinct_in_degrees: int
    max_in_degree: int
    non_omniscient: bool


def local_majority(neighbor_states: Iterable[int], current: int) -> int:
    """Majority of ``neighbor_states``, keeping ``current`` on a tie (also when empty)."""
    states = list(neighbor_states)
    twice_ones = 2 * sum(states)
    if twice_ones < len(states):
        return 0
    if twice_ones > len(states):
        return 1
    return current


def step(net, x: Configuration) -> Configuration:
    net = as_network(net)
    if x.n != net.n:
        raise DimensionError(f"configuration has {x.n} automata, network has {net.n}")
    return Configuration(x.n, net.step_bits(x.bits))


def default_max_steps(n: int) -> int:
    return min(1 << n, MAX_STEPS_CAP)


def orbit_bits(f, x0: int, max_steps: int) -> tuple[int, int, int, int]:
    """Brent cycle detection on the orbit of ``x0`` under ``f``.

    Returns ``(transient, cycle_length, entry, evaluations)`` with both lengths
    minimal.  Raises :class:`BudgetExceeded` only if ``transient + cycle_length``
    exceeds ``max_steps``.
    """
    # Brent's hare index is at most 3 * (transient + cycle) + 1 when it detects
    hare_limit = 3 * max_steps + 2
    evals = 0
    power = lam = 1
    tortoise = x0
    hare = f(x0)
    evals += 1
    hare_index = 1
    while tortoise != hare:
        if hare_index > hare_limit:
            raise BudgetExceeded(
                f"orbit did not close within {max_steps} steps", required=None
            )
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        evals += 1
        hare_index += 1
        lam += 1

    # Transient: march two pointers lam apart from the start
    tortoise = hare = x0
    for _ in range(lam):
        hare = f(hare)
        evals += 1
    mu = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        evals += 2
        mu += 1
    if mu + lam > max_steps:
        raise BudgetExceeded(
            f"orbit needs {mu + lam} steps to close, budget is {max_steps}",
            required=mu + lam,
        )
    return mu, lam, tortoise, evals


def evolve(net, x: Configuration, max_steps: int | None = None) -> TrajectoryOutcome:
    """Minimal transient and cycle length of the orbit of ``x``."""
    net = as_network(net)
    if x.n != net.n:
        raise DimensionError(f"configuration has {x.n} automata, network has {net.n}")
    if max_steps is None:
        max_steps = default_max_steps(net.n)
    if max_steps < 1:
        raise ParameterError(f"max_steps must be >= 1, got {max_steps}")
    mu, lam, entry, evals = orbit_bits(net.step_bits, x.bits, max_steps)
    return TrajectoryOutcome(mu, lam, Configuration(x.n, entry), evals)


def network_metrics(g) -> NetworkMetrics:
    if isinstance(g, MajorityNetwork):
        g = g.graph
    degrees = g.in_degrees()
    max_deg = max(degrees)
    return NetworkMetrics(
        edge_count=sum(degrees),
        distinct_in_degrees=len(set(degrees)),
        max_in_degree=max_deg,
        non_omniscient=max_deg < g.n,
    )
