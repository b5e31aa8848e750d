"""Independent reference implementations used only by the tests.

These stay deliberately naive: per-node lists instead of bit masks, stored
orbits instead of cycle detection, so they cannot share a bug with the
code under test.
"""

from mban.core import Configuration, Digraph, local_majority


def naive_step(g: Digraph, states: list[int]) -> list[int]:
    return [
        local_majority([states[u] for u in sorted(g.in_neighbors[v])], states[v])
        for v in range(g.n)
    ]


def stored_orbit(g: Digraph, states: list[int]):
    """(transient, cycle_length, entry) by remembering every visited state."""
    seen = {}
    cur = tuple(states)
    t = 0
    while cur not in seen:
        seen[cur] = t
        cur = tuple(naive_step(g, list(cur)))
        t += 1
    mu = seen[cur]
    return mu, t - mu, list(cur)


def all_states(n):
    for b in range(1 << n):
        yield [(b >> v) & 1 for v in range(n)]


def to_config(states) -> Configuration:
    return Configuration.from_states(list(states))


def brute_force_dct(g: Digraph):
    """(solves, max transient, lowest failing packed value or None)."""
    n = g.n
    worst = 0
    first_fail = None
    for b, s in enumerate(all_states(n)):
        mu, lam, entry = stored_orbit(g, s)
        maj = int(2 * sum(s) > n)
        worst = max(worst, mu)
        if (lam != 1 or entry != [maj] * n) and first_fail is None:
            first_fail = b
    return first_fail is None, worst, first_fail
