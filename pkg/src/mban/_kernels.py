"""Compiled inner loops shared by the verifier and the enumerator.

Every kernel releases the GIL so callers can fan work out over threads.
Configurations and graph codes are plain int64 values here.
"""

import numba as nb
import numpy as np

FLAG_NO_SELF_LOOPS = 1
FLAG_ODD_DEGREES = 2
FLAG_WEAKLY_CONNECTED = 4

_jit = nb.njit(cache=True, nogil=True)


@_jit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@_jit
def step_packed(x, masks, degrees):
    y = 0
    for v in range(masks.shape[0]):
        twice = 2 * popcount(x & masks[v])
        d = degrees[v]
        if twice > d or (twice == d and (x >> v) & 1):
            y |= 1 << v
    return y


@_jit
def fill_table(masks, degrees, lo, hi, out):
    for x in range(lo, hi):
        out[x] = step_packed(x, masks, degrees)


@_jit
def _orbit(table, x0):
    # Brent on a precomputed successor table; returns (transient, period, entry)
    power = 1
    lam = 1
    tortoise = x0
    hare = table[x0]
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = table[hare]
        lam += 1
    tortoise = x0
    hare = x0
    for _ in range(lam):
        hare = table[hare]
    mu = 0
    while tortoise != hare:
        tortoise = table[tortoise]
        hare = table[hare]
        mu += 1
    return mu, lam, tortoise


@_jit
def scan_orbits(table, n, lo, hi, counts, max_transient, sum_transient):
    """Classify configurations lo..hi-1; returns the lowest failing one or -1.

    A configuration passes when its orbit ends at the uniform fixed point of its
    own majority.  Per ones-count statistics accumulate into the given arrays.
    """
    full = (1 << n) - 1
    first_fail = -1
    for x in range(lo, hi):
        ones = popcount(x)
        mu, lam, entry = _orbit(table, x)
        target = full if 2 * ones > n else 0
        if (lam != 1 or entry != target) and first_fail < 0:
            first_fail = x
        counts[ones] += 1
        sum_transient[ones] += mu
        if mu > max_transient[ones]:
            max_transient[ones] = mu
    return first_fail


@_jit
def hard_first_order(n):
    """All 2^n configurations, the two balanced densities first."""
    size = 1 << n
    out = np.empty(size, np.int64)
    k = 0
    lo_d = n // 2
    hi_d = n - n // 2
    for x in range(size):
        c = popcount(x)
        if c == lo_d or c == hi_d:
            out[k] = x
            k += 1
    for x in range(size):
        c = popcount(x)
        if c != lo_d and c != hi_d:
            out[k] = x
            k += 1
    return out


@_jit
def _in_universe(code, n, flags):
    if flags & FLAG_NO_SELF_LOOPS:
        for v in range(n):
            if (code >> (v * n + v)) & 1:
                return False
    if flags & FLAG_ODD_DEGREES:
        for v in range(n):
            d = 0
            for u in range(n):
                d += (code >> (u * n + v)) & 1
            if d % 2 == 0:
                return False
    if flags & FLAG_WEAKLY_CONNECTED:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for a in range(n):
                if (frontier >> a) & 1:
                    for b in range(n):
                        if ((code >> (a * n + b)) & 1) or ((code >> (b * n + a)) & 1):
                            nxt |= 1 << b
            frontier = nxt & ~seen
            seen |= nxt
        if seen != (1 << n) - 1:
            return False
    return True


@_jit
def decode_masks(code, n, masks, degrees):
    for v in range(n):
        masks[v] = 0
    for u in range(n):
        for v in range(n):
            if (code >> (u * n + v)) & 1:
                masks[v] |= 1 << u
    for v in range(n):
        degrees[v] = popcount(masks[v])


@_jit
def solves_code(code, n, order, masks, degrees, table):
    """DCT test for one graph code with early exit on the first violation."""
    decode_masks(code, n, masks, degrees)
    size = 1 << n
    full = size - 1
    # Majority must be invariant along every orbit; check it while filling the table
    for k in range(size):
        x = order[k]
        y = step_packed(x, masks, degrees)
        if (2 * popcount(y) > n) != (2 * popcount(x) > n):
            return False
        table[x] = y
    for k in range(size):
        x = order[k]
        target = full if 2 * popcount(x) > n else 0
        y = x
        steps = 0
        while y != target and steps <= size:
            y = table[y]
            steps += 1
        if y != target:
            return False
    return True


@_jit
def census_range(n, lo, hi, flags, order, out):
    """Write solver codes in [lo, hi) to ``out``.

    Returns ``(solvers found, codes inside the universe)``.
    """
    masks = np.zeros(n, np.int64)
    degrees = np.zeros(n, np.int64)
    table = np.zeros(1 << n, np.int64)
    k = 0
    examined = 0
    for code in range(lo, hi):
        if flags and not _in_universe(code, n, flags):
            continue
        examined += 1
        if solves_code(code, n, order, masks, degrees, table):
            out[k] = code
            k += 1
    return k, examined


@_jit
def canonical_many(codes, n, perms, out):
    """Minimum relabelled code over all permutations, for each code."""
    for i in range(codes.shape[0]):
        c = codes[i]
        best = -1
        for p in range(perms.shape[0]):
            r = 0
            for u in range(n):
                pu = perms[p, u] * n
                for v in range(n):
                    if (c >> (u * n + v)) & 1:
                        r |= 1 << (pu + perms[p, v])
            if best < 0 or r < best:
                best = r
        out[i] = best
