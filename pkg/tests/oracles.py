"""Brute-force reference implementations, written without the package.

These follow the textbook definitions literally (explicit loops, the padded
full-vector generator ``f = sgn(B f)``) and are only as fast as they need to
be for small n.
"""
import numpy as np


def hebbian_loops(memories):
    n = len(memories[0])
    T = [[0] * n for _ in range(n)]
    for m in memories:
        for i in range(n):
            for j in range(n):
                if i != j:
                    T[i][j] += m[i] * m[j]
    return np.array(T, dtype=float)


def level(x, known, quaternary=False, theta=1.0):
    if not quaternary:
        return 1 if x >= 0 else -1
    t = theta * known
    if x < -t:
        return -3
    if x < 0:
        return -1
    if x < t:
        return 1
    return 3


def padded_generate(T, pi, known_values, quaternary=False, theta=1.0):
    """Regrow a vector by repeatedly applying the full lower-triangular B.

    ``B`` is built entry by entry from ``T`` in update order; unknown
    components of ``f`` are zero, and each iteration keeps only the one new
    component of ``B @ f``. Returned in natural coordinates.
    """
    n = len(pi)
    B = np.zeros((n, n))
    for a in range(n):
        for b in range(a):
            B[a, b] = T[pi[a]][pi[b]]
    f = np.zeros(n)
    f[: len(known_values)] = known_values
    for i in range(len(known_values), n):
        y = B @ f
        f[i] = level(y[i], i, quaternary, theta)
    out = [0] * n
    for a in range(n):
        out[pi[a]] = int(f[a])
    return out


def mean_distance_order(sites, n):
    sites = sorted(sites)
    rest = [j for j in range(n) if j not in sites]
    rest.sort(key=lambda j: (sum(abs(j - s) for s in sites) / len(sites), j))
    return sites + rest


def hebbian_trial_count(memories):
    """Memories retrieved by the Hebbian B-matrix scheme with single active sites."""
    n = len(memories[0])
    T = hebbian_loops(memories)
    taken = set()
    count = 0
    for m in memories:
        scores = [m[i] * sum(T[i][j] * m[j] for j in range(n)) for i in range(n)]
        best = min((i for i in range(n) if i not in taken), key=lambda i: (-scores[i], i))
        taken.add(best)
        pi = mean_distance_order([best], n)
        if padded_generate(T, pi, [m[best]]) == list(m):
            count += 1
    return count
