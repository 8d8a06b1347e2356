"""Compiled inner loop for delta-rule training on a shared weight store.

Mirrors :func:`recall_lab.learning.delta_train_memory` applied memory by
memory; ``tests/test_learning.py`` checks the two agree bit for bit.
Weights are integer counts of the learning step ``eta``.
"""
from numba import njit


@njit(cache=True)
def _level(x, known, quaternary, theta):
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


@njit(cache=True)
def _train_one(K, pi, mp, n_start, quaternary, eta, theta, max_passes):
    n = mp.shape[0]
    for _ in range(max_passes):
        nbad = 0
        for a in range(n_start, n):
            ia = pi[a]
            s = 0
            for b in range(a):
                s += K[ia, pi[b]] * mp[b]
            v = _level(eta * s, a, quaternary, theta)
            if v != mp[a]:
                nbad += 1
                d = 1 if mp[a] > v else -1
                for b in range(a):
                    ib = pi[b]
                    K[ia, ib] += d * mp[b]
                    K[ib, ia] += d * mp[b]
        if nbad == 0:
            return True
    return False


@njit(cache=True)
def _recalls(K, pi, mp, n_start, quaternary, eta, theta):
    n = mp.shape[0]
    for a in range(n_start, n):
        ia = pi[a]
        s = 0
        for b in range(a):
            s += K[ia, pi[b]] * mp[b]
        if _level(eta * s, a, quaternary, theta) != mp[a]:
            return False
    return True


@njit(cache=True)
def delta_epochs(K, mems_p, orders, n_start, quaternary, eta, theta, max_passes, max_epochs, ok):
    """Train every memory against ``K`` in place; returns epochs run.

    ``mems_p[m]`` is memory ``m`` in its own update order ``orders[m]``.
    ``ok`` receives the final verification result per memory.
    """
    M = mems_p.shape[0]
    epochs = 0
    for _ in range(max_epochs):
        epochs += 1
        for m in range(M):
            _train_one(K, orders[m], mems_p[m], n_start[m], quaternary, eta, theta, max_passes)
        all_ok = True
        for m in range(M):
            ok[m] = _recalls(K, orders[m], mems_p[m], n_start[m], quaternary, eta, theta)
            all_ok = all_ok and ok[m]
        if all_ok:
            break
    return epochs


