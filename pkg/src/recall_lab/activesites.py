"""Choosing active sites per memory and the update orders they induce."""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .bmatrix import UpdateOrder, check_weights
from .errors import CapacityError, ConfigError, InvariantError, UsageError
from .memcore import MemorySet


def score_sites(T, memory) -> np.ndarray:
    """Per-neuron alignment ``m_i * (T m)_i`` of the field with the memory.

    Larger means neuron ``i`` is more strongly driven toward its own value.
    """
    T = np.asarray(T, dtype=float)
    m = np.asarray(memory, dtype=float)
    if T.shape != (m.shape[0], m.shape[0]):
        raise UsageError(f"weights {T.shape} do not match memory length {m.shape[0]}")
    return m * (T @ m)


def update_order_from_sites(sites, n: int) -> UpdateOrder:
    """Visit the sites first (ascending), then the rest by mean distance to them.

    Remaining neurons are ranked by their mean absolute index distance to
    the site set, ties going to the lower index.
    """
    sites = tuple(sorted({int(s) for s in sites}))
    if not sites or len(sites) >= n:
        raise UsageError(f"need 1 <= |sites| < n, got {len(sites)} sites for n={n}")
    if sites[0] < 0 or sites[-1] >= n:
        raise UsageError(f"sites {list(sites)} out of range 0..{n - 1}")
    return _order_for(sites, n)


@functools.lru_cache(maxsize=4096)
def _order_for(sites: tuple[int, ...], n: int) -> UpdateOrder:
    rest = np.setdiff1d(np.arange(n), sites)
    # integer sum instead of the mean: same ranking, exact ties
    dist = np.abs(rest[:, None] - np.array(sites)[None, :]).sum(axis=1)
    ranked = rest[np.lexsort((rest, dist))]
    return UpdateOrder(sites + tuple(int(j) for j in ranked), len(sites))


@dataclass(frozen=True)
class SiteAssignment:
    """Active sites per memory, in memory order; each entry is a sorted tuple."""

    sites_per_memory: int
    assignment: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        s = self.sites_per_memory
        if s < 1:
            raise InvariantError(f"sites_per_memory must be >= 1, got {s}")
        entries = tuple(tuple(sorted(int(i) for i in e)) for e in self.assignment)
        for e in entries:
            if len(e) != s or len(set(e)) != s:
                raise InvariantError(f"entry {e} does not hold {s} distinct sites")
        if len(set(entries)) != len(entries):
            raise InvariantError("site assignments are not unique across memories")
        object.__setattr__(self, "assignment", entries)

    def orders(self, n: int) -> list[UpdateOrder]:
        return [update_order_from_sites(e, n) for e in self.assignment]


def max_memories(n: int, s: int) -> int:
    """Most memories that can hold unique ``s``-site combinations on ``n`` neurons."""
    return math.comb(n, s)


def assign_sites(memories: MemorySet, T, s: int = 1) -> SiteAssignment:
    """Greedy, in memory order: each memory takes its best admissible site set.

    Neurons are ranked per memory by :func:`score_sites` (descending, lower
    index first on ties). Candidate sets are the ``s``-combinations of that
    ranking in lexicographic rank order, so the first candidate is the
    memory's top ``s`` sites; a candidate is admissible if no earlier memory
    already holds that exact set.

    Raises
    ------
    CapacityError
        If there are more memories than unique site sets (``C(n, s)``).
    """
    if s < 1:
        raise ConfigError(f"sites per memory must be >= 1, got {s}")
    n, M = memories.n, len(memories)
    if s >= n:
        raise ConfigError(f"sites per memory must be below n={n}, got {s}")
    cap = max_memories(n, s)
    if M > cap:
        raise CapacityError(
            f"{M} memories exceed the {cap} unique {s}-site active-site sets on {n} neurons"
        )
    T = check_weights(T)
    taken: set[tuple[int, ...]] = set()
    out = []
    for memory in memories:
        score = score_sites(T, memory)
        ranked = np.lexsort((np.arange(n), -score)).tolist()
        for combo in itertools.combinations(ranked, s):
            key = tuple(sorted(combo))
            if key not in taken:
                taken.add(key)
                out.append(key)
                break
    return SiteAssignment(s, tuple(out))
