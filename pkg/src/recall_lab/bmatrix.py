"""Triangular split of a symmetric weight matrix and the fragment generator.

Neuron indices are 0-based. An :class:`UpdateOrder` ``pi`` lists neurons in
the order they receive values; position ``a`` in that list is the "permuted
coordinate" of neuron ``pi[a]``. The generator matrix ``B`` lives in permuted
coordinates and is strictly lower triangular there, so that
``B + B.T == T[pi][:, pi]``.

Generation regrows a memory one neuron per step: at step ``a`` (``a`` values
already known) the activation is ``sum_{b<a} B[a, b] * f[b]`` and the new
value is its sign (binary) or its 4-level quantisation with threshold
``theta * a`` (quaternary). Known values are never revisited.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvariantError, UsageError
from .memcore import Levels, QuantizerConfig, check_levels


def check_weights(T) -> np.ndarray:
    """Validate a symmetric, zero-diagonal weight matrix and return it as float."""
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] < 2:
        raise InvariantError(f"weights must be a square matrix with n >= 2, got shape {T.shape}")
    if not np.isfinite(T).all():
        raise InvariantError("weights contain non-finite entries")
    if not np.array_equal(T, T.T):
        raise InvariantError("weights are not symmetric")
    if np.any(np.diag(T) != 0):
        raise InvariantError("weights have a nonzero diagonal")
    return T


@dataclass(frozen=True)
class UpdateOrder:
    """Neuron visiting order ``pi`` whose first ``n_start`` entries are known."""

    pi: tuple[int, ...]
    n_start: int = 1

    def __post_init__(self):
        pi = tuple(int(p) for p in self.pi)
        n = len(pi)
        if sorted(pi) != list(range(n)):
            raise InvariantError(f"update order {pi} is not a permutation of 0..{n - 1}")
        if not 1 <= self.n_start < n:
            raise InvariantError(f"need 1 <= n_start < n, got n_start={self.n_start}, n={n}")
        object.__setattr__(self, "pi", pi)

    @classmethod
    def identity(cls, n: int, n_start: int = 1) -> "UpdateOrder":
        return cls(tuple(range(n)), n_start)

    @property
    def n(self) -> int:
        return len(self.pi)

    @property
    def start_sites(self) -> tuple[int, ...]:
        return self.pi[: self.n_start]

    @property
    def index(self) -> np.ndarray:
        return np.asarray(self.pi, dtype=np.int64)

    def permute(self, vector) -> np.ndarray:
        """Natural coordinates -> update-order coordinates."""
        return np.asarray(vector)[self.index]

    def unpermute(self, vector) -> np.ndarray:
        """Update-order coordinates -> natural coordinates."""
        vector = np.asarray(vector)
        out = np.empty_like(vector)
        out[self.index] = vector
        return out


@dataclass(frozen=True)
class TriangularGenerator:
    """Strictly lower-triangular generator matrix under an update order.

    The matrix is held as ``units`` times a scalar ``scale`` (``B = scale *
    units``). Delta-trained generators keep ``units`` integral with ``scale``
    equal to the learning constant, which makes every activation an exact
    integer multiple of the step size and keeps sign decisions at zero
    reproducible.
    """

    order: UpdateOrder
    units: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        units = np.array(self.units, dtype=float)
        n = self.order.n
        if units.shape != (n, n):
            raise InvariantError(f"generator shape {units.shape} does not match n={n}")
        if np.any(np.triu(units) != 0):
            raise InvariantError("generator matrix is not strictly lower triangular")
        units.setflags(write=False)
        object.__setattr__(self, "units", units)

    @property
    def n(self) -> int:
        return self.order.n

    @property
    def B(self) -> np.ndarray:
        return self.scale * self.units

    def activations(self, prefix: np.ndarray) -> np.ndarray:
        """Row activations ``B @ prefix`` for a full vector in update order."""
        return self.scale * (self.units @ prefix)

    def symmetric(self) -> np.ndarray:
        """The weight matrix ``T`` this generator views, in natural coordinates."""
        P = self.B + self.B.T
        idx = self.order.index
        T = np.empty_like(P)
        T[np.ix_(idx, idx)] = P
        return T


@dataclass(frozen=True)
class Fragment:
    """Known values at the first ``len(values)`` neurons of ``order``."""

    order: UpdateOrder
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if not 1 <= len(values) <= self.order.n:
            raise InvariantError(f"fragment length {len(values)} outside 1..{self.order.n}")
        object.__setattr__(self, "values", values)

    @property
    def known(self) -> int:
        return len(self.values)

    @classmethod
    def from_memory(cls, memory, order: UpdateOrder, known: int | None = None) -> "Fragment":
        known = order.n_start if known is None else known
        return cls(order, tuple(order.permute(memory)[:known]))


def split_lower(T, order: UpdateOrder, *, validate: bool = True) -> TriangularGenerator:
    """Split symmetric ``T`` into ``B`` with ``B + B.T == T[pi][:, pi]``.

    ``validate=False`` skips the symmetry check for callers that already ran
    :func:`check_weights` on ``T``.
    """
    T = check_weights(T) if validate else np.asarray(T, dtype=float)
    if T.shape[0] != order.n:
        raise UsageError(f"order is for n={order.n} but weights are {T.shape[0]}x{T.shape[0]}")
    idx = order.index
    return TriangularGenerator(order, np.tril(T[np.ix_(idx, idx)], -1))


def generate(g: TriangularGenerator, frag: Fragment, q: QuantizerConfig = QuantizerConfig()) -> np.ndarray:
    """Grow ``frag`` to a full vector, returned in natural neuron coordinates."""
    if frag.order != g.order:
        raise UsageError("fragment and generator use different update orders")
    levels = q.levels
    if levels is Levels.BINARY and not set(frag.values) <= {-1, 1}:
        raise UsageError(f"fragment {frag.values} is not binary")
    if not set(frag.values) <= {-3, -1, 1, 3}:
        raise UsageError(f"fragment {frag.values} is off-level")
    n = g.n
    f = np.zeros(n, dtype=np.int64)
    f[: frag.known] = frag.values
    units = g.units
    for a in range(frag.known, n):
        x = g.scale * float(units[a, :a] @ f[:a])
        f[a] = q.apply(x, a)
    return g.order.unpermute(f)


def row_mismatches(g: TriangularGenerator, memory, q: QuantizerConfig) -> tuple[np.ndarray, np.ndarray]:
    """Teacher-forced check of every generated row.

    Feeds the true memory as the prefix of every row at once. Returns
    ``(generated, target)`` in update order; rows before ``n_start`` are
    copied from the target. The memory is retrieved exactly when the two
    agree, because a free-running generation that never errs sees the same
    prefixes as teacher forcing.
    """
    target = g.order.permute(memory).astype(np.int64)
    generated = q.apply_rows(g.activations(target))
    generated[: g.order.n_start] = target[: g.order.n_start]
    return generated, target


def retrieves(
    g: TriangularGenerator,
    memory,
    q: QuantizerConfig = QuantizerConfig(),
    sites: Sequence[int] | None = None,
) -> bool:
    """True iff generating from ``memory``'s values at the start sites reproduces it."""
    memory = check_levels(memory, q.levels)
    if sites is not None and tuple(sorted(sites)) != tuple(sorted(g.order.start_sites)):
        raise UsageError(f"sites {tuple(sites)} are not the generator's start sites {g.order.start_sites}")
    out = generate(g, Fragment.from_memory(memory, g.order), q)
    return bool(np.array_equal(out, memory))
