"""Leveled neuron values, the sign and 4-level quantizer, and random memory sets.

Vectors are plain integer numpy arrays. ``Levels`` records which value set a
vector is drawn from: ``{-1, +1}`` for binary neurons, ``{-3, -1, +1, +3}``
for quaternary ones.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, InfeasibleError, InvariantError


class Levels(enum.Enum):
    BINARY = 2
    QUATERNARY = 4

    def contains(self, arr: np.ndarray) -> bool:
        """True if every entry of ``arr`` is one of this level set's values."""
        a = np.abs(np.asarray(arr))
        if self is Levels.BINARY:
            return bool(np.all(a == 1))
        return bool(np.all((a == 1) | (a == 3)))

    @property
    def values(self) -> np.ndarray:
        if self is Levels.BINARY:
            return np.array([-1, 1], dtype=np.int64)
        return np.array([-3, -1, 1, 3], dtype=np.int64)

    @classmethod
    def from_count(cls, count: int) -> "Levels":
        try:
            return cls(int(count))
        except ValueError:
            raise ConfigError(f"unsupported level count {count!r}; use 2 or 4") from None


def sgn(x: float) -> int:
    """Sign with ``sgn(0) = +1``."""
    if not math.isfinite(x):
        raise DomainError(f"sgn of non-finite value {x!r}")
    return 1 if x >= 0 else -1


def quantize(x: float, t: float) -> int:
    """Four-level threshold map onto ``{-3, -1, +1, +3}``.

    Intervals: ``x < -t`` gives -3, ``-t <= x < 0`` gives -1, ``0 <= x < t``
    gives +1 and ``x >= t`` gives +3.
    """
    if not (t > 0 and math.isfinite(t)):
        raise ConfigError(f"quantizer threshold must be positive and finite, got {t!r}")
    if not math.isfinite(x):
        raise DomainError(f"quantize of non-finite value {x!r}")
    if x < -t:
        return -3
    if x < 0:
        return -1
    if x < t:
        return 1
    return 3


def sgn_array(x: np.ndarray) -> np.ndarray:
    """Vectorised :func:`sgn`."""
    return np.where(np.asarray(x) >= 0, 1, -1).astype(np.int64)


def quantize_array(x: np.ndarray, t: np.ndarray | float) -> np.ndarray:
    """Vectorised :func:`quantize`; ``t`` broadcasts against ``x``."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    out = np.full(np.broadcast(x, t).shape, 3, dtype=np.int64)
    out[x < t] = 1
    out[x < 0] = -1
    out[x < -t] = -3
    return out


@dataclass(frozen=True)
class QuantizerConfig:
    """How a neuron's activation becomes a level.

    For quaternary neurons the threshold grows with the number of neurons
    feeding the activation: ``t = theta * known`` where ``known`` is the
    fragment length at that generation step. Binary mode ignores ``theta``.
    """

    levels: Levels = Levels.BINARY
    theta: float = 1.0

    def __post_init__(self):
        if not (self.theta > 0 and math.isfinite(self.theta)):
            raise ConfigError(f"theta must be positive and finite, got {self.theta!r}")

    def threshold(self, known: int) -> float:
        return self.theta * known

    def apply(self, x: float, known: int) -> int:
        if self.levels is Levels.BINARY:
            return sgn(x)
        return quantize(x, self.threshold(known))

    def apply_rows(self, x: np.ndarray) -> np.ndarray:
        """Quantise activations of rows ``0..n-1``; row ``a`` has ``a`` known inputs.

        Row 0 has no inputs, so its threshold is meaningless; it is clipped to
        keep the quantizer well defined and callers never read that entry.
        """
        if self.levels is Levels.BINARY:
            return sgn_array(x)
        known = np.maximum(np.arange(len(x)), 1)
        return quantize_array(x, self.theta * known)


def check_levels(values, levels: Levels) -> np.ndarray:
    """Return ``values`` as an int64 array, raising if any entry is off-level."""
    arr = np.asarray(values)
    if arr.ndim != 1 or arr.shape[0] < 2:
        raise InvariantError(f"a level vector needs at least 2 components, got shape {arr.shape}")
    if not levels.contains(arr):
        raise InvariantError(f"values {arr.tolist()} not all in {levels.values.tolist()}")
    return arr.astype(np.int64)


def infer_levels(values) -> Levels:
    arr = np.asarray(values)
    for levels in (Levels.BINARY, Levels.QUATERNARY):
        if levels.contains(arr):
            return levels
    raise InvariantError(f"cannot infer a level set for {arr.tolist()}")


@dataclass(frozen=True)
class MemorySet:
    """An ordered collection of distinct memories sharing ``n`` and ``levels``.

    ``memories`` has shape ``(M, n)``. ``seed`` is ``None`` for sets built
    from explicit vectors.
    """

    memories: np.ndarray
    levels: Levels
    seed: int | None = None

    def __post_init__(self):
        mems = np.asarray(self.memories)
        if mems.ndim != 2 or mems.shape[0] < 1:
            raise InvariantError("a memory set needs at least one memory as a 2-D array")
        if mems.shape[1] < 2:
            raise InvariantError(f"memories need at least 2 components, got {mems.shape[1]}")
        if not self.levels.contains(mems):
            raise InvariantError(f"memories contain values outside {self.levels.values.tolist()}")
        if len({row.tobytes() for row in mems.astype(np.int64)}) != mems.shape[0]:
            raise InvariantError("memories must be pairwise distinct")
        mems = mems.astype(np.int64)
        mems.setflags(write=False)
        object.__setattr__(self, "memories", mems)

    @classmethod
    def from_vectors(cls, vectors, levels: Levels | None = None) -> "MemorySet":
        arr = np.atleast_2d(np.asarray(vectors))
        return cls(arr, levels or infer_levels(arr))

    @property
    def n(self) -> int:
        return self.memories.shape[1]

    def __len__(self) -> int:
        return self.memories.shape[0]

    def __iter__(self):
        return iter(self.memories)

    def __getitem__(self, i):
        return self.memories[i]

    def __eq__(self, other):
        if not isinstance(other, MemorySet):
            return NotImplemented
        return (
            self.levels is other.levels
            and self.seed == other.seed
            and np.array_equal(self.memories, other.memories)
        )

    __hash__ = None


def random_memory_set(n: int, M: int, levels: Levels = Levels.BINARY, seed: int = 0) -> MemorySet:
    """Draw ``M`` distinct random memories of length ``n``.

    Components are uniform over the level set; a draw that duplicates an
    earlier memory is discarded and redrawn. The result depends only on the
    arguments, and the set for ``M`` is a prefix of the set for ``M + 1``.
    """
    if n < 2:
        raise ConfigError(f"need n >= 2 neurons, got {n}")
    if M < 1:
        raise ConfigError(f"need at least one memory, got {M}")
    if M > len(levels.values) ** n:
        raise InfeasibleError(
            f"{M} distinct memories requested but only {len(levels.values)}**{n} exist"
        )
    rng = np.random.default_rng(seed)
    vals = levels.values
    seen: set[bytes] = set()
    out = []
    while len(out) < M:
        v = vals[rng.integers(0, len(vals), size=n)]
        key = v.tobytes()
        if key in seen:
            continue
        seen.add(key)
        out.append(v)
    return MemorySet(np.array(out), levels, seed)
