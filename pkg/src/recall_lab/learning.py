"""Hebbian, Widrow-Hoff and delta-rule trainers."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from . import _kernels
from .bmatrix import TriangularGenerator, UpdateOrder, row_mismatches
from .errors import ConfigError, UsageError
from .memcore import Levels, MemorySet, QuantizerConfig, check_levels

if TYPE_CHECKING:
    from .activesites import SiteAssignment


@dataclass(frozen=True)
class LearningConfig:
    eta: float = 0.1
    max_passes_per_memory: int = 50
    max_epochs: int = 100
    wh_error_tolerance: float = 0.01
    quantizer: QuantizerConfig = field(default_factory=QuantizerConfig)

    def __post_init__(self):
        if not (self.eta > 0 and math.isfinite(self.eta)):
            raise ConfigError(f"eta must be positive, got {self.eta!r}")
        if self.max_passes_per_memory < 1 or self.max_epochs < 1:
            raise ConfigError("pass and epoch limits must be at least 1")
        if not self.wh_error_tolerance >= 0:
            raise ConfigError(f"wh_error_tolerance must be >= 0, got {self.wh_error_tolerance!r}")


@dataclass
class TrainReport:
    epochs_run: int
    converged: bool
    per_memory_converged: list[bool]
    final_error: float | None = None


def hebbian_train(memories: MemorySet) -> np.ndarray:
    """Sum of outer products ``m m^T`` with the diagonal zeroed."""
    X = np.asarray(memories.memories, dtype=float)
    T = X.T @ X
    np.fill_diagonal(T, 0.0)
    return T


def widrow_hoff_step(W: np.ndarray, x, eta: float) -> np.ndarray:
    """One LMS update ``W + eta * (x - W x) x^T``."""
    x = np.asarray(x, dtype=float)
    return W + eta * np.outer(x - W @ x, x)


def widrow_hoff_train(memories: MemorySet, cfg: LearningConfig = LearningConfig()) -> tuple[np.ndarray, TrainReport]:
    """Iterate LMS updates over the memories until every residual is small.

    Stops once ``max |x - W x|`` over all memories is at most
    ``cfg.wh_error_tolerance`` or after ``cfg.max_epochs`` epochs. The raw
    ``W`` is generally asymmetric; the returned weights are
    ``(W + W^T) / 2`` with a zero diagonal so they can be split into a
    generator.
    """
    if memories.levels is not Levels.BINARY:
        raise UsageError("Widrow-Hoff training is defined for binary memories only")
    X = np.asarray(memories.memories, dtype=float)
    n = memories.n
    W = np.zeros((n, n))
    epochs = 0
    residuals = np.abs(X - X @ W.T).max(axis=1)
    for _ in range(cfg.max_epochs):
        epochs += 1
        for x in X:
            W = widrow_hoff_step(W, x, cfg.eta)
        residuals = np.abs(X - X @ W.T).max(axis=1)
        if residuals.max() <= cfg.wh_error_tolerance:
            break
    per_memory = [bool(r <= cfg.wh_error_tolerance) for r in residuals]
    report = TrainReport(epochs, all(per_memory), per_memory, float(residuals.max()))
    T = (W + W.T) / 2
    np.fill_diagonal(T, 0.0)
    return T, report


def _check_memory_levels(memory, q: QuantizerConfig) -> np.ndarray:
    arr = np.asarray(memory)
    if not q.levels.contains(arr):
        raise UsageError(f"memory {arr.tolist()} does not match {q.levels.name.lower()} quantizer levels")
    return check_levels(arr, q.levels)


def delta_train_memory(
    g: TriangularGenerator, memory, cfg: LearningConfig = LearningConfig()
) -> tuple[TriangularGenerator, bool]:
    """Row-wise delta rule for one memory on one generator.

    Each pass feeds the memory's true values as the prefix of every row. A
    row whose generated value ``v`` differs from its target moves by
    ``sign(target - v) * memory_k * eta`` in every column ``k`` before it;
    rows already correct are left alone. Passes stop as soon as no row errs,
    which is exactly when free-running generation from the start sites
    reproduces the memory.

    Returns the updated generator and whether the memory is now retrieved.
    A generator that already retrieves the memory is returned unchanged.
    """
    memory = _check_memory_levels(memory, cfg.quantizer)
    if memory.shape[0] != g.n:
        raise UsageError(f"memory length {memory.shape[0]} does not match generator n={g.n}")
    q = cfg.quantizer
    gen, target = row_mismatches(g, memory, q)
    if np.array_equal(gen, target):
        return g, True
    units = g.units * (g.scale / cfg.eta) if g.scale != cfg.eta else g.units.copy()
    cur = TriangularGenerator(g.order, units, cfg.eta)
    for _ in range(cfg.max_passes_per_memory):
        gen, target = row_mismatches(cur, memory, q)
        wrong = gen != target
        if not wrong.any():
            return cur, True
        step = np.sign(target - gen) * wrong
        units = cur.units + np.tril(np.outer(step, target), -1)
        cur = TriangularGenerator(g.order, units, cfg.eta)
    gen, target = row_mismatches(cur, memory, q)
    return cur, bool(np.array_equal(gen, target))


def _generator_from_store(K: np.ndarray, order: UpdateOrder, scale: float) -> TriangularGenerator:
    idx = order.index
    return TriangularGenerator(order, np.tril(K[np.ix_(idx, idx)], -1).astype(float), scale)


def _store_from_generator(g: TriangularGenerator) -> np.ndarray:
    idx = g.order.index
    P = g.units + g.units.T
    K = np.empty_like(P)
    K[np.ix_(idx, idx)] = P
    return K


def delta_train_all(
    memories: MemorySet,
    assignment: "SiteAssignment",
    cfg: LearningConfig = LearningConfig(),
    *,
    compiled: bool = True,
) -> tuple[list[TriangularGenerator], TrainReport]:
    """Delta-train every memory into one shared symmetric store.

    The store starts at zero. Each memory sees the store through its own
    update order (derived from its active sites) as a triangular generator;
    its row updates are written back symmetrically, so later memories see
    them too. Epochs present memories in set order and end with a
    verification sweep; training stops once every memory is retrieved or
    after ``cfg.max_epochs`` epochs.

    Returns one generator per memory, all views of the final store, and a
    report. ``compiled=False`` runs the same schedule through
    :func:`delta_train_memory` (slow; used to cross-check the kernel).
    """
    M, n = len(memories), memories.n
    if len(assignment.assignment) != M:
        raise UsageError(f"site assignment covers {len(assignment.assignment)} memories, expected {M}")
    if memories.levels is not cfg.quantizer.levels:
        raise UsageError("memory levels do not match the quantizer levels")
    orders = assignment.orders(n)
    if compiled:
        K = np.zeros((n, n), dtype=np.int64)
        pis = np.array([o.pi for o in orders], dtype=np.int64)
        mems_p = np.array([o.permute(m) for o, m in zip(orders, memories)], dtype=np.int64)
        n_start = np.array([o.n_start for o in orders], dtype=np.int64)
        ok = np.zeros(M, dtype=np.bool_)
        epochs = _kernels.delta_epochs(
            K, mems_p, pis, n_start,
            memories.levels is Levels.QUATERNARY,
            float(cfg.eta), float(cfg.quantizer.theta),
            int(cfg.max_passes_per_memory), int(cfg.max_epochs), ok,
        )
        per_memory = [bool(v) for v in ok]
        store = K.astype(float)
    else:
        store = np.zeros((n, n))
        epochs = 0
        per_memory = [False] * M
        for _ in range(cfg.max_epochs):
            epochs += 1
            for order, memory in zip(orders, memories):
                g, _ = delta_train_memory(_generator_from_store(store, order, cfg.eta), memory, cfg)
                store = _store_from_generator(g)
            per_memory = []
            for order, memory in zip(orders, memories):
                gen, target = row_mismatches(_generator_from_store(store, order, cfg.eta), memory, cfg.quantizer)
                per_memory.append(bool(np.array_equal(gen, target)))
            if all(per_memory):
                break
    generators = [_generator_from_store(store, o, cfg.eta) for o in orders]
    return generators, TrainReport(epochs, all(per_memory), per_memory)
