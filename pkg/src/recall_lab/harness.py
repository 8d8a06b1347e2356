"""Seeded capacity experiments and their CSV output.

A trial draws ``M`` random memories (seed ``base_seed + trial_index``),
trains a network with the chosen rule, assigns active sites, and counts the
memories regenerated exactly from their sites. A sweep repeats this for a
range of ``M`` and records the mean and population standard deviation.
"""
from __future__ import annotations

import csv
import enum
import io
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .activesites import SiteAssignment, assign_sites, max_memories
from .bmatrix import TriangularGenerator, retrieves, split_lower
from .errors import CapacityError, ConfigError
from .learning import LearningConfig, TrainReport, delta_train_all, hebbian_train, widrow_hoff_train
from .memcore import Levels, MemorySet, QuantizerConfig, random_memory_set

CSV_HEADER = ("trained", "mean_retrieved", "std_retrieved", "trials")


class Rule(enum.Enum):
    HEBBIAN = "hebbian"
    WIDROW_HOFF = "widrow-hoff"
    DELTA = "delta"


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 16
    levels: Levels = Levels.BINARY
    rule: Rule = Rule.DELTA
    sites_per_memory: int = 1
    learning: LearningConfig = field(default_factory=LearningConfig)
    trials: int = 50
    base_seed: int = 42
    memory_range: tuple[int, int] = (1, 16)

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"need at least 2 neurons, got {self.n}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not 1 <= self.sites_per_memory < self.n:
            raise ConfigError(f"sites per memory must be in 1..{self.n - 1}, got {self.sites_per_memory}")
        lo, hi = self.memory_range
        if not 1 <= lo <= hi:
            raise ConfigError(f"memory range must satisfy 1 <= min <= max, got {self.memory_range}")
        if self.rule is Rule.WIDROW_HOFF and self.levels is not Levels.BINARY:
            raise ConfigError("the Widrow-Hoff rule supports binary neurons only")
        if self.learning.quantizer.levels is not self.levels:
            object.__setattr__(
                self, "learning",
                replace(self.learning, quantizer=replace(self.learning.quantizer, levels=self.levels)),
            )

    @property
    def quantizer(self) -> QuantizerConfig:
        return self.learning.quantizer

    def max_feasible(self) -> int:
        """Largest ``M`` the site assignment (and the level set) can hold."""
        return min(max_memories(self.n, self.sites_per_memory), len(self.levels.values) ** self.n)


@dataclass(frozen=True)
class CapacityPoint:
    trained: int
    mean_retrieved: float
    std_retrieved: float
    trials: int


@dataclass
class CapacityCurve:
    points: list[CapacityPoint] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list, compare=False)

    def peak(self) -> CapacityPoint:
        """Point with the highest mean; the smallest ``M`` wins ties."""
        if not self.points:
            raise ValueError("empty curve has no peak")
        return max(self.points, key=lambda p: (p.mean_retrieved, -p.trained))

    def means(self) -> np.ndarray:
        return np.array([p.mean_retrieved for p in self.points])


@dataclass
class TrialResult:
    """Everything one trial produced; ``retrieved`` is the trial's score."""

    memories: MemorySet
    assignment: SiteAssignment
    generators: list[TriangularGenerator]
    verdicts: list[bool]
    report: TrainReport | None = None

    @property
    def retrieved(self) -> int:
        return sum(self.verdicts)


def train_and_recall(memories: MemorySet, cfg: ExperimentConfig) -> TrialResult:
    """Train ``memories`` with ``cfg.rule`` and test each from its active sites.

    Sites are always scored on a Hebbian-style matrix: the Hebbian weights
    themselves for the Hebbian and delta rules, the symmetrised LMS weights
    for Widrow-Hoff.
    """
    report = None
    if cfg.rule is Rule.DELTA:
        assignment = assign_sites(memories, hebbian_train(memories), cfg.sites_per_memory)
        generators, report = delta_train_all(memories, assignment, cfg.learning)
    else:
        if cfg.rule is Rule.HEBBIAN:
            T = hebbian_train(memories)
        else:
            T, report = widrow_hoff_train(memories, cfg.learning)
        assignment = assign_sites(memories, T, cfg.sites_per_memory)
        generators = [split_lower(T, order, validate=False) for order in assignment.orders(memories.n)]
    verdicts = [retrieves(g, m, cfg.quantizer) for g, m in zip(generators, memories)]
    return TrialResult(memories, assignment, generators, verdicts, report)


def run_trial_detailed(cfg: ExperimentConfig, M: int, trial_index: int) -> TrialResult:
    if M > cfg.max_feasible():
        raise CapacityError(
            f"M={M} exceeds the {cfg.max_feasible()} memories supported by "
            f"n={cfg.n}, {cfg.sites_per_memory} site(s) per memory"
        )
    memories = random_memory_set(cfg.n, M, cfg.levels, cfg.base_seed + trial_index)
    return train_and_recall(memories, cfg)


def run_trial(cfg: ExperimentConfig, M: int, trial_index: int) -> int:
    """Number of the ``M`` trained memories retrieved exactly in one trial."""
    return run_trial_detailed(cfg, M, trial_index).retrieved


def _run_point(args):
    cfg, M = args
    return [run_trial(cfg, M, k) for k in range(cfg.trials)]


def run_capacity_sweep(cfg: ExperimentConfig, workers: int | None = 1) -> CapacityCurve:
    """Mean/std of retrieved memories for each ``M`` in ``cfg.memory_range``.

    ``M`` values past what unique active sites allow are dropped with a
    warning rather than failing the sweep. ``workers > 1`` spreads points
    over processes; results do not depend on it.
    """
    lo, hi = cfg.memory_range
    curve = CapacityCurve()
    cap = cfg.max_feasible()
    if hi > cap:
        msg = f"memory range truncated at M={cap}: unique active sites exhausted for n={cfg.n}, s={cfg.sites_per_memory}"
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
        curve.warnings.append(msg)
        hi = cap
    Ms = list(range(lo, hi + 1))
    jobs = [(cfg, M) for M in Ms]
    if workers is not None and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_point, jobs))
    else:
        results = [_run_point(j) for j in jobs]
    for M, counts in zip(Ms, results):
        arr = np.asarray(counts, dtype=float)
        curve.points.append(CapacityPoint(M, float(arr.mean()), float(arr.std()), len(counts)))
    return curve


def format_curve(curve: CapacityCurve) -> str:
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for p in curve.points:
        buf.write(f"{p.trained:d},{p.mean_retrieved:.6f},{p.std_retrieved:.6f},{p.trials:d}\n")
    return buf.getvalue()


def write_curve(curve: CapacityCurve, destination) -> None:
    """Write ``curve`` as CSV to a path or an open text file."""
    text = format_curve(curve)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    with open(os.fspath(destination), "w", newline="") as fh:
        fh.write(text)


def parse_curve(text: str) -> CapacityCurve:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {rows[0] if rows else None!r}")
    points = [CapacityPoint(int(r[0]), float(r[1]), float(r[2]), int(r[3])) for r in rows[1:] if r]
    return CapacityCurve(points)


def read_curve(source) -> CapacityCurve:
    if hasattr(source, "read"):
        return parse_curve(source.read())
    with open(os.fspath(source), newline="") as fh:
        return parse_curve(fh.read())
