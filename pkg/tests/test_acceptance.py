"""Acceptance criteria: figure-level capacity results plus the property suite.

Every criterion records one PASS/FAIL line, printed in the terminal summary.
Sweeps use 30 trials, base seed 42, spec-default learning parameters.
"""
import itertools
import time

import numpy as np
import pytest

from oracles import hebbian_trial_count
from recall_lab.activesites import update_order_from_sites
from recall_lab.bmatrix import Fragment, TriangularGenerator, UpdateOrder, generate, retrieves, split_lower
from recall_lab.errors import CapacityError
from recall_lab.harness import ExperimentConfig, Rule, format_curve, run_capacity_sweep, run_trial, train_and_recall
from recall_lab.learning import LearningConfig, delta_train_memory, hebbian_train, widrow_hoff_step
from recall_lab.memcore import Levels, MemorySet, QuantizerConfig, quantize, random_memory_set

TRIALS = 30
SEED = 42
B, Q = Levels.BINARY, Levels.QUATERNARY

CONFIGS = {
    "fig1": ExperimentConfig(n=12, levels=B, rule=Rule.WIDROW_HOFF, trials=TRIALS, base_seed=SEED, memory_range=(1, 12)),
    "fig2": ExperimentConfig(n=16, levels=B, rule=Rule.DELTA, trials=TRIALS, base_seed=SEED, memory_range=(1, 16)),
    "fig3": ExperimentConfig(n=32, levels=B, rule=Rule.DELTA, trials=TRIALS, base_seed=SEED, memory_range=(1, 32)),
    "fig4": ExperimentConfig(n=16, levels=Q, rule=Rule.DELTA, trials=TRIALS, base_seed=SEED, memory_range=(1, 16)),
    "fig5": ExperimentConfig(n=32, levels=Q, rule=Rule.DELTA, trials=TRIALS, base_seed=SEED, memory_range=(1, 32)),
    "fig6": ExperimentConfig(n=16, levels=Q, rule=Rule.DELTA, sites_per_memory=2, trials=TRIALS, base_seed=SEED, memory_range=(1, 16)),
    "fig7": ExperimentConfig(n=16, levels=Q, rule=Rule.DELTA, sites_per_memory=3, trials=TRIALS, base_seed=SEED, memory_range=(1, 16)),
    "hebb16": ExperimentConfig(n=16, levels=B, rule=Rule.HEBBIAN, trials=TRIALS, base_seed=SEED, memory_range=(1, 16)),
}


@pytest.fixture(scope="module")
def sweeps():
    cache = {}

    def get(name):
        if name not in cache:
            start = time.perf_counter()
            curve = run_capacity_sweep(CONFIGS[name])
            cache[name] = (curve, time.perf_counter() - start)
        return cache[name]

    return get


def record(log, number, ok, detail):
    log.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


def fmt(curve):
    return " ".join(f"{p.mean_retrieved:.2f}" for p in curve.points)


def test_criterion_1_widrow_hoff_never_exceeds_three(sweeps, acceptance_log):
    curve, secs = sweeps("fig1")
    worst = max(curve.means())
    ok = worst <= 3.0 and secs < 30
    record(acceptance_log, 1, ok, f"n=12 Widrow-Hoff max mean retrieved {worst:.2f} (<= 3.0), {secs:.1f}s (< 30s)")
    assert worst <= 3.0, fmt(curve)
    assert secs < 30


def test_criterion_2_binary_delta_n16(sweeps, acceptance_log):
    curve, secs = sweeps("fig2")
    peak = curve.peak()
    ok = 7.5 <= peak.mean_retrieved <= 10.0 and 8 <= peak.trained <= 12 and secs < 120
    record(acceptance_log, 2, ok, f"n=16 binary delta peak {peak.mean_retrieved:.2f} at M*={peak.trained} "
           f"(band [7.5, 10.0], M* in [8, 12]), {secs:.1f}s (< 120s)")
    assert 7.5 <= peak.mean_retrieved <= 10.0, fmt(curve)
    assert 8 <= peak.trained <= 12, fmt(curve)
    assert secs < 120


def test_criterion_3_binary_delta_n32(sweeps, acceptance_log):
    curve, secs = sweeps("fig3")
    peak = curve.peak()
    ok = 13 <= peak.mean_retrieved <= 19 and secs < 300
    record(acceptance_log, 3, ok, f"n=32 binary delta peak {peak.mean_retrieved:.2f} at M*={peak.trained} "
           f"(band [13, 19]), {secs:.1f}s (< 300s)")
    assert 13 <= peak.mean_retrieved <= 19, fmt(curve)
    assert secs < 300


def test_criterion_4_quaternary_single_site(sweeps, acceptance_log):
    q16 = sweeps("fig4")[0].peak().mean_retrieved
    q32 = sweeps("fig5")[0].peak().mean_retrieved
    b16 = sweeps("fig2")[0].peak().mean_retrieved
    b32 = sweeps("fig3")[0].peak().mean_retrieved
    checks = [5.0 <= q16 <= 8.0, 10.5 <= q32 <= 15.5, q16 < b16, q32 < b32]
    record(acceptance_log, 4, all(checks),
           f"quaternary peaks n=16 {q16:.2f} (band [5.0, 8.0], binary {b16:.2f}), "
           f"n=32 {q32:.2f} (band [10.5, 15.5], binary {b32:.2f})")
    assert checks == [True] * 4


def test_criterion_5_more_sites_more_recall(sweeps, acceptance_log):
    p1, p2, p3 = (sweeps(k)[0].peak().mean_retrieved for k in ("fig4", "fig6", "fig7"))
    checks = [p1 <= p2 <= p3, 6.0 <= p2 <= 9.0, 7.5 <= p3 <= 10.5]
    record(acceptance_log, 5, all(checks),
           f"n=16 quaternary peaks s=1 {p1:.2f} <= s=2 {p2:.2f} (band [6.0, 9.0]) <= s=3 {p3:.2f} (band [7.5, 10.5])")
    assert checks == [True] * 3


def test_criterion_6_delta_doubles_hebbian(sweeps, acceptance_log):
    delta = sweeps("fig2")[0].peak().mean_retrieved
    hebb = sweeps("hebb16")[0].peak().mean_retrieved
    ok = delta >= 2 * hebb
    record(acceptance_log, 6, ok, f"n=16 binary delta peak {delta:.2f} >= 2 x Hebbian peak {hebb:.2f}")
    assert ok


def test_criterion_7_single_site_cap(acceptance_log):
    cfg = ExperimentConfig(n=16, levels=B, rule=Rule.DELTA, trials=1)
    try:
        run_trial(cfg, 17, 0)
    except CapacityError as exc:
        ok, detail = True, str(exc)
    else:
        ok, detail = False, "no error raised"
    record(acceptance_log, 7, ok, f"n=16, s=1, M=17 -> CapacityError ({detail})")
    assert ok
    assert run_trial(cfg, 16, 0) >= 0


def _random_symmetric(rng, n):
    A = np.triu(rng.integers(-6, 7, size=(n, n)).astype(float), 1)
    if rng.random() < 0.5:
        A = np.triu(rng.normal(size=(n, n)), 1)
    return A + A.T


def _random_order(rng, n):
    return UpdateOrder(tuple(int(i) for i in rng.permutation(n)), int(rng.integers(1, n)))


def test_criterion_8_property_suite(acceptance_log):
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    failures = []

    for _ in range(1000):
        n = int(rng.integers(2, 17))
        T = _random_symmetric(rng, n)
        order = _random_order(rng, n)
        g = split_lower(T, order)
        if not np.array_equal(g.B + g.B.T, T[np.ix_(order.index, order.index)]):
            failures.append("reconstruction")

    for _ in range(1000):
        n = int(rng.integers(2, 17))
        quaternary = bool(rng.random() < 0.5)
        lv = Q.values if quaternary else B.values
        order = _random_order(rng, n)
        k = int(rng.integers(1, n + 1))
        values = tuple(int(v) for v in rng.choice(lv, size=k))
        q = QuantizerConfig(Q if quaternary else B, 1.0)
        out = generate(split_lower(_random_symmetric(rng, n), order), Fragment(order, values), q)
        if tuple(out[order.index[:k]]) != values:
            failures.append("prefix immutability")

    for _ in range(500):
        n = int(rng.integers(2, 13))
        quaternary = bool(rng.random() < 0.5)
        levels = Q if quaternary else B
        cfg = LearningConfig(eta=0.1, max_passes_per_memory=int(rng.integers(1, 20)),
                             quantizer=QuantizerConfig(levels, 1.0))
        order = _random_order(rng, n)
        units = np.tril(rng.integers(-3, 4, size=(n, n)), -1).astype(float)
        m = rng.choice(levels.values, size=n)
        trained, ok = delta_train_memory(TriangularGenerator(order, units, 0.1), m, cfg)
        if ok != retrieves(trained, m, cfg.quantizer):
            failures.append("delta self-consistency")
        if ok:
            again, ok2 = delta_train_memory(trained, m, cfg)
            if not (ok2 and np.array_equal(again.units, trained.units) and again.scale == trained.scale):
                failures.append("delta no-op")

    for _ in range(100):
        n = int(rng.integers(2, 33))
        x = rng.choice([-1.0, 1.0], size=n)
        W = widrow_hoff_step(np.zeros((n, n)), x, 1.0 / n)
        if np.abs(W @ x - x).max() > 1e-12:
            failures.append("WH one-shot fixed point")

    for n in range(2, 11):
        for m in itertools.product([-1, 1], repeat=n):
            T = hebbian_train(MemorySet.from_vectors([m]))
            for site in range(n):
                if not retrieves(split_lower(T, update_order_from_sites([site], n), validate=False), m):
                    failures.append("single-memory recall")

    xs = rng.normal(scale=10, size=(10_000, 2))
    ts = rng.uniform(1e-3, 20, size=10_000)
    for (x, y), t in zip(xs, ts):
        lo, hi = min(x, y), max(x, y)
        if quantize(lo, t) > quantize(hi, t):
            failures.append("quantizer monotonicity")

    oracle_sets = 0
    for n in range(2, 7):
        cfg = ExperimentConfig(n=n, rule=Rule.HEBBIAN)
        vectors = list(itertools.product([-1, 1], repeat=n))
        for M in range(1, min(3, n) + 1):
            for combo in itertools.combinations(vectors, M):
                oracle_sets += 1
                got = train_and_recall(MemorySet(np.array(combo), B), cfg).retrieved
                if got != hebbian_trial_count(combo):
                    failures.append(f"oracle equivalence {combo}")

    secs = time.perf_counter() - start
    ok = not failures and secs < 60
    record(acceptance_log, 8, ok, f"property suite: {len(failures)} failures "
           f"({oracle_sets} oracle memory sets), {secs:.1f}s (< 60s)")
    assert not failures, sorted(set(failures))[:10]
    assert secs < 60


def test_criterion_9_determinism(sweeps, acceptance_log, tmp_path):
    names = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"]
    mismatched = []
    for name in names:
        first = format_curve(sweeps(name)[0]).encode()
        path = tmp_path / f"{name}.csv"
        path.write_bytes(format_curve(run_capacity_sweep(CONFIGS[name])).encode())
        if path.read_bytes() != first:
            mismatched.append(name)
    record(acceptance_log, 9, not mismatched,
           f"re-running criteria 1-5 gives byte-identical CSVs (mismatches: {mismatched or 'none'})")
    assert not mismatched
