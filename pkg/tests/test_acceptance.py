"""End-to-end acceptance checks; each prints one PASS/FAIL line."""

from __future__ import annotations

import itertools
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import fam, random_connected_graph
from usolr.accumulation import accumulate, retarget, target_set
from usolr.augment import augment_constructive, min_edge_augmentation_bf, min_vertex_edge_augmentation_bf
from usolr.config import apply_move, compose
from usolr.corpus import binomial_tolerance, randomized_yes_rate, run_corpus
from usolr.exceptions import CapExceeded
from usolr.frmp import feasible
from usolr.graph import Graph
from usolr.oracle import reachable_bf, reachable_fraction, universally_solvable_bf
from usolr.solver import solve_optimized


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} :: {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def corpus5():
    t0 = time.perf_counter()
    summary = run_corpus(5)
    return summary, time.perf_counter() - t0


def test_criterion_1_oracle_cross_check(report, corpus5):
    summary, elapsed = corpus5
    ok = summary.instances > 0 and not summary.disagreements and elapsed < 300
    report(1, "det/opt agree with oracle, n <= 5", ok,
           f"{summary.instances} instances, {len(summary.disagreements)} disagreements, {elapsed:.1f}s")


def test_criterion_2_equal_class_sizes(report, corpus5):
    summary, _ = corpus5
    bad = summary.class_size_violations
    report(2, "equal class sizes", not bad, f"{len(bad)} violations over {summary.instances} instances")


def test_criterion_3_half_unreachable(report, corpus5):
    summary, _ = corpus5
    bad = summary.fraction_violations
    report(3, "reachable fraction = 1/k <= 1/2 on NO instances", not bad,
           f"{len(bad)} violations over {summary.no} NO instances")


def test_criterion_4_randomized_rate(report):
    trials = 2000
    notes, ok = [], True
    t0 = time.perf_counter()
    for name, p in (("cycle:3", 3), ("cycle:4", 4)):
        g = fam(name)
        exact = reachable_fraction(g, p)
        rate = randomized_yes_rate(g, p, trials)
        tol = binomial_tolerance(exact, trials)
        hit = abs(float(rate) - float(exact)) <= tol
        ok &= hit
        notes.append(f"{name} {float(rate):.4f} vs {exact} (tol {tol:.4f})")
    for p in (2, 3, 4):
        rate = randomized_yes_rate(fam("complete:4"), p, trials)
        ok &= rate == 1
        notes.append(f"K4 p={p} {float(rate)}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    report(4, "randomized YES-rate", ok, "; ".join(notes) + f"; {elapsed:.1f}s")


def test_criterion_5_sparsity(report, corpus5):
    summary, _ = corpus5
    k8 = fam("complete:8")
    res = solve_optimized(k8, 2)
    shortcut = res.solvable and res.detail.get("density_shortcut", False)
    agrees = res.solvable == universally_solvable_bf(k8, 2)
    ok = not summary.sparsity_violations and shortcut and agrees
    report(5, "NO instances are sparse; K8 p=2 density shortcut", ok,
           f"{len(summary.sparsity_violations)} violations; K8 shortcut={shortcut}, oracle agrees={agrees}")


def test_criterion_6_accumulation(report):
    rng = random.Random(2024)
    violations = []
    retargets_checked = 0
    for k in range(500):
        g = random_connected_graph(rng, rng.randint(2, 7), extra=rng.random() * 0.5)
        p = rng.randint(1, g.n)
        s = tuple(rng.sample(range(g.n), p))
        res = accumulate(g, s, check_progress=True)
        cur = s
        for m in res.moves:
            cur = apply_move(g, cur, m)
        if cur != res.final:
            violations.append((k, "replay"))
        if set(res.final) != set(target_set(g, p)):
            violations.append((k, "target"))
        for _ in range(20):
            pi = tuple(rng.sample(range(1, p + 1), p))
            if accumulate(g, compose(s, pi)).final != compose(res.final, pi):
                violations.append((k, "equivariance"))
                break
        x = rng.sample(range(g.n), p)
        t = retarget(g, s, x)
        if set(t) != set(x):
            violations.append((k, "retarget set"))
            continue
        try:
            if not reachable_bf(g, s, t):
                violations.append((k, "retarget reach"))
            retargets_checked += 1
        except CapExceeded:
            pass
    report(6, "accumulation contract", not violations,
           f"500 pairs, {retargets_checked} retargets oracle-checked, {len(violations)} violations {violations[:3]}")


def test_criterion_7_augmentation_upper_bounds(report):
    cases = [("cycle:6", 6, 1), ("oddcactus:3,3", 5, 1), ("oddcactus:3,3,3", 7, 1), ("star:5", 5, 3)]
    notes, ok = [], True
    for name, p, bound in cases:
        g = fam(name)
        plan = augment_constructive(g, p)
        exact_required = bound if name != "star:5" else None
        within = plan.beta_used == exact_required if exact_required else plan.beta_used <= bound
        verified = universally_solvable_bf(plan.graph, p)
        ok &= within and verified
        notes.append(f"{name} p={p}: {plan.method.value} beta={plan.beta_used} verified={verified}")
    report(7, "constructive augmentation", ok, "; ".join(notes))


def test_criterion_8_augmentation_lower_bounds(report):
    t0 = time.perf_counter()
    star = fam("star:5")
    none_at_1 = min_edge_augmentation_bf(star, 5, 1) is None
    at_2 = min_edge_augmentation_bf(star, 5, 2)
    beta_star_2 = at_2 is not None and at_2[0] == 2
    z = fam("z:1,1")
    z_none = min_vertex_edge_augmentation_bf(z, 7, 1, 1) is None
    z_hit = min_vertex_edge_augmentation_bf(z, 7, 2, 2)
    elapsed = time.perf_counter() - t0
    ok = none_at_1 and beta_star_2 and z_none and z_hit is not None and elapsed < 600
    detail = (
        f"Star(5) beta_max=1 none={none_at_1}; beta_max=2 result="
        f"{'none' if at_2 is None else at_2[0]} (want 2); "
        f"Z(1,1) (1,1) none={z_none}; (2,2) hit="
        f"{None if z_hit is None else z_hit[:2]}; {elapsed:.1f}s"
    )
    report(8, "augmentation lower bounds", ok, detail)


def _exhaustive_pairs(g: Graph, p: int):
    configs = list(itertools.permutations(range(g.n), p))
    return itertools.product(configs, configs)


def test_criterion_9_frmp_soundness(report):
    checked, bad = 0, []
    sweeps = [(fam("cycle:5"), p) for p in range(1, 6)]
    sweeps += [(fam("oddcactus:3,3"), 5)]
    sweeps += [(fam("complete:4"), p) for p in range(1, 5)]
    for g, p in sweeps:
        for s, t in _exhaustive_pairs(g, p):
            checked += 1
            if feasible(g, p, s, t).reachable != reachable_bf(g, s, t):
                bad.append((g.sorted_edges(), s, t))
    rng = random.Random(99)
    for _ in range(200):
        g = random_connected_graph(rng, 6, extra=rng.random() * 0.6)
        for _ in range(5):
            p = rng.randint(1, 6)
            s = tuple(rng.sample(range(6), p))
            t = tuple(rng.sample(range(6), p))
            checked += 1
            if feasible(g, p, s, t).reachable != reachable_bf(g, s, t):
                bad.append((g.sorted_edges(), s, t))
    report(9, "feasibility ladder matches exact search", not bad,
           f"{checked} pairs, {len(bad)} disagreements {bad[:2]}")


def _hamiltonian_plus_chords(n: int, m: int, seed: int) -> list[tuple[int, int]]:
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n).tolist()
    edges = {(min(a, b), max(a, b)) for a, b in zip(perm, perm[1:] + perm[:1])}
    while len(edges) < m:
        a, b = rng.integers(0, n, size=2).tolist()
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return list(edges)


def test_criterion_10_performance(report):
    # Each run gets a freshly built graph, so the lazily computed component
    # and block structure is paid for inside the timed solver call.
    sizes = (1_000, 10_000, 100_000)
    times, builds, fast = [], [], True
    for n in sizes:
        edges = _hamiltonian_plus_chords(n, 3 * n, seed=n)
        best = build = math.inf
        for _ in range(3):
            t0 = time.perf_counter()
            g = Graph.from_edges(n, edges)
            t1 = time.perf_counter()
            res = solve_optimized(g, n)
            best = min(best, time.perf_counter() - t1)
            build = min(build, t1 - t0)
            fast &= res.solvable and "delegated" not in res.detail
        times.append(best)
        builds.append(build)
    slope = float(np.polyfit(np.log(sizes), np.log(times), 1)[0])
    ok = fast and times[-1] < 10 and slope < 1.3
    report(10, "large-graph fast path", ok,
           f"solve times {[round(t, 3) for t in times]}s, log-log slope {slope:.2f}, "
           f"fast path={fast}, graph build {[round(t, 3) for t in builds]}s")
