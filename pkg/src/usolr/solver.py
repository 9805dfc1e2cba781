"""Deciders for universal solvability of ``p`` robots on a graph."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .config import Configuration, Permutation, compose
from .frmp import feasible
from .graph import Graph, has_large_2conn_noncycle
from .oracle import DEFAULT_STATE_CAP, identity_configuration, universally_solvable_bf


class Verdict(enum.Enum):
    YES = "UniversallySolvable"
    NO = "NotUniversallySolvable"


class Algorithm(enum.Enum):
    RANDOMIZED = "Randomized"
    DETERMINISTIC = "Deterministic"
    OPTIMIZED = "Optimized"
    ORACLE = "Oracle"


@dataclass(frozen=True)
class SolveVerdict:
    answer: Verdict
    algorithm: Algorithm
    detail: dict = field(default_factory=dict)

    @property
    def solvable(self) -> bool:
        return self.answer is Verdict.YES

    def to_dict(self) -> dict:
        return {
            "answer": self.answer.value,
            "algorithm": self.algorithm.value,
            "detail": self.detail,
        }


def make_rng(seed) -> np.random.Generator:
    """Counter-based generator; an existing Generator is passed through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def _check_p(g: Graph, p: int) -> None:
    if not 2 <= p <= g.n:
        raise ValueError(f"need 2 <= p <= |V| = {g.n}, got p = {p}")


def sample_uniform_configuration(g: Graph, p: int, seed) -> Configuration:
    """Uniform injective placement of ``p`` robots via a partial Fisher-Yates shuffle."""
    if not 0 <= p <= g.n:
        raise ValueError(f"cannot place {p} robots on {g.n} vertices")
    rng = make_rng(seed)
    verts = list(range(g.n))
    for i in range(p):
        j = int(rng.integers(i, g.n))
        verts[i], verts[j] = verts[j], verts[i]
    return tuple(verts[:p])


def adjacent_transposition(p: int, t: int) -> Permutation:
    """Identity on ``1..p`` except ``t`` and ``t + 1`` swapped."""
    if not 1 <= t <= p - 1:
        raise ValueError(f"t must lie in 1..{p - 1}, got {t}")
    pi = list(range(1, p + 1))
    pi[t - 1], pi[t] = t + 1, t
    return tuple(pi)


def solve_randomized(
    g: Graph, p: int, seed=0, *, trials: int = 1, cap: int = DEFAULT_STATE_CAP
) -> SolveVerdict:
    """One-sided Monte Carlo test: never says NO on a solvable instance.

    Each trial asks whether a uniformly sampled configuration is reachable
    from the identity configuration. On an unsolvable instance a trial
    answers YES with probability at most 1/2, so ``trials`` repetitions
    leave at most ``2**-trials`` error.
    """
    _check_p(g, p)
    if not g.is_connected:
        return SolveVerdict(Verdict.NO, Algorithm.RANDOMIZED, {"disconnected": True})
    rng = make_rng(seed)
    s_id = identity_configuration(g, p)
    for k in range(trials):
        sample = sample_uniform_configuration(g, p, rng)
        res = feasible(g, p, s_id, sample, cap)
        if not res.reachable:
            return SolveVerdict(
                Verdict.NO,
                Algorithm.RANDOMIZED,
                {"trial": k, "sample": list(sample), "method": res.method.value},
            )
    return SolveVerdict(Verdict.YES, Algorithm.RANDOMIZED, {"trials": trials})


def solve_deterministic(g: Graph, p: int, cap: int = DEFAULT_STATE_CAP) -> SolveVerdict:
    """Check the ``p - 1`` adjacent swaps of the identity configuration.

    Every permutation is a product of adjacent transpositions, so these
    queries decide solvability exactly. ``detail["t"]`` is the first
    failing swap.
    """
    _check_p(g, p)
    if not g.is_connected:
        return SolveVerdict(Verdict.NO, Algorithm.DETERMINISTIC, {"disconnected": True})
    s_id = identity_configuration(g, p)
    methods = set()
    for t in range(1, p):
        res = feasible(g, p, s_id, compose(s_id, adjacent_transposition(p, t)), cap)
        methods.add(res.method.value)
        if not res.reachable:
            return SolveVerdict(
                Verdict.NO, Algorithm.DETERMINISTIC, {"t": t, "method": res.method.value}
            )
    return SolveVerdict(Verdict.YES, Algorithm.DETERMINISTIC, {"methods": sorted(methods)})


def solve_optimized(
    g: Graph, p: int, cap: int = DEFAULT_STATE_CAP, *, block_shortcut: bool = True
) -> SolveVerdict:
    """Dense graphs are always solvable; otherwise run the swap checks.

    ``|E| >= p|V|`` forces a large non-cycle block, hence YES. With
    ``block_shortcut`` such a block is also looked for directly before
    falling back to :func:`solve_deterministic`; turn it off to run the
    density test alone.
    """
    _check_p(g, p)
    if not g.is_connected:
        return SolveVerdict(Verdict.NO, Algorithm.OPTIMIZED, {"disconnected": True})
    if g.m >= p * g.n:
        return SolveVerdict(Verdict.YES, Algorithm.OPTIMIZED, {"density_shortcut": True})
    if block_shortcut:
        block = has_large_2conn_noncycle(g.blocks, p)
        if block is not None:
            return SolveVerdict(
                Verdict.YES,
                Algorithm.OPTIMIZED,
                {"block_shortcut": True, "block_size": block.size},
            )
    inner = solve_deterministic(g, p, cap)
    return SolveVerdict(inner.answer, Algorithm.OPTIMIZED, {"delegated": True, **inner.detail})


def solve_oracle(g: Graph, p: int, cap: int = DEFAULT_STATE_CAP) -> SolveVerdict:
    _check_p(g, p)
    ok = universally_solvable_bf(g, p, cap)
    return SolveVerdict(Verdict.YES if ok else Verdict.NO, Algorithm.ORACLE)


SOLVERS = {
    "rand": solve_randomized,
    "det": solve_deterministic,
    "opt": solve_optimized,
    "oracle": solve_oracle,
}
