"""Exhaustive cross-checks over every small connected labeled graph."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .graph import Graph
from .oracle import equivalence_classes
from .solver import solve_deterministic, solve_optimized, solve_randomized


def connected_graphs(n: int) -> Iterator[Graph]:
    """All connected labeled graphs on ``n`` vertices, by edge bitmask."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
        if g.is_connected:
            yield g


@dataclass
class CorpusSummary:
    n_max: int
    instances: int = 0
    yes: int = 0
    no: int = 0
    disagreements: list[dict] = field(default_factory=list)
    class_size_violations: list[dict] = field(default_factory=list)
    fraction_violations: list[dict] = field(default_factory=list)
    sparsity_violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.disagreements
            or self.class_size_violations
            or self.fraction_violations
            or self.sparsity_violations
        )

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "instances": self.instances,
            "yes": self.yes,
            "no": self.no,
            "disagreements": self.disagreements,
            "class_size_violations": self.class_size_violations,
            "fraction_violations": self.fraction_violations,
            "sparsity_violations": self.sparsity_violations,
            "ok": self.ok,
        }


def run_corpus(n_max: int = 5, n_min: int = 2) -> CorpusSummary:
    """Compare both deciders with the oracle and check the class invariants.

    For every connected graph with ``n_min <= n <= n_max`` and every
    ``2 <= p <= n``: deterministic and optimized verdicts must equal the
    oracle's; classes must have equal size; on NO instances the identity
    class must hold exactly ``1/k`` of all configurations (so at most 1/2)
    and ``|E| < p|V|`` must hold.
    """
    out = CorpusSummary(n_max)
    for n in range(n_min, n_max + 1):
        for g in connected_graphs(n):
            for p in range(2, n + 1):
                out.instances += 1
                rep = equivalence_classes(g, p)
                truth = rep.k_plus_1 == 1
                det = solve_deterministic(g, p).solvable
                opt = solve_optimized(g, p).solvable
                inst = {"n": n, "edges": [list(e) for e in g.sorted_edges()], "p": p}
                if det != truth or opt != truth:
                    out.disagreements.append({**inst, "oracle": truth, "det": det, "opt": opt})
                if len(set(rep.sizes)) != 1:
                    out.class_size_violations.append({**inst, "sizes": rep.sizes})
                if truth:
                    out.yes += 1
                    continue
                out.no += 1
                frac = rep.reachable_fraction
                if frac != Fraction(1, rep.k_plus_1) or frac > Fraction(1, 2):
                    out.fraction_violations.append({**inst, "fraction": str(frac)})
                if not g.m < p * g.n:
                    out.sparsity_violations.append(inst)
    return out


def randomized_yes_rate(g: Graph, p: int, trials: int, seed: int = 0) -> Fraction:
    """Share of single-trial randomized runs answering YES, seeds ``seed..seed+trials-1``."""
    hits = sum(solve_randomized(g, p, seed + k).solvable for k in range(trials))
    return Fraction(hits, trials)


def binomial_tolerance(prob: Fraction, trials: int, sigmas: float = 3.0) -> float:
    """``sigmas`` standard deviations of a binomial proportion."""
    q = float(prob)
    return sigmas * math.sqrt(q * (1 - q) / trials)
