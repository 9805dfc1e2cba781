"""Exact ground truth by breadth-first search over the configuration graph.

Everything here is deliberately brute force and only meant for desk-scale
instances; budgets turn "too big" into an explicit ``CapExceeded``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_CYCLE_CAP, Configuration, simple_cycles
from .exceptions import CapExceeded, ConfigurationError
from .graph import Graph, bfs_order

DEFAULT_STATE_CAP = 2_000_000


def configuration_count(n: int, p: int) -> int:
    return math.perm(n, p)


class ConfigSpace:
    """Successor generator specialised to one graph.

    Cycles are precomputed with their vertex bitmasks so checking whether a
    rotation applies is a single mask test per cycle.
    """

    def __init__(self, g: Graph, cycle_cap: int = DEFAULT_CYCLE_CAP):
        self.g = g
        self.adj = g.adj
        self.cycles = [
            (cyc, sum(1 << v for v in cyc)) for cyc in simple_cycles(g, cycle_cap)
        ]

    def successors(self, s: Configuration) -> list[Configuration]:
        occ = [-1] * self.g.n
        mask = 0
        for i, v in enumerate(s):
            occ[v] = i
            mask |= 1 << v
        out = []
        adj = self.adj
        for i, v in enumerate(s):
            for w in adj[v]:
                if occ[w] < 0:
                    out.append(s[:i] + (w,) + s[i + 1:])
        for cyc, cmask in self.cycles:
            if mask & cmask == cmask:
                k = len(cyc)
                fwd = list(s)
                bwd = list(s)
                for j in range(k):
                    r = occ[cyc[j]]
                    fwd[r] = cyc[(j + 1) % k]
                    bwd[r] = cyc[j - 1]
                out.append(tuple(fwd))
                out.append(tuple(bwd))
        return out

    def closure(
        self, s: Configuration, cap: int = DEFAULT_STATE_CAP, target: Configuration | None = None
    ) -> dict[Configuration, Configuration | None]:
        """BFS tree (child -> parent) of everything reachable from ``s``.

        Stops early once ``target`` is discovered.
        """
        parent: dict[Configuration, Configuration | None] = {s: None}
        if s == target:
            return parent
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self.successors(u):
                if w not in parent:
                    parent[w] = u
                    if len(parent) > cap:
                        raise CapExceeded(len(parent))
                    if w == target:
                        return parent
                    queue.append(w)
        return parent


def _check_pair(g: Graph, s: Configuration, t: Configuration) -> None:
    if len(s) != len(t):
        raise ConfigurationError("configurations have different robot counts")
    for c in (s, t):
        if len(set(c)) != len(c) or any(not 0 <= v < g.n for v in c):
            raise ConfigurationError(f"invalid configuration {c}")


def reachable_bf(
    g: Graph, s: Configuration, t: Configuration, cap: int = DEFAULT_STATE_CAP
) -> bool:
    s, t = tuple(s), tuple(t)
    _check_pair(g, s, t)
    if s == t:
        return True
    return t in ConfigSpace(g).closure(s, cap, target=t)


def reachable_path(
    g: Graph, s: Configuration, t: Configuration, cap: int = DEFAULT_STATE_CAP
) -> list[Configuration] | None:
    """Shortest configuration sequence from ``s`` to ``t`` (inclusive), or None."""
    s, t = tuple(s), tuple(t)
    _check_pair(g, s, t)
    tree = ConfigSpace(g).closure(s, cap, target=t)
    if t not in tree:
        return None
    seq = [t]
    while tree[seq[-1]] is not None:
        seq.append(tree[seq[-1]])
    return seq[::-1]


def _robots_per_component(g: Graph, s: Configuration) -> list[set[int]]:
    where = {v: i for i, comp in enumerate(g.components) for v in comp}
    out: list[set[int]] = [set() for _ in g.components]
    for r, v in enumerate(s):
        out[where[v]].add(r)
    return out


def identity_configuration(g: Graph, p: int) -> Configuration:
    """Robot ``i`` on the ``i``-th vertex of the deterministic BFS order."""
    order, _ = bfs_order(g)
    if not 0 <= p <= g.n:
        raise ValueError(f"need 0 <= p <= {g.n}, got {p}")
    return tuple(order[:p])


@dataclass
class ClassReport:
    n: int
    p: int
    total: int
    classes: list[list[Configuration]]
    # Class of the BFS identity configuration; None on disconnected graphs.
    identity_class: int | None

    @property
    def k_plus_1(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def reachable_fraction(self) -> Fraction | None:
        if self.identity_class is None:
            return None
        return Fraction(len(self.classes[self.identity_class]), self.total)

    def class_of(self, s: Configuration) -> int:
        for i, c in enumerate(self.classes):
            if s in c:
                return i
        raise KeyError(s)

    def to_dict(self) -> dict:
        frac = self.reachable_fraction
        return {
            "n": self.n,
            "p": self.p,
            "total": self.total,
            "class_count": self.k_plus_1,
            "class_sizes": self.sizes,
            "representatives": [list(c[0]) for c in self.classes],
            "identity_class": self.identity_class,
            "reachable_fraction": None if frac is None else str(frac),
        }


def equivalence_classes(g: Graph, p: int, cap: int = DEFAULT_STATE_CAP) -> ClassReport:
    """Partition all ``n!/(n-p)!`` configurations by mutual reachability.

    Seeds are taken in lexicographic order, so classes come out ordered by
    their least member and each class is sorted.
    """
    if not 0 <= p <= g.n:
        raise ValueError(f"need 0 <= p <= {g.n}, got {p}")
    total = configuration_count(g.n, p)
    if total > cap:
        raise CapExceeded(0, f"{total} configurations exceed the budget of {cap}")
    space = ConfigSpace(g)
    label: dict[Configuration, int] = {}
    classes: list[list[Configuration]] = []
    for seed in itertools.permutations(range(g.n), p):
        if seed in label:
            continue
        members = list(space.closure(seed, cap))
        cid = len(classes)
        for c in members:
            label[c] = cid
        members.sort()
        classes.append(members)
    identity = None
    if g.is_connected:
        identity = label[identity_configuration(g, p)]
    return ClassReport(g.n, p, total, classes, identity)


def universally_solvable_bf(g: Graph, p: int, cap: int = DEFAULT_STATE_CAP) -> bool:
    """True iff all configurations form a single class.

    One BFS from the lexicographically least configuration suffices: the
    answer is yes exactly when that class covers everything.
    """
    if not 0 <= p <= g.n:
        raise ValueError(f"need 0 <= p <= {g.n}, got {p}")
    total = configuration_count(g.n, p)
    if total > cap:
        raise CapExceeded(0, f"{total} configurations exceed the budget of {cap}")
    seed = tuple(range(p))
    return len(ConfigSpace(g).closure(seed, cap)) == total


def reachable_fraction(g: Graph, p: int, cap: int = DEFAULT_STATE_CAP) -> Fraction:
    """Share of all configurations reachable from the identity configuration."""
    total = configuration_count(g.n, p)
    if total > cap:
        raise CapExceeded(0, f"{total} configurations exceed the budget of {cap}")
    start = identity_configuration(g, p)
    return Fraction(len(ConfigSpace(g).closure(start, cap)), total)
