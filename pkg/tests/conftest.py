from __future__ import annotations

import itertools
import random
from collections import deque

import networkx as nx
import pytest
from hypothesis import strategies as st

from usolr.augment import FamilySpec, generate
from usolr.graph import Graph


def fam(text: str) -> Graph:
    return generate(FamilySpec.parse(text))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.sorted_edges())
    return h


class NxOracle:
    """Reference reachability built on networkx, sharing no code with the package.

    Moves: one robot steps into an empty neighbour, or every robot on a fully
    occupied cycle steps forward (either orientation).
    """

    def __init__(self, g: Graph):
        self.h = to_nx(g)
        self.cycles = [c for c in nx.simple_cycles(self.h) if len(c) >= 3]

    def neighbours(self, s):
        where = {v: r for r, v in enumerate(s)}
        for r, v in enumerate(s):
            for w in self.h[v]:
                if w not in where:
                    yield s[:r] + (w,) + s[r + 1:]
        for cyc in self.cycles:
            if all(v in where for v in cyc):
                for order in (cyc, cyc[::-1]):
                    nxt = list(s)
                    for j, v in enumerate(order):
                        nxt[where[v]] = order[(j + 1) % len(order)]
                    yield tuple(nxt)

    def closure(self, s):
        s = tuple(s)
        seen = {s}
        todo = deque([s])
        while todo:
            for w in self.neighbours(todo.popleft()):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    def reachable(self, s, t) -> bool:
        return tuple(t) in self.closure(s)

    def all_configurations(self, p):
        return itertools.permutations(range(self.h.number_of_nodes()), p)

    def universally_solvable(self, p) -> bool:
        n = self.h.number_of_nodes()
        if not nx.is_connected(self.h):
            return False
        total = 1
        for k in range(p):
            total *= n - k
        return len(self.closure(tuple(range(p)))) == total


def random_connected_graph(rng: random.Random, n: int, extra: float = 0.3) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``extra``."""
    edges = set()
    verts = list(range(n))
    rng.shuffle(verts)
    for i in range(1, n):
        u, v = verts[i], verts[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < extra:
            edges.add((u, v))
    return Graph.from_edges(n, edges)


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 6):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    edges = {(parents[i - 1], i) for i in range(1, n)}
    pairs = [e for e in itertools.combinations(range(n), 2) if e not in edges]
    extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    # Relabel so vertex 0 is not always the tree root.
    perm = draw(st.permutations(range(n)))
    return Graph.from_edges(n, [(perm[a], perm[b]) for a, b in edges | set(extra)])


@pytest.fixture
def bowtie() -> Graph:
    return fam("oddcactus:3,3")


@pytest.fixture
def k4() -> Graph:
    return fam("complete:4")
