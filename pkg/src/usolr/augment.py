"""Making a graph universally solvable by adding edges (and vertices).

The constructive route follows the connectivity case analysis: one chord
fixes a cycle, one edge fixes a bridgeless cactus of odd cycles, and a
``p``-cycle through a degree-2 vertex fixes everything else with at most
``p - 2`` new edges. The exhaustive searches are brute force over added
edge sets, checked by the oracle, for small lower-bound experiments.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .exceptions import AlreadySolvable, AugmentationImpossible, VerificationFailed
from .graph import BlockKind, Graph, StructuralTag, classify
from .oracle import DEFAULT_STATE_CAP, universally_solvable_bf
from .solver import Verdict, solve_optimized


class Family(enum.Enum):
    STAR = "star"
    CYCLE = "cycle"
    PATH = "path"
    ODD_CACTUS = "oddcactus"
    Z = "z"
    COMPLETE = "complete"


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``name:a,b,...`` such as ``star:5`` or ``z:1,1``."""
        name, _, rest = text.partition(":")
        try:
            family = Family(name.strip().lower())
            params = tuple(int(x) for x in rest.split(",") if x.strip())
        except ValueError:
            raise ValueError(f"bad family spec {text!r}") from None
        return cls(family, params)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def generate(spec: FamilySpec) -> Graph:
    """Materialize a graph family member; vertex 0 is the centre or root."""
    fam, ps = spec.family, spec.params
    if fam in (Family.STAR, Family.CYCLE, Family.PATH, Family.COMPLETE):
        _need(len(ps) == 1, f"{fam.value} takes one parameter")
        n = ps[0]
        if fam is Family.STAR:
            _need(n >= 2, "a star needs at least 2 vertices")
            return Graph.from_edges(n, [(0, i) for i in range(1, n)])
        if fam is Family.CYCLE:
            _need(n >= 3, "a cycle needs at least 3 vertices")
            return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
        if fam is Family.PATH:
            _need(n >= 1, "a path needs at least 1 vertex")
            return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
        _need(n >= 1, "a complete graph needs at least 1 vertex")
        return Graph.from_edges(n, itertools.combinations(range(n), 2))
    if fam is Family.ODD_CACTUS:
        _need(len(ps) >= 1, "oddcactus needs at least one cycle length")
        _need(all(k >= 3 and k % 2 for k in ps), "cycle lengths must be odd and >= 3")
        # Each cycle hangs off the newest vertex of the previous one.
        edges = []
        anchor, nxt = 0, 1
        for k in ps:
            ring = [anchor] + list(range(nxt, nxt + k - 1))
            edges += [(ring[i], ring[(i + 1) % k]) for i in range(k)]
            nxt += k - 1
            anchor = ring[-1]
        return Graph.from_edges(nxt, edges)
    if fam is Family.Z:
        _need(len(ps) == 2 and ps[0] >= 0 and ps[1] >= 0, "z takes alpha,beta >= 0")
        alpha, beta = ps
        arm = alpha + 1
        edges = []
        for j in range(2 * beta + 1):
            first = 1 + j * arm
            edges.append((0, first))
            edges += [(first + d, first + d + 1) for d in range(arm - 1)]
        return Graph.from_edges(1 + (2 * beta + 1) * arm, edges)
    raise ValueError(f"unknown family {fam}")


class PlanMethod(enum.Enum):
    CYCLE_CHORD = "CycleChord"
    TRIANGLE_CACTUS_BRIDGE = "TriangleCactusBridge"
    ODD_CYCLE_CHORD = "OddCycleChord"
    P_CYCLE_CONSTRUCTION = "PCycleConstruction"
    EXHAUSTIVE_SEARCH = "ExhaustiveSearch"


@dataclass(frozen=True)
class AugmentationPlan:
    added_vertices: int
    added_edges: tuple[tuple[int, int], ...]
    method: PlanMethod
    verified: Verdict | None
    graph: Graph = field(repr=False, compare=False)

    @property
    def beta_used(self) -> int:
        return len(self.added_edges)

    def to_dict(self) -> dict:
        return {
            "added_vertices": self.added_vertices,
            "added_edges": [list(e) for e in self.added_edges],
            "beta_used": self.beta_used,
            "method": self.method.value,
            "verified": None if self.verified is None else self.verified.value,
        }


def _least_chord(g: Graph, verts) -> tuple[int, int]:
    verts = sorted(verts)
    for u, v in itertools.combinations(verts, 2):
        if not g.has_edge(u, v):
            return (u, v)
    raise AugmentationImpossible("no non-adjacent pair left to join")


def _finish(g: Graph, p: int, edges, method: PlanMethod, cap: int) -> AugmentationPlan:
    edges = tuple(sorted((min(e), max(e)) for e in edges))
    h = g.with_edges(edges)
    verdict = solve_optimized(h, p, cap)
    if not verdict.solvable:
        raise VerificationFailed(f"{method.value} plan {edges} left the graph unsolvable")
    return AugmentationPlan(0, edges, method, verdict.answer, h)


def augment_constructive(g: Graph, p: int, cap: int = DEFAULT_STATE_CAP) -> AugmentationPlan:
    """Add few edges so that ``p`` robots become universally solvable.

    Uses at most one edge for cycles and bridgeless graphs and at most
    ``p - 2`` otherwise. Instances with ``p < 4`` or fewer than four
    vertices go to :func:`min_edge_augmentation_bf` instead.
    """
    if not g.is_connected:
        raise ValueError("augmentation needs a connected graph")
    if solve_optimized(g, p, cap).solvable:
        raise AlreadySolvable(f"graph is already universally solvable for p = {p}")

    if p < 4 or g.n < 4:
        found = min_edge_augmentation_bf(g, p, len(g.non_edges()), cap)
        if found is None:
            raise AugmentationImpossible("no edge set makes this instance solvable")
        return found[1]

    cls = classify(g)
    blocks = g.blocks.blocks
    if cls.tag is StructuralTag.SIMPLE_CYCLE_GRAPH:
        return _finish(g, p, [_least_chord(g, range(g.n))], PlanMethod.CYCLE_CHORD, cap)

    if cls.tag is StructuralTag.TWO_EDGE_CONNECTED_NOT_TWO_CONNECTED:
        if all(b.kind is BlockKind.SIMPLE_CYCLE and b.size == 3 for b in blocks):
            for c in sorted(g.blocks.cut_vertices):
                tri = [b for b in blocks if c in b.vertices][:2]
                if len(tri) == 2:
                    u = min(tri[0].vertices - {c})
                    v = min(tri[1].vertices - {c})
                    return _finish(g, p, [(u, v)], PlanMethod.TRIANGLE_CACTUS_BRIDGE, cap)
        for b in blocks:
            if b.kind is BlockKind.SIMPLE_CYCLE and b.size >= 5 and b.size % 2:
                return _finish(g, p, [_least_chord(g, b.vertices)], PlanMethod.ODD_CYCLE_CHORD, cap)
        raise VerificationFailed("unsolvable bridgeless graph without odd cycle blocks")

    return _p_cycle_construction(g, p, cap)


def _p_cycle_construction(g: Graph, p: int, cap: int) -> AugmentationPlan:
    w = next(v for v in range(g.n) if g.degree(v) >= 2)
    x, y = g.adj[w][:2]
    rest = [v for v in range(g.n) if v not in (x, w, y)][: p - 3]
    ring = [x, w, y, *rest]
    added = []
    for i in range(2, p):
        a, b = ring[i], ring[(i + 1) % p]
        if not g.has_edge(a, b):
            added.append((a, b))
    if p == g.n:
        ring_edges = {frozenset((ring[i], ring[(i + 1) % p])) for i in range(p)}
        has_chord = any(frozenset(e) not in ring_edges for e in g.edges)
        if not has_chord:
            h = g.with_edges(added)
            added.append(_least_chord(h, ring))
    # p < |V|: connectivity guarantees an edge leaving the ring, and its far
    # endpoint serves as the waiting vertex.
    if len(added) > p - 2:
        raise VerificationFailed(f"construction used {len(added)} > p - 2 edges")
    return _finish(g, p, added, PlanMethod.P_CYCLE_CONSTRUCTION, cap)


def min_edge_augmentation_bf(
    g: Graph, p: int, beta_max: int, cap: int = DEFAULT_STATE_CAP
) -> tuple[int, AugmentationPlan] | None:
    """Smallest number of added edges (at most ``beta_max``) giving a YES instance.

    Edge sets are tried in lexicographic order within each size, so the
    witness is the lexicographically least one.
    """
    candidates = g.non_edges()
    for beta in range(beta_max + 1):
        for combo in itertools.combinations(candidates, beta):
            h = g.with_edges(combo)
            if h.is_connected and universally_solvable_bf(h, p, cap):
                plan = AugmentationPlan(0, combo, PlanMethod.EXHAUSTIVE_SEARCH, Verdict.YES, h)
                return beta, plan
    return None


def _canonical(edges: tuple[tuple[int, int], ...], n: int, alpha: int) -> tuple:
    # Least relabelling of the interchangeable new vertices n..n+alpha-1.
    best = None
    for perm in itertools.permutations(range(n, n + alpha)):
        relabel = {n + i: v for i, v in enumerate(perm)}
        mapped = tuple(
            sorted(
                tuple(sorted((relabel.get(a, a), relabel.get(b, b))))
                for a, b in edges
            )
        )
        if best is None or mapped < best:
            best = mapped
    return best


def min_vertex_edge_augmentation_bf(
    g: Graph, p: int, alpha_max: int, beta_max: int, cap: int = DEFAULT_STATE_CAP
) -> tuple[int, int, AugmentationPlan] | None:
    """Lexicographically least ``(alpha, beta)`` within budget giving a YES instance.

    New vertices get ids ``n, n+1, ...``; the robot count stays ``p``. Edge
    sets that leave the graph disconnected are skipped (a disconnected
    graph is never solvable), as are relabelings of an already tried set.
    """
    for alpha in range(alpha_max + 1):
        size = g.n + alpha
        base = Graph.from_edges(size, g.edges)
        candidates = base.non_edges()
        for beta in range(beta_max + 1):
            for combo in itertools.combinations(candidates, beta):
                if alpha > 1 and _canonical(combo, g.n, alpha) != combo:
                    continue
                h = base.with_edges(combo)
                if not h.is_connected:
                    continue
                if universally_solvable_bf(h, p, cap):
                    plan = AugmentationPlan(alpha, combo, PlanMethod.EXHAUSTIVE_SEARCH, Verdict.YES, h)
                    return alpha, beta, plan
    return None
