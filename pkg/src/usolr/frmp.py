"""Pairwise reachability: is configuration ``t`` reachable from ``s``?

Structural rules settle the cases the universal-solvability deciders hit
most; anything else falls through to the exact search in :mod:`.oracle`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .config import Configuration, check_configuration
from .exceptions import NotACycle, OccupiedSetsDiffer
from .graph import (
    BlockKind,
    Graph,
    StructuralTag,
    classify,
    has_large_2conn_noncycle,
)
from .oracle import DEFAULT_STATE_CAP, reachable_path


class Answer(enum.Enum):
    REACHABLE = "Reachable"
    UNREACHABLE = "Unreachable"


class Method(enum.Enum):
    TRIVIAL_EQUAL = "TrivialEqual"
    COMPONENTS = "Components"
    TWO_CONN_RULE = "TwoConnRule"
    TWO_EDGE_CONN_RULE = "TwoEdgeConnRule"
    CYCLE_RULE = "CycleRule"
    PARITY_RULE = "ParityRule"
    ORACLE_FALLBACK = "OracleFallback"


@dataclass(frozen=True)
class FeasibilityDecision:
    answer: Answer
    method: Method
    certificate: dict = field(default_factory=dict)

    @property
    def reachable(self) -> bool:
        return self.answer is Answer.REACHABLE

    def to_dict(self) -> dict:
        return {
            "answer": self.answer.value,
            "method": self.method.value,
            "certificate": self.certificate,
        }


def _decision(ok: bool, method: Method, **cert) -> FeasibilityDecision:
    return FeasibilityDecision(Answer.REACHABLE if ok else Answer.UNREACHABLE, method, cert)


def cycle_order(g: Graph, s: Configuration) -> tuple[int, ...]:
    """Robots (1-based) met walking the cycle from vertex 0 via its smaller neighbour.

    The sequence is rotated to start at the smallest robot id, so two
    configurations related by sliding robots around the cycle agree.
    """
    blocks = g.blocks.blocks
    if len(g.components) != 1 or len(blocks) != 1 or blocks[0].kind is not BlockKind.SIMPLE_CYCLE:
        raise NotACycle("graph is not a single simple cycle")
    robot_at = {v: i + 1 for i, v in enumerate(s)}
    seq = [robot_at[v] for v in blocks[0].cycle_sequence() if v in robot_at]
    if not seq:
        return ()
    k = seq.index(min(seq))
    return tuple(seq[k:] + seq[:k])


def permutation_parity(s: Configuration, t: Configuration) -> str:
    """Parity of ``sigma`` with ``t = s o sigma``: "even" or "odd"."""
    if set(s) != set(t) or len(s) != len(t):
        raise OccupiedSetsDiffer("configurations occupy different vertex sets")
    robot_of = {v: i for i, v in enumerate(s)}
    sigma = [robot_of[v] for v in t]
    seen = [False] * len(sigma)
    transpositions = 0
    for i in range(len(sigma)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        transpositions += length - 1
    return "odd" if transpositions % 2 else "even"


def feasible(
    g: Graph,
    p: int,
    s: Configuration,
    t: Configuration,
    cap: int = DEFAULT_STATE_CAP,
) -> FeasibilityDecision:
    """Decide whether ``t`` is reachable from ``s`` with ``p`` robots on ``g``.

    The first applicable rule wins:

    1. ``s == t``.
    2. Disconnected graph: robots must stay in their component and each
       component sub-instance must be feasible.
    3. A non-cycle biconnected block with at least ``p`` vertices.
    4. Bridgeless, not a cycle, ``p < n``.
    5. Simple cycle: the cyclic order of robots must agree.
    6. Bridgeless, ``p == n``, all blocks odd cycles: the relating
       permutation must be even. Otherwise (some even cycle or non-cycle
       block) always reachable.
    7. Exact search.
    """
    s = check_configuration(g, s, p)
    t = check_configuration(g, t, p)
    if s == t:
        return _decision(True, Method.TRIVIAL_EQUAL)
    n = g.n

    comps = g.components
    if len(comps) > 1:
        return _feasible_by_component(g, s, t, cap)

    block = has_large_2conn_noncycle(g.blocks, p)
    if block is not None:
        return _decision(True, Method.TWO_CONN_RULE, block=sorted(block.vertices))

    if n < 2:
        return _fallback(g, s, t, cap)
    cls = classify(g)
    if cls.tag is StructuralTag.TWO_EDGE_CONNECTED_NOT_TWO_CONNECTED and p < n:
        return _decision(True, Method.TWO_EDGE_CONN_RULE)

    if cls.tag is StructuralTag.SIMPLE_CYCLE_GRAPH:
        a, b = cycle_order(g, s), cycle_order(g, t)
        return _decision(a == b, Method.CYCLE_RULE, source_order=list(a), target_order=list(b))

    if cls.tag is StructuralTag.TWO_EDGE_CONNECTED_NOT_TWO_CONNECTED and p == n:
        if cls.all_odd_cycles:
            parity = permutation_parity(s, t)
            return _decision(parity == "even", Method.PARITY_RULE, parity=parity)
        return _decision(True, Method.TWO_EDGE_CONN_RULE, even_or_noncycle_block=True)

    return _fallback(g, s, t, cap)


def _fallback(g: Graph, s: Configuration, t: Configuration, cap: int) -> FeasibilityDecision:
    path = reachable_path(g, s, t, cap)
    if path is None:
        return _decision(False, Method.ORACLE_FALLBACK)
    return _decision(True, Method.ORACLE_FALLBACK, configurations=[list(c) for c in path])


def _feasible_by_component(
    g: Graph, s: Configuration, t: Configuration, cap: int
) -> FeasibilityDecision:
    comp_of = {v: i for i, comp in enumerate(g.components) for v in comp}
    parts = []
    for cid, comp in enumerate(g.components):
        robots_s = [r for r, v in enumerate(s) if comp_of[v] == cid]
        robots_t = [r for r, v in enumerate(t) if comp_of[v] == cid]
        if robots_s != robots_t:
            return _decision(False, Method.COMPONENTS, component=cid)
        if not robots_s:
            continue
        sub, old = g.induced(comp)
        new_id = {v: i for i, v in enumerate(old)}
        sub_s = tuple(new_id[s[r]] for r in robots_s)
        sub_t = tuple(new_id[t[r]] for r in robots_s)
        res = feasible(sub, len(robots_s), sub_s, sub_t, cap)
        parts.append({"component": cid, **res.to_dict()})
        if not res.reachable:
            return _decision(False, Method.COMPONENTS, components=parts)
    return _decision(True, Method.COMPONENTS, components=parts)
