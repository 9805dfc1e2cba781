"""Canonical accumulation of robots onto the first ``p`` BFS vertices.

Each round picks the least-indexed empty target vertex ``v_a`` (a <= p), the
least-indexed occupied vertex ``v_b`` beyond the target set (b > p), and
pushes every robot on the BFS-tree path from ``v_b`` to ``v_a`` one step.
Only the occupied set steers the procedure, which is why it commutes with
renaming robots.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .config import Configuration, PathMove, apply_move, check_configuration
from .exceptions import ConfigurationError
from .graph import Graph, bfs_order


@dataclass(frozen=True)
class AccumulationResult:
    final: Configuration
    moves: tuple[PathMove, ...]
    # occupied vertex of the input -> vertex of V_p it ends on
    amap: dict[int, int]
    rounds: int


def target_set(g: Graph, p: int) -> list[int]:
    """``V_p``: the first ``p`` vertices of the deterministic BFS order."""
    order, _ = bfs_order(g)
    if not 0 <= p <= g.n:
        raise ValueError(f"need 0 <= p <= {g.n}, got {p}")
    return order[:p]


def _tree_path(parent: dict[int, int], depth: dict[int, int], a: int, b: int) -> list[int]:
    # Path from b to a in the BFS tree.
    up_b, up_a = [b], [a]
    while depth[up_b[-1]] > depth[up_a[-1]]:
        up_b.append(parent[up_b[-1]])
    while depth[up_a[-1]] > depth[up_b[-1]]:
        up_a.append(parent[up_a[-1]])
    while up_b[-1] != up_a[-1]:
        up_b.append(parent[up_b[-1]])
        up_a.append(parent[up_a[-1]])
    return up_b + up_a[-2::-1]


def _distances_to_set(n: int, parent: dict[int, int], targets: set[int]) -> list[int]:
    # Tree distance to the nearest target vertex, multi-source BFS on the tree.
    tree: list[list[int]] = [[] for _ in range(n)]
    for c, par in parent.items():
        tree[c].append(par)
        tree[par].append(c)
    dist = [-1] * n
    queue = deque(targets)
    for v in targets:
        dist[v] = 0
    while queue:
        u = queue.popleft()
        for w in tree[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def accumulate(g: Graph, s: Configuration, *, check_progress: bool = False) -> AccumulationResult:
    """Run the accumulation procedure, logging single-step pushes.

    A tree-path push whose interior has holes is emitted as the equivalent
    run of one-edge pushes, processed from the empty end backwards, so every
    logged move is a gap-free push. With ``check_progress`` the summed tree
    distance of robots to ``V_p`` is asserted to drop every round.
    """
    s = check_configuration(g, s)
    p = len(s)
    order, parent = bfs_order(g)
    index = {v: i for i, v in enumerate(order)}
    vp = order[:p]
    vp_set = set(vp)
    depth = {order[0]: 0} if order else {}
    for v in order[1:]:
        depth[v] = depth[parent[v]] + 1
    dist = _distances_to_set(g.n, parent, vp_set) if check_progress else None

    cur = s
    moves: list[PathMove] = []
    rounds = 0
    occupied = set(cur)
    while occupied != vp_set:
        a = next(v for v in vp if v not in occupied)
        b = min((v for v in occupied if v not in vp_set), key=index.__getitem__)
        path = _tree_path(parent, depth, a, b)
        before = sum(dist[v] for v in cur) if dist else 0
        for j in range(len(path) - 2, -1, -1):
            if path[j] in occupied:
                step = PathMove((path[j], path[j + 1]))
                cur = apply_move(g, cur, step)
                occupied.discard(path[j])
                occupied.add(path[j + 1])
                moves.append(step)
        rounds += 1
        if dist is not None:
            after = sum(dist[v] for v in cur)
            if after >= before:
                raise AssertionError(f"accumulation made no progress in round {rounds}")
    amap = {s[i]: cur[i] for i in range(p)}
    return AccumulationResult(cur, tuple(moves), amap, rounds)


def _check_set(g: Graph, occupied, p: int | None = None) -> list[int]:
    verts = sorted(set(int(v) for v in occupied))
    if len(verts) != len(list(occupied)):
        raise ConfigurationError("vertex set has repeated entries")
    if p is not None and len(verts) != p:
        raise ConfigurationError(f"expected {p} vertices, got {len(verts)}")
    for v in verts:
        if not 0 <= v < g.n:
            raise ConfigurationError(f"vertex {v} outside 0..{g.n - 1}")
    return verts


def accumulation_map(g: Graph, occupied) -> dict[int, int]:
    """The bijection from an occupied vertex set onto ``V_p``.

    Well defined because the procedure ignores robot identities: any
    placement of robots on ``occupied`` yields the same map.
    """
    verts = _check_set(g, occupied)
    return accumulate(g, tuple(verts)).amap


def retarget(g: Graph, s: Configuration, x) -> Configuration:
    """A configuration occupying exactly ``x`` that is reachable from ``s``.

    Accumulate ``s`` onto ``V_p`` and pull it back through the inverse of the
    accumulation map of ``x``.
    """
    s = check_configuration(g, s)
    verts = _check_set(g, x, len(s))
    inverse = {w: v for v, w in accumulation_map(g, verts).items()}
    final = accumulate(g, s).final
    return tuple(inverse[v] for v in final)
