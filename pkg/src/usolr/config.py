"""Configurations, valid moves and one-step successor enumeration.

A configuration is a plain tuple: entry ``i - 1`` is the vertex of robot
``i``. Permutations are tuples in one-line notation over ``1..p``, so
``pi[i - 1] == pi(i)``. Both are hashable and cheap to build, which the
exhaustive search relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .exceptions import CapExceeded, ConfigurationError, InvalidMove, MoveError
from .graph import Graph

Configuration = tuple[int, ...]
Permutation = tuple[int, ...]

DEFAULT_CYCLE_CAP = 10_000


@dataclass(frozen=True)
class PathMove:
    """Push robots on ``path[:-1]`` one step towards the empty ``path[-1]``."""

    path: tuple[int, ...]


@dataclass(frozen=True)
class RotationMove:
    """Rotate a fully occupied cycle; the robot on ``cycle[j]`` goes to ``cycle[j + 1]``."""

    cycle: tuple[int, ...]


@dataclass(frozen=True)
class DummyMove:
    pass


Move = Union[PathMove, RotationMove, DummyMove]


def check_configuration(g: Graph, s: Sequence[int], p: int | None = None) -> Configuration:
    s = tuple(int(v) for v in s)
    if p is not None and len(s) != p:
        raise ConfigurationError(f"expected {p} robots, got {len(s)}")
    if len(set(s)) != len(s):
        raise ConfigurationError("two robots share a vertex")
    for v in s:
        if not 0 <= v < g.n:
            raise ConfigurationError(f"vertex {v} outside 0..{g.n - 1}")
    return s


def parse_configuration(text: str, g: Graph | None = None) -> Configuration:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        raise ConfigurationError("configuration must be a single line of vertex ids")
    try:
        s = tuple(int(x) for x in lines[0].split())
    except ValueError as exc:
        raise ConfigurationError(f"bad vertex id: {exc}") from None
    if g is not None:
        s = check_configuration(g, s)
    elif len(set(s)) != len(s):
        raise ConfigurationError("two robots share a vertex")
    return s


def format_configuration(s: Configuration) -> str:
    return " ".join(map(str, s))


def identity_permutation(p: int) -> Permutation:
    return tuple(range(1, p + 1))


def check_permutation(pi: Sequence[int]) -> Permutation:
    pi = tuple(pi)
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"{pi} is not a permutation of 1..{len(pi)}")
    return pi


def invert(pi: Permutation) -> Permutation:
    inv = [0] * len(pi)
    for i, j in enumerate(pi, start=1):
        inv[j - 1] = i
    return tuple(inv)


def compose(s: Configuration, pi: Permutation) -> Configuration:
    """``s o pi``: robot ``i`` takes the vertex robot ``pi(i)`` had in ``s``."""
    if len(s) != len(pi):
        raise ValueError(f"size mismatch: {len(s)} robots, permutation of {len(pi)}")
    return tuple(s[j - 1] for j in pi)


def compose_permutations(a: Permutation, b: Permutation) -> Permutation:
    """``a o b`` as functions: ``i -> a(b(i))``."""
    return tuple(a[j - 1] for j in b)


def _occupancy(g: Graph, s: Configuration) -> list[int]:
    occ = [-1] * g.n
    for i, v in enumerate(s):
        occ[v] = i
    return occ


def apply_move(g: Graph, s: Configuration, m: Move) -> Configuration:
    if isinstance(m, DummyMove):
        return s
    occ = _occupancy(g, s)
    new = list(s)
    if isinstance(m, PathMove):
        path = m.path
        if len(path) < 2 or len(set(path)) != len(path):
            raise InvalidMove(MoveError.NOT_A_PATH, f"{path}")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                raise InvalidMove(MoveError.NOT_A_PATH, f"{a}-{b} is not an edge")
        if occ[path[-1]] >= 0:
            raise InvalidMove(MoveError.TARGET_OCCUPIED, f"vertex {path[-1]}")
        if occ[path[0]] < 0:
            raise InvalidMove(MoveError.SOURCE_EMPTY, f"vertex {path[0]}")
        for u in path[1:-1]:
            if occ[u] < 0:
                raise InvalidMove(MoveError.GAP_IN_PATH, f"vertex {u}")
        for u, w in zip(path, path[1:]):
            new[occ[u]] = w
        return tuple(new)
    if isinstance(m, RotationMove):
        cyc = m.cycle
        k = len(cyc)
        if k < 3 or len(set(cyc)) != k:
            raise InvalidMove(MoveError.NOT_A_CYCLE, f"{cyc}")
        for j in range(k):
            if not g.has_edge(cyc[j], cyc[(j + 1) % k]):
                raise InvalidMove(MoveError.NOT_A_CYCLE, f"{cyc[j]}-{cyc[(j + 1) % k]} is not an edge")
        for u in cyc:
            if occ[u] < 0:
                raise InvalidMove(MoveError.CYCLE_NOT_FULL, f"vertex {u}")
        for j in range(k):
            new[occ[cyc[j]]] = cyc[(j + 1) % k]
        return tuple(new)
    raise TypeError(f"not a move: {m!r}")


def reverse_move(m: Move) -> Move:
    if isinstance(m, PathMove):
        return PathMove(m.path[::-1])
    if isinstance(m, RotationMove):
        return RotationMove(m.cycle[::-1])
    return m


def identify_move(g: Graph, s: Configuration, t: Configuration) -> Move | None:
    """Recover the normalized move taking ``s`` to ``t``, or None.

    Recognised moves are the dummy move, a gap-free push along a simple path
    and a rotation of a fully occupied simple cycle.
    """
    if len(s) != len(t):
        return None
    if s == t:
        return DummyMove()
    step = {}
    for a, b in zip(s, t):
        if a != b:
            if not g.has_edge(a, b):
                return None
            step[a] = b
    sources, targets = set(step), set(step.values())
    if sources == targets:
        start = min(step)
        cyc = [start]
        while step[cyc[-1]] != start:
            cyc.append(step[cyc[-1]])
        if len(cyc) != len(step) or len(cyc) < 3:
            return None
        return RotationMove(tuple(cyc))
    heads = sources - targets
    if len(heads) != 1 or len(targets - sources) != 1:
        return None
    path = [heads.pop()]
    while path[-1] in step:
        path.append(step[path[-1]])
    if len(path) != len(step) + 1:
        return None
    return PathMove(tuple(path))


def is_valid_move(g: Graph, s: Configuration, t: Configuration) -> bool:
    m = identify_move(g, s, t)
    if m is None:
        return False
    try:
        return apply_move(g, s, m) == t
    except InvalidMove:
        return False


def check_move_permutation_equivariance(
    g: Graph, s: Configuration, t: Configuration, pi: Permutation
) -> bool:
    """Whether ``(s o pi, t o pi)`` is a valid move; true for every valid ``(s, t)``."""
    return is_valid_move(g, compose(s, pi), compose(t, pi))


def simple_cycles(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> list[tuple[int, ...]]:
    """Every simple cycle (length >= 3) once, as a vertex tuple.

    Each cycle starts at its least vertex and its second vertex is smaller
    than its last. Enumeration runs per biconnected block since a cycle never
    leaves one; ``CapExceeded`` once a block holds more than ``cap`` cycles.
    """
    found: list[tuple[int, ...]] = []
    for block in g.blocks.blocks:
        if block.size < 3:
            continue
        verts = sorted(block.vertices)
        nbrs: dict[int, list[int]] = {v: [] for v in verts}
        for u, v in block.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        for v in verts:
            nbrs[v].sort()
        count = 0
        for start in verts:
            path = [start]
            on_path = {start}
            iters = [iter(nbrs[start])]
            while iters:
                advanced = False
                for w in iters[-1]:
                    if w == start:
                        if len(path) >= 3 and path[1] < path[-1]:
                            found.append(tuple(path))
                            count += 1
                            if count > cap:
                                raise CapExceeded(0, f"more than {cap} simple cycles in one block")
                    elif w > start and w not in on_path:
                        path.append(w)
                        on_path.add(w)
                        iters.append(iter(nbrs[w]))
                        advanced = True
                        break
                if not advanced:
                    iters.pop()
                    on_path.discard(path.pop())
    found.sort()
    return found


def _long_push_paths(g: Graph, occ: list[int], hole: int) -> Iterator[tuple[int, ...]]:
    # Backwards DFS from the hole through occupied vertices.
    stack = [(hole,)]
    while stack:
        rev = stack.pop()
        for w in g.adj[rev[-1]]:
            if occ[w] >= 0 and w not in rev:
                ext = rev + (w,)
                yield ext[::-1]
                stack.append(ext)


def successors(
    g: Graph,
    s: Configuration,
    *,
    long_pushes: bool = False,
    cycles: list[tuple[int, ...]] | None = None,
) -> set[Configuration]:
    """Configurations one non-dummy move away from ``s``.

    By default path moves are single steps into an empty neighbour; every
    longer push is a sequence of those, so the reachability closure is the
    same. ``long_pushes=True`` also emits every gap-free push along a longer
    simple path. Rotations of every fully occupied simple cycle are emitted
    in both directions.
    """
    occ = _occupancy(g, s)
    out: set[Configuration] = set()
    if long_pushes:
        for hole in range(g.n):
            if occ[hole] < 0:
                for path in _long_push_paths(g, occ, hole):
                    new = list(s)
                    for u, w in zip(path, path[1:]):
                        new[occ[u]] = w
                    out.add(tuple(new))
    else:
        for i, v in enumerate(s):
            for w in g.adj[v]:
                if occ[w] < 0:
                    out.add(s[:i] + (w,) + s[i + 1:])
    if cycles is None:
        cycles = simple_cycles(g)
    for cyc in cycles:
        if all(occ[u] >= 0 for u in cyc):
            k = len(cyc)
            fwd = list(s)
            bwd = list(s)
            for j in range(k):
                r = occ[cyc[j]]
                fwd[r] = cyc[(j + 1) % k]
                bwd[r] = cyc[j - 1]
            out.add(tuple(fwd))
            out.add(tuple(bwd))
    return out
