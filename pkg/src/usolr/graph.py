"""Undirected simple graphs, traversals and block (biconnected) structure.

Vertex ids ``0..n-1`` double as the intrinsic total order used to make every
traversal deterministic: adjacency lists are sorted and BFS starts at 0.
"""

from __future__ import annotations

import enum
import gc
from array import array
from collections import deque
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .exceptions import (
    DuplicateEdge,
    EdgeCountMismatch,
    EndpointOutOfRange,
    GraphDisconnected,
    MalformedLine,
    SelfLoop,
)

Edge = tuple[int, int]


@contextmanager
def _gc_paused():
    # Bulk construction allocates millions of acyclic tuples; letting the
    # cycle collector rescan them makes large inputs scale superlinearly.
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Build with :meth:`from_edges`. The sorted adjacency tuple is the
    canonical form used for equality and hashing; the edge set is derived
    from it on first use.
    """

    n: int
    adj: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        with _gc_paused():
            nbrs: list[list[int]] = [[] for _ in range(n)]
            # Shared int objects keep adjacency lookups cache friendly.
            ids = list(range(n))
            for u, v in edges:
                u, v = int(u), int(v)
                if u == v:
                    raise SelfLoop(f"self-loop at vertex {u}")
                if not (0 <= u < n and 0 <= v < n):
                    raise EndpointOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
                u, v = ids[u], ids[v]
                nbrs[u].append(v)
                nbrs[v].append(u)
            for u, a in enumerate(nbrs):
                a.sort()
                if len(set(a)) != len(a):
                    w = next(x for x, y in zip(a, a[1:]) if x == y)
                    raise DuplicateEdge(f"duplicate edge {_norm(u, w)}")
            return cls(n, tuple(map(tuple, nbrs)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"

    @cached_property
    def edges(self) -> frozenset[Edge]:
        return frozenset((u, v) for u, a in enumerate(self.adj) for v in a if u < v)

    @cached_property
    def m(self) -> int:
        return sum(map(len, self.adj)) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[Edge]:
        return [(u, v) for u, a in enumerate(self.adj) for v in a if u < v]

    def non_edges(self) -> list[Edge]:
        """All absent vertex pairs, lexicographically ordered."""
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.edges
        ]

    def with_edges(self, extra: Iterable[tuple[int, int]], add_vertices: int = 0) -> "Graph":
        return Graph.from_edges(self.n + add_vertices, [*self.edges, *extra])

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` in ascending id order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        sub = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph.from_edges(len(old), sub), old

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    # Structure is computed once per graph and shared by all deciders.
    @cached_property
    def components(self) -> list[list[int]]:
        return connected_components(self)

    @cached_property
    def blocks(self) -> "BlockCutDecomposition":
        return biconnected_components(self)

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header plus ``m`` edge lines format.

    Blank lines and lines starting with ``#`` are skipped. Errors carry the
    1-based line number of the offending line.
    """
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last_line = lineno
        parts = line.split()
        try:
            a, b = (int(x) for x in parts) if len(parts) == 2 else (None, None)
        except ValueError:
            a = b = None
        if a is None or b is None:
            raise MalformedLine(f"expected two integers, got {raw!r}", line=lineno)
        if header is None:
            if a < 0 or b < 0:
                raise MalformedLine("negative header value", line=lineno)
            header = (a, b)
            continue
        n = header[0]
        if len(edges) == header[1]:
            raise EdgeCountMismatch(f"more than {header[1]} edge lines", line=lineno)
        if a == b:
            raise SelfLoop(f"self-loop at vertex {a}", line=lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise EndpointOutOfRange(f"edge ({a}, {b}) outside 0..{n - 1}", line=lineno)
        e = _norm(a, b)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {e}", line=lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise MalformedLine("missing 'n m' header", line=max(last_line, 1))
    if len(edges) != header[1]:
        raise EdgeCountMismatch(
            f"header announces {header[1]} edges, found {len(edges)}",
            line=last_line,
        )
    return Graph.from_edges(header[0], edges)


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex partition into components, each sorted, ordered by min vertex."""
    comp = [-1] * g.n
    out: list[list[int]] = []
    for root in range(g.n):
        if comp[root] >= 0:
            continue
        cid = len(out)
        comp[root] = cid
        members = [root]
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if comp[w] < 0:
                    comp[w] = cid
                    members.append(w)
                    stack.append(w)
        members.sort()
        out.append(members)
    return out


def bfs_order(g: Graph) -> tuple[list[int], dict[int, int]]:
    """Deterministic BFS from vertex 0, neighbours in ascending id order.

    Returns the visiting order ``v_1..v_n`` and the BFS-tree parent map
    (the root has no entry).
    """
    if g.n == 0:
        return [], {}
    parent: dict[int, int] = {}
    seen = [False] * g.n
    seen[0] = True
    order = [0]
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
                queue.append(w)
    if len(order) != g.n:
        raise GraphDisconnected(f"graph has {len(g.components)} connected components")
    return order, parent


class BlockKind(enum.Enum):
    SINGLE_EDGE = "SingleEdge"
    SIMPLE_CYCLE = "SimpleCycle"
    NON_CYCLE = "NonCycle2Connected"


@dataclass(frozen=True)
class Block:
    """One biconnected component."""

    vertices: frozenset[int]
    edges: frozenset[Edge]
    kind: BlockKind

    @property
    def size(self) -> int:
        return len(self.vertices)

    def cycle_sequence(self) -> list[int]:
        """Walk a SIMPLE_CYCLE block starting at its least vertex.

        The walk leaves the start through its smaller neighbour.
        """
        if self.kind is not BlockKind.SIMPLE_CYCLE:
            raise ValueError("block is not a simple cycle")
        nbrs: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        start = min(self.vertices)
        seq = [start]
        prev, cur = start, min(nbrs[start])
        while cur != start:
            seq.append(cur)
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
        return seq


@dataclass(frozen=True)
class BlockCutDecomposition:
    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]
    # (block index, cut vertex) incidences of the block-cut tree (forest on
    # disconnected input).
    tree_edges: tuple[tuple[int, int], ...]

    def kinds(self) -> list[tuple[BlockKind, int]]:
        return [(b.kind, b.size) for b in self.blocks]


def _block_kind(vertices: set[int], edges: list[Edge]) -> BlockKind:
    if len(edges) == 1:
        return BlockKind.SINGLE_EDGE
    if len(edges) == len(vertices):
        # A biconnected block with |E| = |V| has all degrees 2.
        return BlockKind.SIMPLE_CYCLE
    return BlockKind.NON_CYCLE


def biconnected_components(g: Graph) -> BlockCutDecomposition:
    """Iterative Hopcroft-Tarjan with an edge stack.

    Isolated vertices belong to no block.
    """
    with _gc_paused():
        return _biconnected_components(g)


def _biconnected_components(g: Graph) -> BlockCutDecomposition:
    n = g.n
    adj = g.adj
    # Flat arrays keep the DFS state compact: discovery time, low-link,
    # DFS parent and the next neighbour position to scan.
    disc = array("l", bytes(8 * n)) if n else array("l")
    low = array("l", disc)
    parent = array("l", [-1]) * n
    nxt = array("l", disc)
    timer = 1
    raw_blocks: list[list[Edge]] = []
    cut: set[int] = set()
    edge_stack: list[Edge] = []

    for root in range(n):
        if disc[root] or not adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [root]
        while stack:
            u = stack[-1]
            nbrs = adj[u]
            i = nxt[u]
            if i < len(nbrs):
                nxt[u] = i + 1
                w = nbrs[i]
                if not disc[w]:
                    disc[w] = low[w] = timer
                    timer += 1
                    parent[w] = u
                    edge_stack.append((u, w) if u < w else (w, u))
                    if u == root:
                        root_children += 1
                    stack.append(w)
                elif w != parent[u] and disc[w] < disc[u]:
                    edge_stack.append((u, w) if u < w else (w, u))
                    if disc[w] < low[u]:
                        low[u] = disc[w]
                continue
            stack.pop()
            par = parent[u]
            if par < 0:
                continue
            if low[u] < low[par]:
                low[par] = low[u]
            if low[u] >= disc[par]:
                if par != root:
                    cut.add(par)
                tree_edge = (par, u) if par < u else (u, par)
                block: list[Edge] = []
                while True:
                    e = edge_stack.pop()
                    block.append(e)
                    if e == tree_edge:
                        break
                raw_blocks.append(block)
        if root_children > 1:
            cut.add(root)

    blocks = []
    for edges in raw_blocks:
        verts = {x for e in edges for x in e}
        blocks.append(Block(frozenset(verts), frozenset(edges), _block_kind(verts, edges)))
    # Blocks share no edges, so the least edge breaks ties between blocks
    # with the same least vertex.
    blocks.sort(key=lambda b: (min(b.vertices), min(b.edges)))
    tree = tuple(
        (i, v)
        for i, b in enumerate(blocks)
        for v in sorted(b.vertices & cut)
    )
    return BlockCutDecomposition(tuple(blocks), frozenset(cut), tree)


class StructuralTag(enum.Enum):
    DISCONNECTED = "Disconnected"
    TWO_CONNECTED_NON_CYCLE = "TwoConnectedNonCycle"
    SIMPLE_CYCLE_GRAPH = "SimpleCycleGraph"
    TWO_EDGE_CONNECTED_NOT_TWO_CONNECTED = "TwoEdgeConnectedNotTwoConnected"
    ONE_EDGE_CONNECTED = "OneEdgeConnected"


@dataclass(frozen=True)
class StructuralClass:
    tag: StructuralTag
    # Only meaningful for TWO_EDGE_CONNECTED_NOT_TWO_CONNECTED.
    all_odd_cycles: bool = False
    # Block index, bridge edge or component list backing the tag.
    witness: object = None


def classify(g: Graph) -> StructuralClass:
    if g.n < 2:
        raise ValueError("classification needs at least 2 vertices")
    comps = g.components
    if len(comps) > 1:
        return StructuralClass(StructuralTag.DISCONNECTED, witness=comps[1][0])
    blocks = g.blocks.blocks
    if len(blocks) == 1:
        kind = blocks[0].kind
        if kind is BlockKind.NON_CYCLE:
            return StructuralClass(StructuralTag.TWO_CONNECTED_NON_CYCLE, witness=0)
        if kind is BlockKind.SIMPLE_CYCLE:
            return StructuralClass(StructuralTag.SIMPLE_CYCLE_GRAPH, witness=0)
    bridges = [b for b in blocks if b.kind is BlockKind.SINGLE_EDGE]
    if bridges:
        (bridge,) = bridges[0].edges
        return StructuralClass(StructuralTag.ONE_EDGE_CONNECTED, witness=bridge)
    odd = all(b.kind is BlockKind.SIMPLE_CYCLE and b.size % 2 == 1 for b in blocks)
    witness = min(g.blocks.cut_vertices)
    return StructuralClass(
        StructuralTag.TWO_EDGE_CONNECTED_NOT_TWO_CONNECTED, all_odd_cycles=odd, witness=witness
    )


def has_large_2conn_noncycle(d: BlockCutDecomposition, p: int) -> Block | None:
    """Some non-cycle biconnected block with at least ``p`` vertices, or None.

    Single edges never count even though they are not cycles: a bridge
    offers no room to reorder robots.
    """
    for b in d.blocks:
        if b.kind is BlockKind.NON_CYCLE and b.size >= p:
            return b
    return None
