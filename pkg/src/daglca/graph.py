"""DAG representation, topological order, closures and instance generators."""

from __future__ import annotations

import heapq
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import CycleDetected, IndexOutOfRange, InvalidGraph
from .matrix import BoolMatrix, bool_product, n_words, single_bit


@dataclass(frozen=True, eq=False)
class TopoOrder:
    """``pi[i]`` is the vertex at position ``i``; ``pos`` is its inverse."""

    pi: np.ndarray
    pos: np.ndarray

    def __len__(self) -> int:
        return len(self.pi)


def _kahn(n: int, succ: Sequence[Sequence[int]]) -> list[int] | None:
    indeg = [0] * n
    for outs in succ:
        for v in outs:
            indeg[v] += 1
    ready = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, v)
    return order if len(order) == n else None


class Dag:
    """A directed acyclic graph on vertices ``0 .. n-1``.

    Instances are immutable; the topological order and the transitive closure
    are computed lazily and cached.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidGraph("vertex count must be non-negative")
        edge_list = [(int(u), int(v)) for u, v in edges]
        edge_set = set(edge_list)
        if len(edge_set) != len(edge_list):
            raise InvalidGraph("duplicate edge")
        succ: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_list:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InvalidGraph(f"self-loop at {u}")
            succ[u].append(v)
        for outs in succ:
            outs.sort()
        order = _kahn(n, succ)
        if order is None:
            raise CycleDetected("edge set contains a directed cycle")
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self.succ: tuple[tuple[int, ...], ...] = tuple(tuple(s) for s in succ)
        pi = np.array(order, dtype=np.int64)
        pos = np.empty(n, dtype=np.int64)
        pos[pi] = np.arange(n)
        pi.flags.writeable = False
        pos.flags.writeable = False
        self._order = TopoOrder(pi, pos)
        self._adjacency: BoolMatrix | None = None
        self._closure: BoolMatrix | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> BoolMatrix:
        if self._adjacency is None:
            dense = np.zeros((self.n, self.n), dtype=bool)
            if self.edges:
                e = np.array(self.edges)
                dense[e[:, 0], e[:, 1]] = True
            self._adjacency = BoolMatrix.from_dense(dense)
        return self._adjacency

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Dag(n={self.n}, m={self.m})"


def topological_order(g: Dag) -> TopoOrder:
    """Kahn's algorithm, always releasing the smallest ready vertex id first."""
    return g._order


def _closure_by_sweep(g: Dag) -> BoolMatrix:
    # Reverse topological order: every successor row is final before it is read.
    w = n_words(g.n)
    reach = np.zeros((g.n, w), dtype=np.uint64)
    for v in g._order.pi[::-1]:
        row = single_bit(g.n, int(v))
        kids = g.succ[v]
        if kids:
            row |= np.bitwise_or.reduce(reach[list(kids)], axis=0)
        reach[v] = row
    return BoolMatrix(g.n, g.n, reach)


def _closure_by_squaring(g: Dag) -> BoolMatrix:
    step = BoolMatrix.from_dense(g.adjacency.dense() | np.eye(g.n, dtype=bool))
    span = 1
    while span < max(g.n - 1, 1):
        nxt = bool_product(step, step)
        span *= 2
        if nxt == step:
            break
        step = nxt
    return step


def transitive_closure(g: Dag, method: str = "auto") -> BoolMatrix:
    """Reflexive transitive closure ``D`` with ``D[w, v] = 1`` iff ``w`` reaches ``v``.

    ``method`` is ``"sweep"`` (word-parallel OR over successors in reverse
    topological order), ``"squaring"`` (repeated boolean squaring of
    ``I + adjacency``) or ``"auto"``, which uses the sweep and caches it.
    """
    if method == "auto":
        if g._closure is None:
            g._closure = _closure_by_sweep(g)
        return g._closure
    if method == "sweep":
        return _closure_by_sweep(g)
    if method == "squaring":
        return _closure_by_squaring(g)
    raise ValueError(f"unknown closure method {method!r}")


def ancestors(closure: BoolMatrix, v: int) -> frozenset[int]:
    """``Anc(v)``: every ``w`` with ``D[w, v] = 1`` (always contains ``v``)."""
    if not 0 <= v < closure.cols:
        raise IndexOutOfRange(f"vertex {v} outside 0..{closure.cols - 1}")
    return frozenset(np.flatnonzero(closure.dense()[:, v]).tolist())


def suffix_subgraph(g: Dag, order: TopoOrder, start: int) -> tuple[Dag, np.ndarray]:
    """Induced subgraph on ``order.pi[start:]``.

    Vertices are relabelled in increasing original id, so the subgraph's own
    min-id topological order is the restriction of ``order``.  The returned
    array maps new ids back to original ids.
    """
    if not 0 <= start <= g.n:
        raise IndexOutOfRange(f"start position {start} outside 0..{g.n}")
    keep = np.sort(order.pi[start:])
    new_id = np.full(g.n, -1, dtype=np.int64)
    new_id[keep] = np.arange(len(keep))
    edges = [(int(new_id[u]), int(new_id[v])) for u, v in g.edges
             if new_id[u] >= 0 and new_id[v] >= 0]
    keep.flags.writeable = False
    return Dag(len(keep), edges), keep


def random_dag(n: int, edge_prob: float, seed: int) -> Dag:
    """Each forward pair of a random vertex permutation gets an edge w.p. ``edge_prob``."""
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    coin = rng.random((n, n)) < edge_prob
    i, j = np.nonzero(np.triu(coin, k=1))
    return Dag(n, zip(perm[i].tolist(), perm[j].tolist()))


def layered_dag(
    layers: Sequence[int],
    edge_rule: Callable[[int, int, int, int], bool],
) -> Dag:
    """Vertices laid out layer by layer; ``edge_rule(i, a, j, b)`` decides the
    edge from local vertex ``a`` of layer ``i`` to local vertex ``b`` of layer
    ``j > i``."""
    offsets = np.concatenate([[0], np.cumsum(layers)]).astype(int)
    edges = []
    for i, size_i in enumerate(layers):
        for j in range(i + 1, len(layers)):
            for a in range(size_i):
                for b in range(layers[j]):
                    if edge_rule(i, a, j, b):
                        edges.append((offsets[i] + a, offsets[j] + b))
    return Dag(int(offsets[-1]), edges)
