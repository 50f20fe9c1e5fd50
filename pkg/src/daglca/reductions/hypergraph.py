"""Source instances for the reductions: partitioned 3-uniform hypergraphs and
4-partite simple graphs, with brute-force clique oracles."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ..errors import InvalidGraph, NotFourPartite, PartitionMismatch

GROUP_NAMES = ("A", "B", "C", "D", "E", "U")


@dataclass(frozen=True, init=False)
class Hypergraph3:
    """A 3-uniform hypergraph on ``0 .. n-1``.

    ``partition`` lists ``(name, size)`` groups laid out contiguously in that
    order; it may be empty.
    """

    n: int
    edges: frozenset[tuple[int, int, int]]
    partition: tuple[tuple[str, int], ...] = ()
    _group_of: np.ndarray = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (),
                 partition: Sequence[tuple[str, int]] = ()):
        norm = set()
        for e in edges:
            t = tuple(sorted(int(x) for x in e))
            if len(t) != 3 or len(set(t)) != 3:
                raise InvalidGraph(f"hyperedge {tuple(e)} needs three distinct vertices")
            if not (0 <= t[0] and t[2] < n):
                raise InvalidGraph(f"hyperedge {t} has a vertex outside 0..{n - 1}")
            norm.add(t)
        part = tuple((str(name), int(size)) for name, size in partition)
        names = [name for name, _ in part]
        if len(set(names)) != len(names):
            raise PartitionMismatch("group names must be distinct")
        if part and sum(size for _, size in part) != n:
            raise PartitionMismatch(f"groups cover {sum(s for _, s in part)} vertices, expected {n}")
        if any(size < 0 for _, size in part):
            raise PartitionMismatch("group sizes must be non-negative")
        group_of = np.full(n, -1, dtype=np.int64)
        start = 0
        for gi, (_, size) in enumerate(part):
            group_of[start:start + size] = gi
            start += size
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "partition", part)
        object.__setattr__(self, "_group_of", group_of)

    @property
    def m(self) -> int:
        return len(self.edges)

    def group_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.partition)

    def members(self, name: str) -> range:
        start = 0
        for g, size in self.partition:
            if g == name:
                return range(start, start + size)
            start += size
        raise PartitionMismatch(f"no group named {name!r}")

    def group(self, v: int) -> str:
        gi = int(self._group_of[v])
        if gi < 0:
            raise PartitionMismatch("hypergraph is not partitioned")
        return self.partition[gi][0]

    def require_groups(self, names: Iterable[str]) -> None:
        want, have = set(names), set(self.group_names())
        if want != have:
            raise PartitionMismatch(f"need groups {sorted(want)}, got {sorted(have)}")

    def has_edge(self, a: int, b: int, c: int) -> bool:
        return tuple(sorted((a, b, c))) in self.edges

    def is_clique(self, vertices: Iterable[int]) -> bool:
        """Every 3-subset is a hyperedge (vacuously true below three vertices)."""
        vs = sorted(set(vertices))
        return all(t in self.edges for t in combinations(vs, 3))


def random_partitioned_hypergraph(parts: Sequence[tuple[str, int]], p: float, seed: int) -> Hypergraph3:
    """Each triple spanning three distinct groups is a hyperedge w.p. ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    starts = np.concatenate([[0], np.cumsum([s for _, s in parts])]).astype(int)
    edges = []
    for g1, g2, g3 in combinations(range(len(parts)), 3):
        r1, r2, r3 = (range(starts[g], starts[g + 1]) for g in (g1, g2, g3))
        triples = [(a, b, c) for a in r1 for b in r2 for c in r3]
        keep = rng.random(len(triples)) < p
        edges += [t for t, k in zip(triples, keep) if k]
    return Hypergraph3(int(starts[-1]), edges, parts)


def _extend(h: Hypergraph3, pools: list[range], chosen: list[int]) -> bool:
    if not pools:
        return True
    for v in pools[0]:
        if all(h.has_edge(x, y, v) for x, y in combinations(chosen, 2)):
            chosen.append(v)
            if _extend(h, pools[1:], chosen):
                return True
            chosen.pop()
    return False


def brute_hyperclique(h: Hypergraph3, ell: int) -> bool:
    """Does ``h`` contain an ``ell``-hyperclique?

    With a partition, the clique takes one vertex from each of ``ell``
    distinct groups; otherwise any ``ell`` vertices.
    """
    if ell < 3:
        raise ValueError("ell must be at least 3")
    if not h.partition:
        # lowest-first backtracking over vertex ids
        def grow(chosen: list[int], nxt: int) -> bool:
            if len(chosen) == ell:
                return True
            for v in range(nxt, h.n):
                if all(h.has_edge(x, y, v) for x, y in combinations(chosen, 2)):
                    chosen.append(v)
                    if grow(chosen, v + 1):
                        return True
                    chosen.pop()
            return False
        return grow([], 0)
    for groups in combinations(h.group_names(), ell):
        if _extend(h, [h.members(g) for g in groups], []):
            return True
    return False


def extends_to_hyperclique(h: Hypergraph3, labels: Iterable[int], group: str = "U") -> bool:
    """Some vertex of ``group`` completes ``labels`` to a hyperclique."""
    base = list(labels)
    if not h.is_clique(base):
        return False
    return any(h.is_clique(base + [u]) for u in h.members(group))


@dataclass(frozen=True, init=False)
class FourPartiteGraph:
    """Simple undirected graph with parts ``A, B, C, D`` laid out contiguously."""

    sizes: tuple[int, int, int, int]
    edges: frozenset[tuple[int, int]]

    def __init__(self, sizes: Sequence[int], edges: Iterable[Sequence[int]] = ()):
        sizes = tuple(int(s) for s in sizes)
        if len(sizes) != 4 or any(s < 0 for s in sizes):
            raise NotFourPartite("need four non-negative part sizes")
        object.__setattr__(self, "sizes", sizes)
        norm = set()
        for e in edges:
            a, b = sorted(int(x) for x in e)
            if not (0 <= a and b < self.n) or a == b:
                raise NotFourPartite(f"edge ({a}, {b}) is not between two vertices of 0..{self.n - 1}")
            if self.part(a) == self.part(b):
                raise NotFourPartite(f"edge ({a}, {b}) lies inside part {'ABCD'[self.part(a)]}")
            norm.add((a, b))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def offset(self, part: int) -> int:
        return sum(self.sizes[:part])

    def members(self, part: int) -> range:
        lo = self.offset(part)
        return range(lo, lo + self.sizes[part])

    def part(self, v: int) -> int:
        for i in range(4):
            if v < self.offset(i + 1):
                return i
        raise IndexError(v)

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            e = np.array(sorted(self.edges))
            adj[e[:, 0], e[:, 1]] = True
            adj[e[:, 1], e[:, 0]] = True
        return adj

    def padded(self) -> tuple[FourPartiteGraph, np.ndarray]:
        """Pad every part with isolated vertices up to the largest part.

        Returns the padded graph and the map from old to new ids.
        """
        size = max(self.sizes)
        new_id = np.empty(self.n, dtype=np.int64)
        for p in range(4):
            new_id[list(self.members(p))] = p * size + np.arange(self.sizes[p])
        edges = [(int(new_id[a]), int(new_id[b])) for a, b in self.edges]
        return FourPartiteGraph((size,) * 4, edges), new_id


def random_four_partite(size: int | Sequence[int], p: float, seed: int) -> FourPartiteGraph:
    """Each cross-part pair is an edge w.p. ``p``."""
    sizes = (size,) * 4 if isinstance(size, int) else tuple(size)
    rng = np.random.default_rng(seed)
    g = FourPartiteGraph(sizes)
    edges = []
    for p1, p2 in combinations(range(4), 2):
        pairs = [(a, b) for a in g.members(p1) for b in g.members(p2)]
        keep = rng.random(len(pairs)) < p
        edges += [e for e, k in zip(pairs, keep) if k]
    return FourPartiteGraph(sizes, edges)


def brute_4clique(g: FourPartiteGraph) -> bool:
    """One vertex per part with all six edges present."""
    adj = g.adjacency()
    for a in g.members(0):
        for b in g.members(1):
            if not adj[a, b]:
                continue
            for c in g.members(2):
                if not (adj[a, c] and adj[b, c]):
                    continue
                for d in g.members(3):
                    if adj[a, d] and adj[b, d] and adj[c, d]:
                        return True
    return False
