"""Listing the topologically latest LCAs of every pair, and the count
threshold detectors those listings are built from."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .errors import InvalidBlockSize, SolverContractViolation
from .exact import exact1_lca, exact2_lca
from .graph import Dag, TopoOrder, suffix_subgraph, topological_order, transitive_closure
from .matrix import BoolMatrix, count_product, get_bit, pack_rows
from .oracle import NONE, LcaReport, count_lcas
from .witness import default_block, max_witness_direct

Detector = Callable[[Dag, int], np.ndarray]


@dataclass(frozen=True)
class BlockScheme:
    """Consecutive runs of ``L`` topological positions (the last may be shorter)."""

    n: int
    L: int

    def __post_init__(self):
        if self.n and not 1 <= self.L <= self.n:
            raise InvalidBlockSize(f"block size {self.L} outside 1..{self.n}")
        if self.L < 1:
            raise InvalidBlockSize("block size must be positive")

    @classmethod
    def for_graph(cls, g: Dag, L: int | None) -> BlockScheme:
        return cls(g.n, default_block(g.n) if L is None else L)

    def __len__(self) -> int:
        return -(-self.n // self.L)

    def bounds(self, i: int) -> tuple[int, int]:
        """Half-open range of topological positions in block ``i``."""
        return i * self.L, min(self.n, (i + 1) * self.L)

    def start(self, i: int) -> int:
        return i * self.L


def latest_lca(g: Dag) -> LcaReport:
    """The common ancestor with the largest topological position, per pair.

    It is always an LCA: any common ancestor below it would sit later in the
    order.  Computed as the Max-Witness product of the closure with its rows
    permuted into topological order.
    """
    n = g.n
    d = transitive_closure(g).dense()
    pi = topological_order(g).pi
    by_pos = d[pi, :]  # row k: descendants of the k-th vertex
    c = max_witness_direct(BoolMatrix.from_dense(by_pos.T), BoolMatrix.from_dense(by_pos))
    best = np.where(c >= 0, pi[np.clip(c, 0, None)] if n else c, NONE)
    return LcaReport("lists", n, table=best[:, :, None].astype(np.int32))


# -- threshold detectors -----------------------------------------------------------


def _has_common(g: Dag) -> np.ndarray:
    d = transitive_closure(g)
    return count_product(d.transpose(), d) > 0


def atleast_k(g: Dag, k: int, seed: int = 0) -> np.ndarray:
    """``|LCA(u, v)| >= k`` for every pair.

    ``k <= 3`` uses the closure and the Exact-1/Exact-2 algorithms
    (``[l >= k+1] = not OR_{i<=k} [l = i]``); larger ``k`` falls back to the
    brute-force counts.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return np.ones((g.n, g.n), dtype=bool)
    if k > 3:
        return count_lcas(g).counts >= k
    some = _has_common(g)
    if k == 1:
        return some
    out = some & ~exact1_lca(g, seed).found
    if k == 3:
        out &= ~exact2_lca(g, seed).found
    return out


def atmost_k(g: Dag, k: int, seed: int = 0) -> np.ndarray:
    if k < 0:
        raise ValueError("k must be non-negative")
    return ~atleast_k(g, k + 1, seed)


def exact_k(g: Dag, k: int, seed: int = 0) -> np.ndarray:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return atmost_k(g, 0, seed)
    return atmost_k(g, k, seed) ^ atmost_k(g, k - 1, seed)


# -- detection to listing ------------------------------------------------------------


class _ListState:
    """Per-pair LCA lists under construction plus the union of their ancestor sets."""

    def __init__(self, g: Dag, width: int):
        self.n = g.n
        self.d = transitive_closure(g).dense()
        self.anc = pack_rows(self.d.T)
        self.table = np.full((g.n, g.n, width), NONE, dtype=np.int32)
        self.count = np.zeros((g.n, g.n), dtype=np.int64)
        self.covered = np.zeros((g.n, g.n, self.anc.shape[1]), dtype=np.uint64)

    def scan_block(self, order: TopoOrder, lo: int, hi: int, pairs: np.ndarray) -> np.ndarray:
        """Append, for each pair in ``pairs``, the latest vertex in positions
        ``[lo, hi)`` that reaches both ends and no listed LCA.  Returns which
        pairs got one."""
        iu, iv = np.nonzero(pairs)
        done = np.zeros(len(iu), dtype=bool)
        for p in range(hi - 1, lo - 1, -1):
            w = int(order.pi[p])
            take = ~done & self.d[w, iu] & self.d[w, iv] & ~get_bit(self.covered[iu, iv], w)
            if not take.any():
                continue
            tu, tv = iu[take], iv[take]
            self.table[tu, tv, self.count[tu, tv]] = w
            self.count[tu, tv] += 1
            self.covered[tu, tv] |= self.anc[w]
            done |= take
        got = np.zeros_like(pairs)
        got[iu[done], iv[done]] = True
        return got

    def report(self) -> LcaReport:
        used = int(self.count.max()) if self.count.size else 0
        return LcaReport("lists", self.n, table=np.ascontiguousarray(self.table[:, :, :used]))


def list_k_lcas(g: Dag, k: int, detector: Detector | None = None, L: int | None = None) -> LcaReport:
    """Up to ``k`` topologically latest LCAs per pair from an AtLeast detector.

    For the ``l``-th LCA, the detector runs on every suffix of the order,
    latest suffix first; the first suffix where a pair reaches ``l`` LCAs
    pins the block holding its ``l``-th LCA, and one scan of that block finds
    it.  ``detector(h, l)`` must answer AtLeast-``l`` on any DAG ``h``
    exactly.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if detector is None:
        detector = atleast_k
    scheme = BlockScheme.for_graph(g, L)
    order = topological_order(g)
    state = _ListState(g, min(k, g.n))
    suffixes = [suffix_subgraph(g, order, scheme.start(i)) for i in range(len(scheme))]
    for ell in range(1, min(k, g.n) + 1):
        block_of = np.full((g.n, g.n), -1, dtype=np.int64)
        for i in reversed(range(len(scheme))):
            sub, ids = suffixes[i]
            fired = np.asarray(detector(sub, ell), dtype=bool)
            view = block_of[np.ix_(ids, ids)]
            view[fired & (view < 0)] = i
            block_of[np.ix_(ids, ids)] = view
        if not (block_of >= 0).any():
            break
        for i in range(len(scheme)):
            pairs = block_of == i
            if pairs.any():
                lo, hi = scheme.bounds(i)
                got = state.scan_block(order, lo, hi, pairs)
                if not np.array_equal(got, pairs):
                    raise SolverContractViolation("detector fired on a block without a new LCA")
    return state.report()


# -- block-count listing for two and three LCAs ------------------------------------------


def _block_counts(d: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """``|Anc(u) & Anc(v) & V_i|`` for the block with vertex ids ``cols``."""
    a = BoolMatrix.from_dense(d[cols, :].T)  # a[u, x] = D[x, u]
    return count_product(a, a.transpose()).astype(np.int64)


def _next_latest(g: Dag, L: int | None, known: np.ndarray, debug: bool) -> np.ndarray:
    """One more LCA per pair, given the ``known`` latest ones (``-1`` padded).

    Walking blocks from last to first, the first block where
    ``|Anc(u) & Anc(v) & V_i|`` exceeds ``|(union of Anc(known)) & V_i|`` holds
    the next LCA; it is the latest vertex there that reaches both ends but no
    known LCA.
    """
    n = g.n
    scheme = BlockScheme.for_graph(g, L)
    order = topological_order(g)
    d = transitive_closure(g).dense()
    depth = known.shape[2]
    ready = (known >= 0).all(axis=2)  # pairs that have all of the known LCAs
    safe = np.where(known >= 0, known, 0)
    block_id = np.empty(n, dtype=np.int64)
    block_id[order.pi] = np.arange(n) // scheme.L
    # anc_in_block[x, i] = |Anc(x) & V_i|
    one_hot = np.zeros((n, len(scheme)), dtype=np.int64)
    one_hot[np.arange(n), block_id] = 1
    anc_in_block = d.T.astype(np.int64) @ one_hot

    located = np.full((n, n), -1, dtype=np.int64)
    for i in reversed(range(len(scheme))):
        lo, hi = scheme.bounds(i)
        cols = order.pi[lo:hi]
        lhs = _block_counts(d, cols)
        rhs = anc_in_block[safe[:, :, 0], i]
        if depth == 2:
            l1, l2 = safe[:, :, 0], safe[:, :, 1]
            rhs = rhs + anc_in_block[l2, i] - lhs[l1, l2]
        fails = ready & (lhs != rhs)
        if debug and np.any(lhs[ready] < rhs[ready]):
            raise AssertionError("known LCAs reach outside the common ancestors")
        located[fails & (located < 0)] = i

    found = np.full((n, n), NONE, dtype=np.int64)
    iu, iv = np.nonzero(located >= 0)
    blk = located[iu, iv]
    for i in np.unique(blk):
        lo, hi = scheme.bounds(int(i))
        sel = blk == i
        su, sv = iu[sel], iv[sel]
        ks = safe[su, sv]
        best = np.full(len(su), NONE, dtype=np.int64)
        for p in range(hi - 1, lo - 1, -1):
            w = int(order.pi[p])
            ok = (best < 0) & d[w, su] & d[w, sv]
            for t in range(depth):
                ok &= ~d[w, ks[:, t]]
            best[ok] = w
        if debug and np.any(best < 0):
            raise AssertionError("located block holds no new LCA")
        found[su, sv] = best
    return found


def ap2_lca(g: Dag, L: int | None = None, debug: bool = False) -> LcaReport:
    """Two topologically latest LCAs per pair (all of them if fewer)."""
    l1 = latest_lca(g).table
    l2 = _next_latest(g, L, l1, debug)
    return LcaReport("lists", g.n, table=_stack(l1[:, :, 0], l2))


def ap3_lca(g: Dag, L: int | None = None, debug: bool = False) -> LcaReport:
    """Three topologically latest LCAs per pair (all of them if fewer)."""
    two = ap2_lca(g, L, debug).table
    if two.shape[2] < 2:
        return LcaReport("lists", g.n, table=two)
    l3 = _next_latest(g, L, two, debug)
    return LcaReport("lists", g.n, table=_stack(two[:, :, 0], two[:, :, 1], l3))


def _stack(*cols: np.ndarray) -> np.ndarray:
    table = np.stack(cols, axis=2).astype(np.int32) if cols[0].size else (
        np.zeros(cols[0].shape + (len(cols),), dtype=np.int32))
    used = int((table >= 0).sum(axis=2).max()) if table.size else 0
    return np.ascontiguousarray(table[:, :, :used])
