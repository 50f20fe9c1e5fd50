"""Brute-force ground truth for every LCA variant.

Everything here works from the transitive closure and bitset tests only, and
is the reference the faster algorithms are checked against.  Work is
vectorized over all ``(u, v)`` pairs at once; the per-pair logic is exactly
the textbook definition.

Conventions shared with the rest of the package:

* ``LCA(u, u) = {u}``; the diagonal is part of every all-pairs output.
* Lists are in reverse topological order (topologically latest first).
* A candidate of ``NONE`` (``-1``) verifies as correct exactly when the pair
  has no common ancestor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange
from .graph import Dag, topological_order, transitive_closure
from .matrix import _CHUNK_ELEMS, BoolMatrix, get_bit, pack_rows

NONE = -1


class _Reach:
    """Packed views of a closure used by the pair sweeps."""

    def __init__(self, closure: BoolMatrix):
        self.n = closure.rows
        self.dense = closure.dense()
        self.anc = pack_rows(self.dense.T)  # row v: Anc(v)
        self.strict_desc = pack_rows(self.dense & ~np.eye(self.n, dtype=bool))

    @classmethod
    def of(cls, g: Dag) -> _Reach:
        return cls(transitive_closure(g))

    def row_chunks(self):
        w = self.anc.shape[1]
        step = max(1, _CHUNK_ELEMS // max(1, self.n * w))
        for lo in range(0, self.n, step):
            yield lo, min(self.n, lo + step)

    def common(self, lo: int, hi: int) -> np.ndarray:
        """Packed ``Anc(u) & Anc(v)`` for ``u in [lo, hi)`` and every ``v``."""
        return self.anc[lo:hi, None, :] & self.anc[None, :, :]


@dataclass(eq=False)
class LcaReport:
    """Per-pair LCA results.

    ``kind`` is ``"counts"`` (``counts`` holds ``|LCA(u, v)|``), ``"lists"``
    (``table[u, v]`` holds LCA ids left-packed and padded with ``-1``) or
    ``"decision"`` (``decision`` is a boolean matrix).
    """

    kind: str
    n: int
    counts: np.ndarray | None = None
    table: np.ndarray | None = None
    decision: np.ndarray | None = None

    def lengths(self) -> np.ndarray:
        if self.kind == "counts":
            return self.counts
        if self.kind != "lists":
            raise TypeError(f"a {self.kind} report has no list lengths")
        return (self.table >= 0).sum(axis=2)

    def get(self, u: int, v: int) -> list[int]:
        row = self.table[u, v]
        return row[row >= 0].tolist()

    def to_lists(self) -> list[list[list[int]]]:
        return [[self.get(u, v) for v in range(self.n)] for u in range(self.n)]

    def prefix(self, k: int) -> LcaReport:
        return LcaReport("lists", self.n, table=self.table[:, :, :k].copy())

    def same_lists(self, other: LcaReport) -> bool:
        """Exact list equality, ignoring trailing padding width."""
        if self.n != other.n:
            return False
        a, b = self.table, other.table
        width = max(a.shape[2], b.shape[2])
        return np.array_equal(_pad_width(a, width), _pad_width(b, width))

    def data(self) -> list:
        if self.kind == "counts":
            return self.counts.tolist()
        if self.kind == "decision":
            return self.decision.astype(int).tolist()
        return self.to_lists()


def _pad_width(table: np.ndarray, width: int) -> np.ndarray:
    if table.shape[2] == width:
        return table
    out = np.full(table.shape[:2] + (width,), NONE, dtype=table.dtype)
    out[:, :, : table.shape[2]] = table
    return out


class VerifyResult(NamedTuple):
    bits: np.ndarray
    any_error: bool


def _check_vertex(n: int, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < n:
            raise IndexOutOfRange(f"vertex {v} outside 0..{n - 1}")


def is_lca(closure: BoolMatrix, u: int, v: int, w: int) -> bool:
    """``w`` reaches ``u`` and ``v`` and no other common ancestor is below ``w``."""
    n = closure.rows
    _check_vertex(n, u, v, w)
    d = closure.dense()
    if not (d[w, u] and d[w, v]):
        return False
    below = d[w] & d[:, u] & d[:, v]
    below[w] = False
    return not below.any()


def k_lcas_bruteforce(g: Dag, k: int) -> LcaReport:
    """Up to ``k`` topologically latest LCAs per pair, by a reverse-topological scan.

    A scanned vertex is appended to a pair's list when it reaches both
    endpoints and reaches none of the LCAs already listed for that pair.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = g.n
    r = _Reach.of(g)
    pi = topological_order(g).pi
    width = min(k, n)
    table = np.full((n, n, width), NONE, dtype=np.int32)
    for lo, hi in r.row_chunks():
        rows = hi - lo
        covered = np.zeros((rows, n, r.anc.shape[1]), dtype=np.uint64)
        count = np.zeros((rows, n), dtype=np.int64)
        for w in pi[::-1]:
            w = int(w)
            reach_w = r.dense[w]
            hit = reach_w[lo:hi, None] & reach_w[None, :]
            hit &= ~get_bit(covered, w)
            hit &= count < width
            if not hit.any():
                continue
            iu, iv = np.nonzero(hit)
            table[iu + lo, iv, count[iu, iv]] = w
            count[iu, iv] += 1
            covered[iu, iv] |= r.anc[w]
    return LcaReport("lists", n, table=_trim(table))


def _trim(table: np.ndarray) -> np.ndarray:
    used = int((table >= 0).sum(axis=2).max()) if table.size else 0
    return np.ascontiguousarray(table[:, :, :used])


def all_lcas(g: Dag) -> LcaReport:
    """Every LCA of every pair (the ``k = n`` scan)."""
    return k_lcas_bruteforce(g, max(g.n, 1))


def count_lcas(g: Dag) -> LcaReport:
    """``|LCA(u, v)|`` for every pair, straight from the definition.

    ``w`` counts for ``(u, v)`` when it is a common ancestor and none of its
    proper descendants is.
    """
    n = g.n
    r = _Reach.of(g)
    counts = np.zeros((n, n), dtype=np.int64)
    for lo, hi in r.row_chunks():
        common = r.common(lo, hi)
        for w in range(n):
            is_common = r.dense[w, lo:hi, None] & r.dense[w, None, :]
            if not is_common.any():
                continue
            lower = (common & r.strict_desc[w]).any(axis=2)
            counts[lo:hi] += is_common & ~lower
    return LcaReport("counts", n, counts=counts)


def verify_candidates(g: Dag, cand: np.ndarray) -> VerifyResult:
    """Per-pair verification of candidate LCAs plus the existential answer.

    ``bits[u, v]`` is set when ``cand[u, v]`` is an LCA of ``(u, v)``, or when
    it is ``NONE`` and the pair has no common ancestor.  ``any_error`` is the
    OR of the cleared bits.
    """
    n = g.n
    cand = np.asarray(cand, dtype=np.int64)
    if cand.shape != (n, n):
        raise DimensionMismatch(f"candidate matrix shape {cand.shape} != ({n}, {n})")
    if np.any((cand < NONE) | (cand >= n)):
        raise IndexOutOfRange("candidate ids must be vertex ids or NONE")
    r = _Reach.of(g)
    bits = np.zeros((n, n), dtype=bool)
    cols = np.arange(n)
    for lo, hi in r.row_chunks():
        common = r.common(lo, hi)
        has_common = common.any(axis=2)
        c = cand[lo:hi]
        given = c >= 0
        safe = np.where(given, c, 0)
        rows = np.arange(lo, hi)[:, None]
        is_common = r.dense[safe, rows] & r.dense[safe, cols[None, :]]
        lower = (common & r.strict_desc[safe]).any(axis=2)
        bits[lo:hi] = np.where(given, is_common & ~lower, ~has_common)
    return VerifyResult(bits, bool((~bits).any()))


def ap_verify(g: Dag, cand: np.ndarray) -> np.ndarray:
    """AP-Ver-LCA answer only: the per-pair bit matrix."""
    return verify_candidates(g, cand).bits


def threshold(counts: np.ndarray, k: int, relation: str) -> np.ndarray:
    """Compare a count matrix with ``k``: relation is ``">="``, ``"<="`` or ``"=="``."""
    if relation == ">=":
        return counts >= k
    if relation == "<=":
        return counts <= k
    if relation == "==":
        return counts == k
    raise ValueError(f"unknown relation {relation!r}")


def oracle_atleast(g: Dag, k: int) -> np.ndarray:
    """AtLeast-k detector backed by the brute-force counts."""
    return count_lcas(g).counts >= k
