"""Las Vegas detection of pairs with exactly one or exactly two LCAs.

Both algorithms compare random subset-sum fingerprints of ancestor sets:

* one LCA ``w``:   ``Anc(u) & Anc(v) == Anc(w)``
* two LCAs ``a, b``: ``Anc(u) & Anc(v) == Anc(a) | Anc(b)``

Fingerprint matches are only proposals.  Each one is confirmed with an exact
cardinality test (inclusion plus equal size implies equality), and a single
rejected proposal triggers a fresh fingerprint, so reported answers are
always correct.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import RetryLimitExceeded
from .graph import Dag, topological_order, transitive_closure
from .matrix import BoolMatrix, Fingerprint, gram_counts, pack_rows, sub_mod61, weighted_modp_product
from .oracle import NONE

log = logging.getLogger(__name__)

MAX_RESAMPLES = 8


@dataclass(eq=False)
class ExactReport:
    """Pairs whose LCA count equals ``target``.

    ``found[u, v]`` marks FOUND entries; ``lcas[u, v]`` holds their LCAs in
    reverse topological order (``-1`` elsewhere).  ``attempts`` counts
    fingerprints drawn and ``rejected`` the fingerprint matches that failed
    exact verification along the way.
    """

    n: int
    target: int
    found: np.ndarray
    lcas: np.ndarray
    attempts: int = 1
    rejected: int = 0

    def get(self, u: int, v: int) -> tuple[int, ...] | None:
        if not self.found[u, v]:
            return None
        return tuple(int(x) for x in self.lcas[u, v])


def intersect_counts(closure: BoolMatrix) -> np.ndarray:
    """``|Anc(u) & Anc(v)|`` for all pairs."""
    return gram_counts(pack_rows(closure.dense().T)).astype(np.int64)


def union_counts(closure: BoolMatrix) -> np.ndarray:
    """``|Anc(a) | Anc(b)|`` for all pairs, via the complement sets."""
    n = closure.rows
    outside = gram_counts(pack_rows(~closure.dense().T)).astype(np.int64)
    return n - outside


def verify_unique(closure: BoolMatrix, inter: np.ndarray, u: int, v: int, w: int) -> bool:
    """Exact test that ``w`` is the unique LCA of ``(u, v)``.

    With ``w`` a common ancestor, ``Anc(w)`` is a subset of ``Anc(u) & Anc(v)``,
    so equal sizes mean equal sets.
    """
    d = closure.dense()
    if not (d[w, u] and d[w, v]):
        return False
    return int(d[:, w].sum()) == int(inter[u, v])


def verify_pair(closure: BoolMatrix, inter: np.ndarray, union: np.ndarray,
                u: int, v: int, a: int, b: int) -> bool:
    """Exact test that ``LCA(u, v) == {a, b}``."""
    d = closure.dense()
    if a == b or d[a, b] or d[b, a]:
        return False
    if not (d[a, u] and d[a, v] and d[b, u] and d[b, v]):
        return False
    return int(inter[u, v]) == int(union[a, b])


def _sorted_lookup(table: np.ndarray, keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For each key, an index into ``table`` holding the same value (or -1)."""
    order = np.argsort(table, kind="stable")
    ordered = table[order]
    at = np.searchsorted(ordered, keys)
    inside = at < len(ordered)
    hit = np.zeros(keys.shape, dtype=bool)
    hit[inside] = ordered[at[inside]] == keys[inside]
    idx = np.full(keys.shape, -1, dtype=np.int64)
    idx[hit] = order[at[hit]]
    return idx, hit


def _exact1_round(closure: BoolMatrix, inter: np.ndarray, anc_size: np.ndarray,
                  f: Fingerprint) -> tuple[np.ndarray, np.ndarray, int]:
    d = closure.dense()
    n = closure.rows
    F = weighted_modp_product(closure, f)  # F[u, v] = f(Anc(u) & Anc(v))
    w, hit = _sorted_lookup(np.diagonal(F).copy(), F)  # diagonal: f(Anc(x))
    safe = np.where(hit, w, 0)
    cols = np.arange(n)
    ok = hit & d[safe, cols[:, None]] & d[safe, cols[None, :]]
    ok &= anc_size[safe] == inter
    return ok, np.where(ok, w, NONE), int((hit & ~ok).sum())


def exact1_lca(g: Dag, seed: int, max_resamples: int = MAX_RESAMPLES) -> ExactReport:
    """Find every pair with a unique LCA, and that LCA."""
    closure = transitive_closure(g)
    n = g.n
    inter = intersect_counts(closure)
    anc_size = np.diagonal(inter).copy()
    rejected_total = 0
    for attempt in range(max_resamples + 1):
        f = Fingerprint.sample(n, seed, attempt, stream=1)
        found, w, rejected = _exact1_round(closure, inter, anc_size, f)
        rejected_total += rejected
        if rejected == 0:
            return ExactReport(n, 1, found, w[:, :, None].astype(np.int64),
                               attempts=attempt + 1, rejected=rejected_total)
        log.info("exact1: %d fingerprint matches rejected, resampling", rejected)
    raise RetryLimitExceeded(f"exact1 failed verification after {max_resamples} resamples")


def exact2_lca(g: Dag, seed: int, max_resamples: int = MAX_RESAMPLES) -> ExactReport:
    """Find every pair with exactly two LCAs, and both of them."""
    closure = transitive_closure(g)
    n = g.n
    d = closure.dense()
    pos = topological_order(g).pos
    unique = exact1_lca(g, seed, max_resamples).found
    inter = intersect_counts(closure)
    union = union_counts(closure)
    outside = BoolMatrix.from_dense(~d)
    cols = np.arange(n)
    rejected_total = 0
    for attempt in range(max_resamples + 1):
        f = Fingerprint.sample(n, seed, attempt, stream=2)
        F = weighted_modp_product(closure, f)
        # H(a, b) = f(V) - f(complement of Anc(a) intersected with complement of Anc(b))
        H = sub_mod61(np.uint64(f.total()), weighted_modp_product(outside, f))
        flat, hit = _sorted_lookup(H.ravel(), F)
        hit &= ~unique
        a = np.where(hit, flat // max(n, 1), 0)
        b = np.where(hit, flat % max(n, 1), 0)
        ok = hit & (a != b) & ~d[a, b] & ~d[b, a]
        for x in (a, b):
            ok &= d[x, cols[:, None]] & d[x, cols[None, :]]
        ok &= inter == union[a, b]
        rejected = int((hit & ~ok).sum())
        rejected_total += rejected
        if rejected == 0:
            later_first = pos[a] > pos[b]
            first = np.where(later_first, a, b)
            second = np.where(later_first, b, a)
            lcas = np.stack([first, second], axis=2)
            lcas[~ok] = NONE
            return ExactReport(n, 2, ok, lcas.astype(np.int64),
                               attempts=attempt + 1, rejected=rejected_total)
        log.info("exact2: %d fingerprint matches rejected, resampling", rejected)
    raise RetryLimitExceeded(f"exact2 failed verification after {max_resamples} resamples")
