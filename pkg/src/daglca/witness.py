"""Max-Witness boolean product.

``C[i, j] = max {k : A[i, k] = B[k, j] = 1}``, with ``NONE`` (-1) when no
witness exists.  Two routes are provided: a blocked direct computation, and a
parallel binary search that learns one bit of every witness per call to an
AP-Ver-LCA solver.
"""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np

from .errors import DimensionMismatch, InvalidBlockSize, SolverContractViolation
from .graph import Dag
from .matrix import BoolMatrix, bool_product
from .oracle import NONE

VerLcaSolver = Callable[[Dag, np.ndarray], np.ndarray]


def _check_square_pair(a: BoolMatrix, b: BoolMatrix) -> int:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return a.cols


def max_witness_naive(a: BoolMatrix, b: BoolMatrix) -> np.ndarray:
    """Triple loop over ``k`` descending; the reference for tests."""
    inner = _check_square_pair(a, b)
    ad, bd = a.dense(), b.dense()
    out = np.full((a.rows, b.cols), NONE, dtype=np.int64)
    for i in range(a.rows):
        for j in range(b.cols):
            for k in range(inner - 1, -1, -1):
                if ad[i, k] and bd[k, j]:
                    out[i, j] = k
                    break
    return out


def default_block(n: int) -> int:
    return max(1, math.isqrt(max(n - 1, 0)) + 1) if n > 1 else 1


def max_witness_direct(a: BoolMatrix, b: BoolMatrix, L: int | None = None) -> np.ndarray:
    """Blocked Max-Witness.

    The witness range is cut into blocks of ``L``; a boolean product per block
    flags the pairs with a witness there, and each pair scans only its latest
    flagged block, from the top down.
    """
    inner = _check_square_pair(a, b)
    if L is None:
        L = default_block(inner)
    if L < 1 or (inner and L > inner):
        raise InvalidBlockSize(f"block size {L} outside 1..{inner}")
    ad, bd = a.dense(), b.dense()
    out = np.full((a.rows, b.cols), NONE, dtype=np.int64)
    if inner == 0 or a.rows == 0 or b.cols == 0:
        return out
    starts = list(range(0, inner, L))
    open_ = np.ones(out.shape, dtype=bool)
    for lo in reversed(starts):
        hi = min(inner, lo + L)
        flagged = bool_product(BoolMatrix.from_dense(ad[:, lo:hi]),
                               BoolMatrix.from_dense(bd[lo:hi, :])).dense() & open_
        if not flagged.any():
            continue
        ii, jj = np.nonzero(flagged)
        best = np.full(len(ii), NONE, dtype=np.int64)
        for k in range(hi - 1, lo - 1, -1):
            fresh = (best < 0) & ad[ii, k] & bd[k, jj]
            best[fresh] = k
        out[ii, jj] = best
        open_[ii, jj] = False
        if not open_.any():
            break
    return out


def _witness_graph(ap: np.ndarray, bp: np.ndarray, prefixes: int, bits: int, t: int):
    """Tripartite graph I, J, K plus one ``w_b`` per ``(t-1)``-bit prefix ``b``."""
    ni, kp = ap.shape
    nj = bp.shape[1]
    k0 = ni + nj
    w0 = k0 + kp
    edges = []
    ki, ii = np.nonzero(ap.T)
    edges += list(zip((ki + k0).tolist(), ii.tolist()))
    kj, jj = np.nonzero(bp)
    edges += list(zip((kj + k0).tolist(), (jj + ni).tolist()))
    shift = bits - t
    for pref in range(prefixes):
        w = w0 + pref
        edges += [(w, x) for x in range(ni + nj)]
        # children: every k whose top t bits read pref || 1
        top = (pref << 1) | 1
        edges += [(w, k0 + k) for k in range(top << shift, (top + 1) << shift)]
    return Dag(w0 + prefixes, edges), k0, w0


def max_witness_via_verlca(a: BoolMatrix, b: BoolMatrix, verlca: VerLcaSolver) -> np.ndarray:
    """Max-Witness from ``ceil(log2 n_padded)`` calls to an AP-Ver-LCA solver.

    The witness index range gets a guard index 0 (all-ones column of ``A``,
    all-ones row of ``B``) and zero padding up to a power of two.  Phase ``t``
    guesses, for every ``(i, j)``, that the vertex for its current ``t-1`` bit
    prefix is an LCA; the solver's yes/no answer fixes bit ``t`` to 0/1.
    """
    from .listing import latest_lca

    inner = _check_square_pair(a, b)
    ni, nj = a.rows, b.cols
    out = np.full((ni, nj), NONE, dtype=np.int64)
    if ni == 0 or nj == 0:
        return out
    kp = 1 << max(0, math.ceil(math.log2(inner + 1)))
    bits = kp.bit_length() - 1
    ap = np.zeros((ni, kp), dtype=bool)
    ap[:, 0] = True
    ap[:, 1:inner + 1] = a.dense()
    bp = np.zeros((kp, nj), dtype=bool)
    bp[0, :] = True
    bp[1:inner + 1, :] = b.dense()

    prefix = np.zeros((ni, nj), dtype=np.int64)
    ii, jj = np.meshgrid(np.arange(ni), np.arange(nj), indexing="ij")
    for t in range(1, bits + 1):
        g, k0, w0 = _witness_graph(ap, bp, 1 << (t - 1), bits, t)
        cand = latest_lca(g).table[:, :, 0].astype(np.int64)
        guess = w0 + prefix
        cand[ii, jj + ni] = guess
        cand[jj + ni, ii] = guess
        answer = np.asarray(verlca(g, cand), dtype=bool)
        if answer.shape != (g.n, g.n):
            raise SolverContractViolation(f"solver returned shape {answer.shape}")
        others = np.ones((g.n, g.n), dtype=bool)
        others[ii, jj + ni] = False
        others[jj + ni, ii] = False
        if not answer[others].all():
            raise SolverContractViolation("solver rejected a genuine LCA candidate")
        yes = answer[ii, jj + ni]
        prefix = (prefix << 1) | (~yes).astype(np.int64)

    valid = ap[ii, prefix] & bp[prefix, jj]
    if not valid.all():
        raise SolverContractViolation("decoded witnesses fail re-verification")
    if np.any((prefix == 0) & bool_product(a, b).dense()):
        raise SolverContractViolation("solver hid a witness behind the guard index")
    return np.where(prefix == 0, NONE, prefix - 1)
