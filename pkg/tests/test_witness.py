import math

import numpy as np
import pytest
import reference as ref
from conftest import bool_matrices, dags
from hypothesis import given
from hypothesis import strategies as st

from daglca import (
    BoolMatrix,
    DimensionMismatch,
    InvalidBlockSize,
    SolverContractViolation,
    ap_verify,
    latest_lca,
    max_witness_direct,
    max_witness_naive,
    max_witness_via_verlca,
    topological_order,
    transitive_closure,
)


def bm(dense):
    return BoolMatrix.from_dense(np.asarray(dense, dtype=bool))


def counting(solver):
    calls = []

    def wrapped(g, cand):
        calls.append(g.n)
        return solver(g, cand)

    return wrapped, calls


class TestDirect:
    def test_ones_times_identity(self):
        c = max_witness_direct(bm(np.ones((3, 3))), BoolMatrix.identity(3))
        assert c.tolist() == [[0, 1, 2]] * 3

    def test_identity_squared(self):
        c = max_witness_direct(BoolMatrix.identity(3), BoolMatrix.identity(3))
        assert c.tolist() == [[0, -1, -1], [-1, 1, -1], [-1, -1, 2]]

    def test_random_32(self):
        rng = np.random.default_rng(32)
        a, b = rng.random((32, 32)) < 0.2, rng.random((32, 32)) < 0.2
        assert max_witness_direct(bm(a), bm(b)).tolist() == ref.max_witness(a.tolist(), b.tolist())

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            max_witness_direct(bm(np.ones((2, 3))), bm(np.ones((2, 2))))

    def test_bad_block(self):
        with pytest.raises(InvalidBlockSize):
            max_witness_direct(BoolMatrix.identity(3), BoolMatrix.identity(3), L=4)

    @given(st.integers(0, 24), st.integers(0, 24), st.integers(0, 24), st.data())
    def test_matches_reference(self, r, k, c, data):
        a = data.draw(bool_matrices(rows=r, cols=k))
        b = data.draw(bool_matrices(rows=k, cols=c))
        L = data.draw(st.integers(1, max(k, 1)))
        want = ref.max_witness(a.tolist(), b.tolist()) if r and k and c else np.full((r, c), -1).tolist()
        assert max_witness_direct(bm(a), bm(b), L).tolist() == want
        assert max_witness_naive(bm(a), bm(b)).tolist() == want

    @given(dags(max_n=16).filter(lambda g: g.n > 0))
    def test_latest_lca_is_permuted_witness(self, g):
        d = transitive_closure(g).dense()
        pi = topological_order(g).pi
        by_pos = d[pi, :]  # row k: descendants of the k-th vertex in the order
        c = max_witness_naive(bm(by_pos.T), bm(by_pos))
        want = np.where(c >= 0, pi[np.clip(c, 0, None)], -1)
        assert np.array_equal(latest_lca(g).table[:, :, 0], want)


class TestViaVerLca:
    def test_ones_times_identity(self):
        c = max_witness_via_verlca(bm(np.ones((4, 4))), BoolMatrix.identity(4), ap_verify)
        assert c.tolist() == [[0, 1, 2, 3]] * 4

    def test_single(self):
        assert max_witness_via_verlca(bm([[1]]), bm([[1]]), ap_verify).tolist() == [[0]]

    def test_random_16(self):
        rng = np.random.default_rng(16)
        a, b = bm(rng.random((16, 16)) < 0.2), bm(rng.random((16, 16)) < 0.2)
        assert np.array_equal(max_witness_via_verlca(a, b, ap_verify), max_witness_direct(a, b))

    @pytest.mark.parametrize("inner", [1, 3, 4, 7, 8, 15])
    def test_call_count_and_sizes(self, inner):
        rng = np.random.default_rng(inner)
        a, b = bm(rng.random((5, inner)) < 0.4), bm(rng.random((inner, 6)) < 0.4)
        solver, calls = counting(ap_verify)
        c = max_witness_via_verlca(a, b, solver)
        assert np.array_equal(c, max_witness_naive(a, b))
        padded = 1 << math.ceil(math.log2(inner + 1))
        assert len(calls) == int(math.log2(padded))
        assert calls == [5 + 6 + padded + 2 ** (t - 1) for t in range(1, len(calls) + 1)]

    def test_always_yes_detected(self):
        with pytest.raises(SolverContractViolation):
            max_witness_via_verlca(bm(np.ones((2, 2))), BoolMatrix.identity(2),
                                   lambda g, cand: np.ones((g.n, g.n), dtype=bool))

    def test_always_no_detected(self):
        with pytest.raises(SolverContractViolation):
            max_witness_via_verlca(BoolMatrix.identity(2), BoolMatrix.identity(2),
                                   lambda g, cand: np.zeros((g.n, g.n), dtype=bool))

    def test_wrong_shape_detected(self):
        with pytest.raises(SolverContractViolation):
            max_witness_via_verlca(BoolMatrix.identity(2), BoolMatrix.identity(2),
                                   lambda g, cand: np.ones((1, 1), dtype=bool))

    def test_empty(self):
        assert max_witness_via_verlca(bm(np.zeros((0, 3))), bm(np.zeros((3, 2))), ap_verify).shape == (0, 2)

    @given(st.integers(1, 6), st.integers(0, 9), st.integers(1, 6), st.data())
    def test_matches_naive(self, r, k, c, data):
        a = bm(data.draw(bool_matrices(rows=r, cols=k)))
        b = bm(data.draw(bool_matrices(rows=k, cols=c)))
        assert np.array_equal(max_witness_via_verlca(a, b, ap_verify), max_witness_naive(a, b))
