import numpy as np
import pytest
from conftest import bool_matrices, dags
from hypothesis import given
from hypothesis import strategies as st

from daglca import BoolMatrix, DimensionMismatch, Fingerprint, bool_product, count_product, transitive_closure
from daglca.matrix import (
    MERSENNE61,
    add_mod61,
    gram_counts,
    pack_rows,
    sub_mod61,
    unpack_rows,
    weighted_modp_product,
)


def bm(rows):
    return BoolMatrix.from_dense(np.array(rows, dtype=bool))


class TestBoolMatrix:
    @given(st.integers(0, 6), st.integers(0, 140), st.data())
    def test_pack_roundtrip(self, r, c, data):
        dense = data.draw(bool_matrices(rows=r, cols=c))
        assert np.array_equal(unpack_rows(pack_rows(dense), dense.shape[1]), dense)

    @given(bool_matrices(max_dim=70))
    def test_padding_bits_zero(self, dense):
        m = BoolMatrix.from_dense(dense)
        tail = m.cols % 64
        if tail and m.rows:
            assert not np.any(m.words[:, -1] >> np.uint64(tail))

    def test_rejects_dirty_padding(self):
        with pytest.raises(ValueError):
            BoolMatrix(1, 3, np.array([[0b1000]], dtype=np.uint64))

    def test_rejects_wrong_word_shape(self):
        with pytest.raises(DimensionMismatch):
            BoolMatrix(2, 3, np.zeros((1, 1), dtype=np.uint64))

    def test_indexing_and_transpose(self):
        m = bm([[1, 0, 0], [1, 1, 0]])
        assert m[1, 1] and not m[0, 1]
        assert m.T.shape == (3, 2) and m.T[0, 1]
        with pytest.raises(IndexError):
            m[2, 0]

    def test_dense_is_read_only(self):
        with pytest.raises(ValueError):
            bm([[1]]).dense()[0, 0] = False

    def test_equality(self):
        assert bm([[1, 0]]) == bm([[1, 0]])
        assert bm([[1, 0]]) != bm([[0, 1]])
        assert BoolMatrix.identity(3) == bm(np.eye(3))
        assert BoolMatrix.zeros(2, 2) == bm([[0, 0], [0, 0]])


class TestBoolProduct:
    def test_identity_left(self):
        b = bm([[0, 1, 1], [1, 0, 0], [1, 1, 0]])
        assert bool_product(BoolMatrix.identity(3), b) == b

    def test_zero_right(self):
        assert bool_product(bm([[1, 1], [1, 1]]), BoolMatrix.zeros(2, 2)) == BoolMatrix.zeros(2, 2)

    def test_small_case(self):
        assert bool_product(bm([[1, 0], [1, 1]]), bm([[0, 1], [1, 0]])) == bm([[0, 1], [1, 1]])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            bool_product(bm([[1, 0]]), bm([[1, 0]]))

    @given(st.integers(0, 20), st.integers(0, 90), st.integers(0, 20), st.data())
    def test_matches_numpy(self, r, k, c, data):
        a = data.draw(bool_matrices(rows=r, cols=k))
        b = data.draw(bool_matrices(rows=k, cols=c))
        want = (a.astype(int) @ b.astype(int)) > 0
        assert np.array_equal(bool_product(BoolMatrix.from_dense(a), BoolMatrix.from_dense(b)).dense(), want)


class TestCountProduct:
    def test_identity(self):
        i3 = BoolMatrix.identity(3)
        assert np.array_equal(count_product(i3, i3), np.eye(3))

    def test_all_ones(self):
        ones = bm(np.ones((3, 3)))
        assert np.array_equal(count_product(ones, ones), np.full((3, 3), 3))

    def test_row_times_column(self):
        assert count_product(bm([[1, 1, 0]]), bm([[1], [1], [1]])).tolist() == [[2]]

    @given(st.integers(0, 32), st.integers(0, 32), st.integers(0, 32), st.data())
    def test_matches_triple_loop(self, r, k, c, data):
        a = data.draw(bool_matrices(rows=r, cols=k))
        b = data.draw(bool_matrices(rows=k, cols=c))
        want = np.zeros((r, c), dtype=np.int64)
        for i in range(r):
            for j in range(c):
                want[i, j] = sum(int(a[i, x] and b[x, j]) for x in range(k))
        got = count_product(BoolMatrix.from_dense(a), BoolMatrix.from_dense(b))
        assert np.array_equal(got, want)

    @given(bool_matrices(max_dim=40))
    def test_gram_counts(self, dense):
        got = gram_counts(pack_rows(dense))
        assert np.array_equal(got, dense.astype(int) @ dense.T.astype(int))


class TestFingerprint:
    def test_reproducible_and_in_range(self):
        f1 = Fingerprint.sample(100, seed=5, attempt=2, stream=1)
        f2 = Fingerprint.sample(100, seed=5, attempt=2, stream=1)
        assert np.array_equal(f1.values, f2.values)
        assert int(f1.values.max()) < MERSENNE61

    def test_streams_and_attempts_differ(self):
        base = Fingerprint.sample(50, seed=5)
        assert not np.array_equal(base.values, Fingerprint.sample(50, seed=5, attempt=1).values)
        assert not np.array_equal(base.values, Fingerprint.sample(50, seed=5, stream=1).values)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Fingerprint(p=7, values=np.array([7], dtype=np.uint64), seed=0)

    def test_of_set_and_total(self):
        f = Fingerprint(p=MERSENNE61, values=np.array([MERSENNE61 - 1, 5, 3], dtype=np.uint64), seed=0)
        assert f.of_set([0, 1]) == 4
        assert f.total() == 7

    @given(st.lists(st.integers(0, MERSENNE61 - 1), min_size=1, max_size=20), st.data())
    def test_mod_helpers(self, xs, data):
        ys = data.draw(st.lists(st.integers(0, MERSENNE61 - 1), min_size=len(xs), max_size=len(xs)))
        x, y = np.array(xs, dtype=np.uint64), np.array(ys, dtype=np.uint64)
        assert add_mod61(x, y).tolist() == [(a + b) % MERSENNE61 for a, b in zip(xs, ys)]
        assert sub_mod61(x, y).tolist() == [(a - b) % MERSENNE61 for a, b in zip(xs, ys)]


class TestWeightedProduct:
    def test_identity_gives_diagonal(self):
        f = Fingerprint.sample(4, seed=1)
        c = weighted_modp_product(BoolMatrix.identity(4), f)
        assert np.array_equal(c, np.diag(f.values))

    def test_zero_column(self):
        a = bm([[0, 1], [0, 1], [0, 1]])
        assert weighted_modp_product(a, Fingerprint.sample(3, seed=2))[0, 1] == 0

    def test_butterfly_pair(self, butterfly):
        f = Fingerprint.sample(4, seed=3)
        c = weighted_modp_product(transitive_closure(butterfly), f)
        assert int(c[2, 3]) == f.of_set([0, 1])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            weighted_modp_product(BoolMatrix.identity(3), Fingerprint.sample(4, seed=0))

    @given(dags(max_n=32), st.integers(0, 2**32))
    def test_matches_per_pair_sums(self, g, seed):
        d = transitive_closure(g)
        f = Fingerprint.sample(g.n, seed=seed)
        c = weighted_modp_product(d, f)
        dense = d.dense()
        for u in range(g.n):
            for v in range(g.n):
                assert int(c[u, v]) == f.of_set(np.flatnonzero(dense[:, u] & dense[:, v]))

    def test_extreme_weights_exact(self):
        # every weight p-1 on a full 300-row column pair
        vals = np.full(300, MERSENNE61 - 1, dtype=np.uint64)
        f = Fingerprint(p=MERSENNE61, values=vals, seed=0)
        c = weighted_modp_product(bm(np.ones((300, 2))), f)
        assert int(c[0, 1]) == (300 * (MERSENNE61 - 1)) % MERSENNE61
