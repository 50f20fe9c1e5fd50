import itertools

import numpy as np
import pytest
import reference as ref
from conftest import dags
from hypothesis import given
from hypothesis import strategies as st

import daglca.exact as exact_mod
from daglca import Dag, RetryLimitExceeded, all_lcas, count_lcas, exact1_lca, exact2_lca, random_dag
from daglca import transitive_closure as closure_of
from daglca.exact import intersect_counts, union_counts, verify_pair, verify_unique


def tables(g):
    d = closure_of(g)
    return d, intersect_counts(d), union_counts(d)


class TestVerifyUnique:
    def test_diamond(self, diamond):
        d, inter, _ = tables(diamond)
        assert verify_unique(d, inter, 1, 2, 0)

    def test_butterfly(self, butterfly):
        d, inter, _ = tables(butterfly)
        assert not verify_unique(d, inter, 2, 3, 0)

    def test_chain_non_lowest(self, chain):
        d, inter, _ = tables(chain)
        assert not verify_unique(d, inter, 1, 2, 0)
        assert verify_unique(d, inter, 1, 2, 1)


class TestVerifyPair:
    def test_butterfly(self, butterfly):
        d, inter, union = tables(butterfly)
        assert verify_pair(d, inter, union, 2, 3, 0, 1)
        assert not verify_pair(d, inter, union, 2, 3, 0, 0)

    def test_diamond_not_common(self, diamond):
        d, inter, union = tables(diamond)
        assert not verify_pair(d, inter, union, 1, 2, 0, 3)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_exhaustive_small(self, n):
        # every DAG on n labelled vertices is isomorphic to one whose edges go
        # from lower to higher id, so upper-triangular edge sets cover them all
        slots = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(slots)):
            edges = [e for i, e in enumerate(slots) if mask >> i & 1]
            g = Dag(n, edges)
            d, inter, union = tables(g)
            sets = ref.all_lca_sets(n, edges)
            for u, v in itertools.combinations_with_replacement(range(n), 2):
                for a, b in itertools.combinations(range(n), 2):
                    assert verify_pair(d, inter, union, u, v, a, b) == (sets[u][v] == {a, b})
                for w in range(n):
                    assert verify_unique(d, inter, u, v, w) == (sets[u][v] == {w})


class TestExact1:
    def test_diamond(self, diamond):
        rep = exact1_lca(diamond, seed=0)
        assert rep.get(1, 2) == (0,)
        assert rep.get(3, 3) == (3,)
        assert rep.found.all()

    def test_butterfly(self, butterfly):
        assert exact1_lca(butterfly, seed=0).get(2, 3) is None

    def test_seed7_against_oracle(self):
        g = random_dag(64, 0.1, 7)
        rep = exact1_lca(g, seed=1)
        ora = all_lcas(g)
        assert np.array_equal(rep.found, ora.lengths() == 1)
        for u, v in zip(*np.nonzero(rep.found)):
            assert list(rep.get(u, v)) == ora.get(u, v)
        assert rep.rejected == 0

    def test_retry_limit(self, diamond, monkeypatch):
        real = exact_mod._exact1_round

        def always_reject(*args):
            ok, w, _ = real(*args)
            return ok, w, 1

        monkeypatch.setattr(exact_mod, "_exact1_round", always_reject)
        with pytest.raises(RetryLimitExceeded):
            exact1_lca(diamond, seed=0, max_resamples=2)


class TestExact2:
    def test_butterfly(self, butterfly):
        rep = exact2_lca(butterfly, seed=0)
        assert set(rep.get(2, 3)) == {0, 1}
        assert rep.get(2, 3) == (1, 0)

    def test_diamond(self, diamond):
        assert exact2_lca(diamond, seed=0).get(1, 2) is None

    def test_seed11_against_oracle(self):
        g = random_dag(64, 0.15, 11)
        rep = exact2_lca(g, seed=2)
        ora = all_lcas(g)
        assert np.array_equal(rep.found, ora.lengths() == 2)
        for u, v in zip(*np.nonzero(rep.found)):
            assert list(rep.get(u, v)) == ora.get(u, v)
        assert rep.rejected == 0


class TestProperties:
    @given(dags(max_n=16), st.integers(0, 2**32))
    def test_classification_matches_oracle(self, g, seed):
        counts = count_lcas(g).counts
        assert np.array_equal(exact1_lca(g, seed).found, counts == 1)
        assert np.array_equal(exact2_lca(g, seed).found, counts == 2)

    @given(dags(max_n=16), st.integers(0, 2**32))
    def test_symmetric(self, g, seed):
        rep = exact2_lca(g, seed)
        assert np.array_equal(rep.found, rep.found.T)

    def test_no_fingerprint_rejections(self):
        checked = rejected = 0
        for seed in range(20):
            g = random_dag(64, (0.05, 0.1, 0.3)[seed % 3], seed)
            for run in (exact1_lca, exact2_lca):
                rep = run(g, seed)
                checked += g.n * g.n
                rejected += rep.rejected
        assert checked >= 10_000 and rejected == 0

    def test_deterministic_per_seed(self):
        g = random_dag(40, 0.1, 4)
        a, b = exact2_lca(g, 9), exact2_lca(g, 9)
        assert np.array_equal(a.lcas, b.lcas) and a.attempts == b.attempts
