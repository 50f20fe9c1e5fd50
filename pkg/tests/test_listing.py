import math

import numpy as np
import pytest
from conftest import dags
from hypothesis import given
from hypothesis import strategies as st

from daglca import (
    Dag,
    InvalidBlockSize,
    SolverContractViolation,
    ap2_lca,
    ap3_lca,
    atleast_k,
    atmost_k,
    count_lcas,
    exact_k,
    is_lca,
    k_lcas_bruteforce,
    latest_lca,
    list_k_lcas,
    oracle_atleast,
    random_dag,
    topological_order,
    transitive_closure,
)
from daglca.listing import BlockScheme


class TestBlockScheme:
    def test_partition(self):
        s = BlockScheme(10, 4)
        assert len(s) == 3
        assert [s.bounds(i) for i in range(3)] == [(0, 4), (4, 8), (8, 10)]

    @pytest.mark.parametrize("L", [0, 11, -1])
    def test_invalid(self, L):
        with pytest.raises(InvalidBlockSize):
            BlockScheme(10, L)

    def test_default_is_ceil_sqrt(self):
        assert BlockScheme.for_graph(Dag(10), None).L == 4


class TestLatest:
    def test_butterfly(self, butterfly):
        assert latest_lca(butterfly).get(2, 3) == [1]

    def test_chain(self, chain):
        assert latest_lca(chain).get(1, 2) == [1]

    def test_isolated_is_empty(self, isolated_pair):
        assert latest_lca(isolated_pair).get(0, 1) == []

    def test_seed3_matches_first_brute(self):
        g = random_dag(64, 0.1, 3)
        assert latest_lca(g).same_lists(k_lcas_bruteforce(g, 1))

    @pytest.mark.parametrize("seed", range(3))
    def test_always_an_lca(self, seed):
        g = random_dag(128, 0.05, seed)
        d = transitive_closure(g)
        rep = latest_lca(g)
        for u in range(g.n):
            for v in range(u, g.n):
                ids = rep.get(u, v)
                if ids:
                    assert is_lca(d, u, v, ids[0])


class TestThresholds:
    def test_butterfly(self, butterfly):
        assert atleast_k(butterfly, 2)[2, 3]
        assert exact_k(butterfly, 2)[2, 3]
        assert not exact_k(butterfly, 1)[2, 3]

    def test_diamond(self, diamond):
        assert not atleast_k(diamond, 2)[1, 2]

    def test_isolated_exact_zero(self, isolated_pair):
        assert exact_k(isolated_pair, 0)[0, 1]

    def test_negative_k(self, chain):
        for f in (atleast_k, atmost_k, exact_k):
            with pytest.raises(ValueError):
                f(chain, -1)

    def test_seed5_all_thresholds(self):
        g = random_dag(64, 0.1, 5)
        counts = count_lcas(g).counts
        for k in range(5):
            assert np.array_equal(atleast_k(g, k), counts >= k)
            assert np.array_equal(atmost_k(g, k), counts <= k)
            assert np.array_equal(exact_k(g, k), counts == k)

    @given(dags(max_n=14), st.integers(0, 4))
    def test_identities(self, g, k):
        counts = count_lcas(g).counts
        assert np.array_equal(atleast_k(g, k), counts >= k)
        assert np.array_equal(exact_k(g, k), counts == k)


class TestListK:
    def test_butterfly(self, butterfly):
        assert list_k_lcas(butterfly, 2, oracle_atleast, L=2).get(2, 3) == [1, 0]

    def test_chain(self, chain):
        assert list_k_lcas(chain, 3).get(1, 2) == [1]

    def test_bad_block(self, chain):
        with pytest.raises(InvalidBlockSize):
            list_k_lcas(chain, 1, L=4)

    def test_lying_detector(self, chain):
        with pytest.raises(SolverContractViolation):
            list_k_lcas(chain, 2, lambda h, ell: np.ones((h.n, h.n), dtype=bool), L=1)

    @given(dags(max_n=12))
    def test_k_n_equals_brute(self, g):
        n = max(g.n, 1)
        assert list_k_lcas(g, n, oracle_atleast).same_lists(k_lcas_bruteforce(g, n))

    @given(dags(max_n=12), st.integers(1, 5), st.data())
    def test_default_detector_and_block_sizes(self, g, k, data):
        L = data.draw(st.integers(1, max(g.n, 1)))
        assert list_k_lcas(g, k, L=L).same_lists(k_lcas_bruteforce(g, k))

    @given(dags(max_n=12), st.integers(1, 4))
    def test_prefix_consistent(self, g, k):
        short, longer = list_k_lcas(g, k), list_k_lcas(g, k + 1)
        for u in range(g.n):
            for v in range(g.n):
                assert longer.get(u, v)[:k] == short.get(u, v)


class TestBlockedListing:
    def test_butterfly(self, butterfly):
        assert ap2_lca(butterfly, L=2).get(2, 3) == [1, 0]

    def test_diamond_single(self, diamond):
        assert ap2_lca(diamond).get(1, 2) == [0]
        assert ap3_lca(diamond).get(1, 2) == [0]

    def test_seed9_block8(self):
        g = random_dag(96, 0.08, 9)
        brute = k_lcas_bruteforce(g, 3)
        assert ap2_lca(g, L=8, debug=True).same_lists(brute.prefix(2))
        assert ap3_lca(g, L=8, debug=True).same_lists(brute)

    def test_bad_block(self, diamond):
        with pytest.raises(InvalidBlockSize):
            ap2_lca(diamond, L=5)

    @pytest.mark.parametrize("seed", range(4))
    def test_independent_of_block_size(self, seed):
        g = random_dag(48, 0.1, seed)
        sizes = {1, 4, math.ceil(math.sqrt(g.n)), g.n}
        two = [ap2_lca(g, L, debug=True) for L in sizes]
        three = [ap3_lca(g, L, debug=True) for L in sizes]
        assert all(r.same_lists(two[0]) for r in two)
        assert all(r.same_lists(three[0]) for r in three)

    @given(dags(max_n=14), st.data())
    def test_prefix_of_brute(self, g, data):
        L = data.draw(st.integers(1, max(g.n, 1)))
        brute = k_lcas_bruteforce(g, 3)
        assert ap2_lca(g, L, debug=True).same_lists(brute.prefix(2))
        assert ap3_lca(g, L, debug=True).same_lists(brute)

    def test_lists_are_latest_first(self):
        g = random_dag(40, 0.15, 8)
        pos = topological_order(g).pos
        rep = ap3_lca(g)
        for u in range(g.n):
            for v in range(g.n):
                ids = rep.get(u, v)
                assert [pos[x] for x in ids] == sorted((pos[x] for x in ids), reverse=True)
