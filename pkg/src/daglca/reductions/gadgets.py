"""Gadget constructions that turn clique-type questions into LCA questions.

Each builder returns a :class:`GadgetInstance`, the DAG plus the vertex pairs
whose LCA answers decide the source instance.  The forward solvers take the
LCA solver as a parameter and default to the brute-force oracle, since the
point here is correctness of the constructions rather than speed.

The SAT-to-hyperclique pipeline behind the SETH lower bound is not built:
its instances are exponentially large.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..graph import Dag
from ..oracle import LcaReport, ap_verify, count_lcas
from .hypergraph import FourPartiteGraph, Hypergraph3

Counter = Callable[[Dag], LcaReport]


@dataclass(frozen=True)
class GadgetInstance:
    """A reduction output.

    ``query_pairs[i]`` is a vertex pair of ``graph`` and ``query_labels[i]``
    the source-side tuple it stands for.  ``vertex_map`` sends
    ``(layer, labels)`` keys to gadget vertices, and ``layers`` records the
    id range of each layer.
    """

    graph: Dag
    query_pairs: tuple[tuple[int, int], ...]
    query_labels: tuple[tuple[int, ...], ...]
    expected_count: int | None
    vertex_map: dict = field(hash=False, compare=False)
    layers: tuple[tuple[str, range], ...] = ()


def add_one_lca(g: Dag) -> tuple[Dag, np.ndarray]:
    """A DAG on ``2n + 1`` vertices where every pair ``(vertex_map[u], vertex_map[v])`` has
    exactly one LCA more than ``(u, v)`` has in ``g``.

    Layout: the copy ``V'`` is ``0..n-1`` (carrying the edges of ``g``),
    ``V''`` is ``n..2n-1`` and the apex is ``2n``.  Each ``u'`` and the apex
    point to ``u''``.
    """
    n = g.n
    edges = list(g.edges)
    edges += [(u, n + u) for u in range(n)]
    edges += [(2 * n, n + u) for u in range(n)]
    return Dag(2 * n + 1, edges), np.arange(n, 2 * n, dtype=np.int64)


# -- Exact-k gadgets from 3-uniform hypercliques -------------------------------------------

@dataclass(frozen=True)
class _Scheme:
    groups: tuple[str, ...]  # partition required of the source, besides U
    middle: tuple[str, ...]  # tuple types of the middle layer
    bottom: tuple[str, str]  # the two tuple types of the bottom layer


SCHEMES = {
    3: _Scheme(("A", "B", "C"), ("AB", "BC", "CA"), ("AB", "C")),
    4: _Scheme(("A", "B", "C", "D"), ("AB", "AC", "AD", "BCD"), ("AB", "CD")),
    5: _Scheme(("A", "B", "C", "D", "E"), ("ACD", "BCD", "ABE", "CE", "DE"), ("ABC", "DE")),
    6: _Scheme(("A", "B", "C", "D"), ("AB", "AC", "AD", "BC", "BD", "CD"), ("AB", "CD")),
}


def _tuples(h: Hypergraph3, kind: str) -> list[dict[str, int]]:
    return [dict(zip(kind, combo)) for combo in product(*(h.members(g) for g in kind))]


def _consistent(x: dict[str, int], y: dict[str, int]) -> bool:
    return all(y[g] == v for g, v in x.items() if g in y)


def _key(t: dict[str, int]) -> tuple[int, ...]:
    return tuple(t[g] for g in sorted(t))


def build_hyperclique_gadget(h: Hypergraph3, target_k: int) -> GadgetInstance:
    """Exact-``target_k`` instance whose bottom-layer pairs detect hypercliques.

    Layers: a copy of ``U`` on top, tuples of the middle types, and the two
    bottom tuple types.  The top layer reaches every bottom vertex; a middle
    tuple reaches a bottom tuple when no shared group disagrees; ``u``
    reaches middle tuple ``t`` unless ``{u} | t`` is a hyperclique.  Every
    queried bottom pair then has exactly ``target_k`` middle-layer LCAs, and
    gains a top-layer LCA exactly when some ``u`` completes its labels.
    """
    if target_k not in SCHEMES:
        raise ValueError(f"target_k must be one of {sorted(SCHEMES)}")
    scheme = SCHEMES[target_k]
    h.require_groups(scheme.groups + ("U",))

    ids: dict = {}
    layers = []
    top = list(h.members("U"))
    for u in top:
        ids[(1, (u,))] = len(ids)
    layers.append(("top", range(0, len(ids))))
    start = len(ids)
    middle = [t for kind in scheme.middle for t in _tuples(h, kind)]
    for t in middle:
        ids[(2, _key(t))] = len(ids)
    layers.append(("middle", range(start, len(ids))))
    start = len(ids)
    left, right = (_tuples(h, kind) for kind in scheme.bottom)
    for t in left + right:
        ids[(3, _key(t))] = len(ids)
    layers.append(("bottom", range(start, len(ids))))

    bottom = left + right
    edges = [(ids[(1, (u,))], ids[(3, _key(b))]) for u in top for b in bottom]
    edges += [(ids[(2, _key(t))], ids[(3, _key(b))])
              for t in middle for b in bottom if _consistent(t, b)]
    edges += [(ids[(1, (u,))], ids[(2, _key(t))])
              for u in top for t in middle if not h.is_clique([u, *t.values()])]

    pairs, labels = [], []
    for x in left:
        for y in right:
            pairs.append((ids[(3, _key(x))], ids[(3, _key(y))]))
            labels.append(_key({**x, **y}))
    return GadgetInstance(Dag(len(ids), edges), tuple(pairs), tuple(labels),
                          target_k, ids, tuple(layers))


def solve_hyperclique_via_eqlca(h: Hypergraph3, target_k: int, counter: Counter = count_lcas) -> bool:
    """Does ``h`` have a hyperclique on one vertex of each group?

    True when some queried pair whose labels already form a hyperclique has
    an LCA count other than ``target_k``.
    """
    gadget = build_hyperclique_gadget(h, target_k)
    counts = counter(gadget.graph).lengths()
    for (x, y), lab in zip(gadget.query_pairs, gadget.query_labels):
        if counts[x, y] != gadget.expected_count and h.is_clique(lab):
            return True
    return False


# -- AP-#LCA gadget from 4-partite 4-cliques ---------------------------------------------------

def build_four_clique_gadget(g4: FourPartiteGraph) -> GadgetInstance:
    """Three-layer DAG on ``A, B, C, D, A', B'`` (in that id order).

    ``C`` on top, ``A', D, B'`` in the middle, ``A, B`` at the bottom.  Edges
    of ``g4`` are directed from ``C`` to ``A, B, D`` and from ``D`` to
    ``A, B``; ``A-B`` edges are dropped.  ``a' -> a``, ``b' -> b``,
    ``a' -> B`` and ``b' -> A`` always; ``c -> a'`` when ``{c, a}`` is *not*
    an edge, and likewise for ``b'``.
    """
    if len(set(g4.sizes)) != 1:
        g4, _ = g4.padded()
    size = g4.sizes[0]
    A, B, C, D = (list(g4.members(p)) for p in range(4))
    a_copy = {a: 4 * size + i for i, a in enumerate(A)}
    b_copy = {b: 5 * size + i for i, b in enumerate(B)}
    adj = g4.adjacency()
    edges = []
    for c in C:
        edges += [(c, x) for x in A + B + D if adj[c, x]]
        edges += [(c, a_copy[a]) for a in A if not adj[c, a]]
        edges += [(c, b_copy[b]) for b in B if not adj[c, b]]
    for d in D:
        edges += [(d, x) for x in A + B if adj[d, x]]
    for a in A:
        edges += [(a_copy[a], a)] + [(a_copy[a], b) for b in B]
    for b in B:
        edges += [(b_copy[b], b)] + [(b_copy[b], a) for a in A]

    ids = {(name, v): v for name, part in zip("ABCD", (A, B, C, D)) for v in part}
    ids.update({("A'", a): x for a, x in a_copy.items()})
    ids.update({("B'", b): x for b, x in b_copy.items()})
    layers = (("top", range(2 * size, 3 * size)),
              ("middle", range(3 * size, 6 * size)),
              ("bottom", range(0, 2 * size)))
    pairs = tuple((a, b) for a in A for b in B)
    return GadgetInstance(Dag(6 * size, edges), pairs, pairs, None, ids, layers)


def solve_4clique_via_countlca(g4: FourPartiteGraph, counter: Counter = count_lcas) -> bool:
    """4-clique detection from one all-pairs LCA count.

    For ``a in A, b in B``: the middle-layer LCAs are the common in-neighbours
    there, so subtracting them from ``|LCA(a, b)|`` leaves the top-layer LCAs.
    ``Q(a, b)`` counts ``c`` adjacent to both; a clique through the edge
    ``{a, b}`` exists iff ``Q(a, b)`` exceeds the top-layer LCA count.
    """
    if len(set(g4.sizes)) != 1:
        g4, _ = g4.padded()
    size = g4.sizes[0]
    if size == 0:
        return False
    gadget = build_four_clique_gadget(g4)
    A = np.arange(0, size)
    B = np.arange(size, 2 * size)
    C = np.arange(2 * size, 3 * size)
    mid = np.arange(3 * size, 6 * size)
    total = counter(gadget.graph).lengths()[np.ix_(A, B)]
    into = gadget.graph.adjacency.dense()[mid].astype(np.int64)
    in_middle = into[:, A].T @ into[:, B]
    adj = g4.adjacency().astype(np.int64)
    q = adj[np.ix_(A, C)] @ adj[np.ix_(C, B)]
    hit = (q - (total - in_middle) > 0) & (adj[np.ix_(A, B)] > 0)
    return bool(hit.any())


# -- Ver-LCA gadget from 4-hypercliques ---------------------------------------------------------

VerLca = Callable[[Dag, np.ndarray], np.ndarray]


def build_verlca_gadget(h: Hypergraph3) -> GadgetInstance:
    """Three layers ``A x B``, a copy of ``U``, ``(B x C) + (C x A)`` plus an apex.

    ``(a, b)`` reaches every bottom vertex and reaches ``u`` when
    ``{u, a, b}`` is a hyperedge; ``u`` reaches ``(b, c)`` or ``(c, a)`` under
    the same rule.  The apex reaches everything.  Queries are the pairs
    ``((b, c), (c, a))`` with ``{a, b, c}`` a hyperedge, labelled ``(a, b, c)``.
    """
    h.require_groups(("A", "B", "C", "U"))
    A, B, C, U = (list(h.members(g)) for g in "ABCU")
    ids: dict = {}
    for a in A:
        for b in B:
            ids[("AB", a, b)] = len(ids)
    top = range(0, len(ids))
    for u in U:
        ids[("U", u)] = len(ids)
    middle = range(top.stop, len(ids))
    for b in B:
        for c in C:
            ids[("BC", b, c)] = len(ids)
    for c in C:
        for a in A:
            ids[("CA", c, a)] = len(ids)
    bottom = range(middle.stop, len(ids))
    apex = len(ids)
    ids[("s",)] = apex

    edges = [(x, y) for x in top for y in bottom]
    for a in A:
        for b in B:
            edges += [(ids[("AB", a, b)], ids[("U", u)]) for u in U if h.has_edge(u, a, b)]
    for u in U:
        edges += [(ids[("U", u)], ids[("BC", b, c)]) for b in B for c in C if h.has_edge(u, b, c)]
        edges += [(ids[("U", u)], ids[("CA", c, a)]) for c in C for a in A if h.has_edge(u, c, a)]
    edges += [(apex, v) for v in range(apex)]

    pairs, labels = [], []
    for a in A:
        for b in B:
            for c in C:
                if h.has_edge(a, b, c):
                    pairs.append((ids[("BC", b, c)], ids[("CA", c, a)]))
                    labels.append((a, b, c))
    layers = (("top", top), ("middle", middle), ("bottom", bottom), ("apex", range(apex, apex + 1)))
    return GadgetInstance(Dag(apex + 1, edges), tuple(pairs), tuple(labels), None, ids, layers)


def verlca_candidates(gadget: GadgetInstance) -> np.ndarray:
    """Genuine latest LCAs everywhere, except ``(a, b)`` on each query pair."""
    from ..listing import latest_lca

    cand = latest_lca(gadget.graph).table[:, :, 0].astype(np.int64)
    for (x, y), (a, b, _) in zip(gadget.query_pairs, gadget.query_labels):
        w = gadget.vertex_map[("AB", a, b)]
        cand[x, y] = cand[y, x] = w
    return cand


def solve_4hyperclique_via_verlca(h: Hypergraph3, verlca: VerLca = ap_verify) -> bool:
    """True iff some candidate is rejected, i.e. ``h`` has a 4-hyperclique."""
    gadget = build_verlca_gadget(h)
    bits = np.asarray(verlca(gadget.graph, verlca_candidates(gadget)), dtype=bool)
    return bool((~bits).any())


def required_groups(target_k: int) -> Sequence[str]:
    """Partition a source hypergraph needs for ``build_hyperclique_gadget``."""
    return SCHEMES[target_k].groups + ("U",)
