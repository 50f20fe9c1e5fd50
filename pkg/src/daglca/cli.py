"""Command line: ``daglca gen | run | check | bench``.

Exit codes: 0 success or pass, 1 check failure or a failed computation,
2 usage error, 3 unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import logging
import os
import statistics
import sys
import time
from collections.abc import Callable
from contextlib import nullcontext
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, io
from .errors import (
    CycleDetected,
    DagLcaError,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidBlockSize,
    InvalidGraph,
    NotFourPartite,
    ParseError,
    PartitionMismatch,
)
from .exact import exact1_lca, exact2_lca
from .graph import Dag, layered_dag, random_dag, transitive_closure
from .listing import ap2_lca, ap3_lca, atleast_k, atmost_k, exact_k, latest_lca, list_k_lcas
from .matrix import BoolMatrix
from .oracle import NONE, all_lcas, ap_verify, count_lcas, k_lcas_bruteforce, verify_candidates
from .reductions import (
    add_one_lca,
    brute_4clique,
    brute_hyperclique,
    random_four_partite,
    random_partitioned_hypergraph,
    solve_4clique_via_countlca,
    solve_4hyperclique_via_verlca,
    solve_hyperclique_via_eqlca,
)
from .reductions.hypergraph import GROUP_NAMES
from .witness import max_witness_direct, max_witness_naive, max_witness_via_verlca

log = logging.getLogger("daglca")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3
INPUT_ERRORS = (ParseError, CycleDetected, InvalidGraph, DimensionMismatch, IndexOutOfRange,
                InvalidBlockSize, PartitionMismatch, NotFourPartite, OSError)

# clique size each hyperclique gadget detects
HYPERCLIQUE_SIZE = {3: 4, 4: 5, 5: 6, 6: 5}
DEFAULT_HYPER_PARTS = {3: "4,4,4,16", 4: "4,2,2,2,16", 5: "2,2,2,2,2,6", 6: "3,3,3,3,9"}


class UsageError(Exception):
    pass


@dataclass
class Result:
    """What an algorithm returns, normalised for writing and comparing."""

    kind: str  # lists | counts | decision | closure | exact | witness | latest | answer | dag | verify
    n: int
    value: object
    extra: dict | None = None


# -- algorithm registry ---------------------------------------------------------------------------

def _need_k(k: int | None, alg: str, minimum: int = 0) -> int:
    if k is None:
        raise UsageError(f"--k is required for {alg}")
    if k < minimum:
        raise UsageError(f"--k must be at least {minimum} for {alg}")
    return k


def _exact(rep) -> Result:
    return Result("exact", rep.n, (rep.found, rep.lcas),
                  {"target": rep.target, "attempts": rep.attempts, "rejected": rep.rejected})


DAG_ALGS: dict[str, Callable] = {
    "closure": lambda g, a: Result("closure", g.n, transitive_closure(g).dense()),
    "all-lca": lambda g, a: Result("lists", g.n, all_lcas(g).table),
    "count-lca": lambda g, a: Result("counts", g.n, count_lcas(g).counts),
    "k-lca-brute": lambda g, a: Result(
        "lists", g.n, k_lcas_bruteforce(g, _need_k(a.k, "k-lca-brute", 1)).table),
    "exact1": lambda g, a: _exact(exact1_lca(g, a.seed)),
    "exact2": lambda g, a: _exact(exact2_lca(g, a.seed)),
    "exact-k": lambda g, a: Result("decision", g.n, exact_k(g, _need_k(a.k, "exact-k"), a.seed)),
    "atleast-k": lambda g, a: Result("decision", g.n, atleast_k(g, _need_k(a.k, "atleast-k"), a.seed)),
    "atmost-k": lambda g, a: Result("decision", g.n, atmost_k(g, _need_k(a.k, "atmost-k"), a.seed)),
    "latest-lca": lambda g, a: Result("latest", g.n, latest_lca(g).table[:, :, 0]),
    "list-k": lambda g, a: Result("lists", g.n, list_k_lcas(g, _need_k(a.k, "list-k", 1), L=a.L).table),
    "ap2": lambda g, a: Result("lists", g.n, ap2_lca(g, a.L).table),
    "ap3": lambda g, a: Result("lists", g.n, ap3_lca(g, a.L).table),
    "add-one-lca": lambda g, a: _add_one(g),
}

MATRIX_ALGS = {
    "max-witness": lambda x, y, a: max_witness_direct(x, y, a.L),
    "max-witness-via-verlca": lambda x, y, a: max_witness_via_verlca(x, y, ap_verify),
}

OTHER_ALGS = ("verify", "solve-hyperclique", "solve-4clique", "solve-4hyperclique-verlca")
ALGORITHMS = tuple(DAG_ALGS) + tuple(MATRIX_ALGS) + OTHER_ALGS
ORACLES = (
    "count-lca", "k-lca-brute", "all-lca", "naive", "max-witness", "brute-hyperclique", "brute-4clique",
)


def _add_one(g: Dag) -> Result:
    out, vertex_map = add_one_lca(g)
    return Result("dag", out.n, out, {"vertex_map": vertex_map.tolist()})


def _hyper_k(args) -> int:
    k = 3 if args.k is None else args.k
    if k not in HYPERCLIQUE_SIZE:
        raise UsageError("--k must be 3, 4, 5 or 6 for solve-hyperclique")
    return k


def run_algorithm(args) -> Result:
    alg = args.alg
    if alg in DAG_ALGS:
        return DAG_ALGS[alg](io.read_dag(_need_in(args.inp)), args)
    if alg in MATRIX_ALGS:
        a, b = io.read_matrix(_need_in(args.inp)), io.read_matrix(_need_in(args.in2, "--in2"))
        return Result("witness", a.rows, MATRIX_ALGS[alg](a, b, args))
    if alg == "verify":
        g = io.read_dag(_need_in(args.inp))
        path = _need_in(args.in2, "--in2")
        cand = io.parse_candidates(Path(path).read_text(), g.n, path)
        res = verify_candidates(g, cand)
        return Result("verify", g.n, res.bits, {"any_error": res.any_error})
    if alg == "solve-hyperclique":
        k = _hyper_k(args)
        h = io.read_hypergraph(_need_in(args.inp))
        return Result("answer", h.n, solve_hyperclique_via_eqlca(h, k))
    if alg == "solve-4clique":
        g4 = io.read_four_partite(_need_in(args.inp))
        return Result("answer", g4.n, solve_4clique_via_countlca(g4))
    if alg == "solve-4hyperclique-verlca":
        h = io.read_hypergraph(_need_in(args.inp))
        return Result("answer", h.n, solve_4hyperclique_via_verlca(h))
    raise UsageError(f"unknown algorithm {alg!r}")


def _need_in(path: str | None, flag: str = "--in") -> str:
    if path is None:
        raise UsageError(f"{flag} is required")
    return path


# -- output ---------------------------------------------------------------------------------------

def _table_lists(table: np.ndarray) -> list:
    return [[[int(x) for x in cell if x >= 0] for cell in row] for row in table]


def render(result: Result, fmt: str, provenance: dict) -> str:
    kind, n, value = result.kind, result.n, result.value
    extra = result.extra or {}
    if fmt == "csv":
        if kind in ("counts", "latest", "witness"):
            return io.matrix_csv(value)
        if kind in ("decision", "closure", "verify"):
            return io.matrix_csv(np.asarray(value, dtype=np.int64))
        if kind == "lists":
            return io.lists_csv(_table_lists(value))
        if kind == "exact":
            found, lcas = value
            return io.lists_csv([[[int(x) for x in lcas[u, v]] if found[u, v] else []
                                  for v in range(n)] for u in range(n)])
        if kind == "answer":
            return f"answer\n{int(bool(value))}\n"
        raise UsageError(f"no CSV form for {kind} output")
    if kind in ("counts",):
        data = np.asarray(value).tolist()
    elif kind in ("decision", "closure", "verify"):
        data = np.asarray(value, dtype=np.int64).tolist()
    elif kind in ("latest", "witness"):
        data = io.nullable(value)
    elif kind == "lists":
        data = _table_lists(value)
    elif kind == "exact":
        found, lcas = value
        data = [[[int(x) for x in lcas[u, v]] if found[u, v] else None for v in range(n)]
                for u in range(n)]
    elif kind == "answer":
        data = bool(value)
    elif kind == "dag":
        data = {"n": value.n, "edges": [list(e) for e in value.edges]}
    else:
        raise UsageError(f"unknown output kind {kind}")
    return io.report_json(kind, n, data, provenance, **extra)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def provenance(args, inputs: list[str]) -> dict:
    return {
        "algorithm": args.alg,
        "seed": args.seed,
        "k": args.k,
        "L": args.L,
        "inputs": [{"path": Path(p).name, "sha256": io.sha256_of(p)} for p in inputs],
        "version": __version__,
    }


# -- instance generators shared by gen, check and bench -----------------------------------------

def _csv_ints(text: str, flag: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"{flag}: expected comma separated integers") from exc
    if any(v < 0 for v in vals):
        raise UsageError(f"{flag}: values must be non-negative")
    return vals


def _csv_floats(text: str, flag: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"{flag}: expected comma separated numbers") from exc
    if not vals or any(not 0.0 <= v <= 1.0 for v in vals):
        raise UsageError(f"{flag}: probabilities must lie in [0, 1]")
    return vals


def hyper_parts(sizes: list[int]) -> list[tuple[str, int]]:
    if not 3 <= len(sizes) <= len(GROUP_NAMES):
        raise UsageError("--parts needs between 3 and 6 group sizes (the last is U)")
    names = GROUP_NAMES[: len(sizes) - 1] + ("U",)
    return list(zip(names, sizes))


def random_layered(layers: list[int], p: float, seed: int) -> Dag:
    """Edges only between consecutive layers, each w.p. ``p``."""
    rng = np.random.default_rng(seed)
    coins = {}

    def rule(i, a, j, b):
        if j != i + 1:
            return False
        key = (i, a, b)
        if key not in coins:
            coins[key] = rng.random() < p
        return coins[key]

    return layered_dag(layers, rule)


def random_matrix(rows: int, cols: int, p: float, seed: int) -> BoolMatrix:
    rng = np.random.default_rng(seed)
    return BoolMatrix.from_dense(rng.random((rows, cols)) < p)


# -- commands -------------------------------------------------------------------------------------

def cmd_gen(args) -> int:
    p = args.p
    if not 0.0 <= p <= 1.0:
        raise UsageError("--p must lie in [0, 1]")
    if args.kind == "random-dag":
        g = random_dag(args.n, p, args.seed)
        text = io.dag_to_json(g) if args.format == "json" else io.dag_to_text(g)
        summary = f"n={g.n} m={g.m} seed={args.seed}"
    elif args.kind == "layered":
        g = random_layered(_csv_ints(args.layers, "--layers"), p, args.seed)
        text = io.dag_to_json(g) if args.format == "json" else io.dag_to_text(g)
        summary = f"n={g.n} m={g.m} seed={args.seed}"
    elif args.kind == "hypergraph":
        h = random_partitioned_hypergraph(hyper_parts(_csv_ints(args.parts, "--parts")), p, args.seed)
        text = io.hypergraph_to_text(h)
        summary = f"n={h.n} m={h.m} seed={args.seed}"
    else:
        sizes = _csv_ints(args.parts, "--parts") if args.parts else [args.n] * 4
        if len(sizes) != 4:
            raise UsageError("--parts needs four sizes for a 4-partite graph")
        g4 = random_four_partite(sizes, p, args.seed)
        text = io.four_partite_to_text(g4)
        summary = f"n={g4.n} m={len(g4.edges)} seed={args.seed}"
    _emit(text, args.out)
    print(summary, file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


def cmd_run(args) -> int:
    if args.L is not None and args.L < 1:
        raise UsageError("--L must be at least 1")
    result = run_algorithm(args)
    inputs = [p for p in (args.inp, args.in2) if p is not None]
    _emit(render(result, args.format, provenance(args, inputs)), args.out)
    return EXIT_OK


@dataclass
class Trial:
    instance: object
    dump: str  # serialised instance for counterexample files
    label: str


def _trials(args, kind: str):
    defaults = {"dag": [0.05, 0.1, 0.3], "matrix": [0.1, 0.3, 0.5],
                "hyper": [0.3, 0.6, 0.9], "fourpartite": [0.3, 0.5, 0.8]}
    ps = _csv_floats(args.p, "--p") if args.p else defaults[kind]
    for t in range(args.trials):
        seed, p = args.seed + t, ps[t % len(ps)]
        if kind == "dag":
            g = random_dag(args.n, p, seed)
            yield Trial(g, io.dag_to_json(g), f"random-dag n={args.n} p={p} seed={seed}")
        elif kind == "matrix":
            a, b = random_matrix(args.n, args.n, p, 2 * seed), random_matrix(args.n, args.n, p, 2 * seed + 1)
            dump = io.matrix_to_text(a) + io.matrix_to_text(b)
            yield Trial((a, b), dump, f"matrices n={args.n} p={p} seed={seed}")
        elif kind == "hyper":
            k = _hyper_k(args) if args.alg == "solve-hyperclique" else 3
            parts = hyper_parts(_csv_ints(args.parts or DEFAULT_HYPER_PARTS[k], "--parts"))
            h = random_partitioned_hypergraph(parts, p, seed)
            yield Trial(h, io.hypergraph_to_text(h), f"hypergraph p={p} seed={seed}")
        else:
            sizes = _csv_ints(args.parts, "--parts") if args.parts else [6] * 4
            g4 = random_four_partite(sizes, p, seed)
            yield Trial(g4, io.four_partite_to_text(g4), f"4-partite p={p} seed={seed}")


def _dag_truth(g: Dag, oracle: str):
    if oracle == "count-lca":
        return None, count_lcas(g).counts
    lists = all_lcas(g).table
    return lists, (lists >= 0).sum(axis=2)


def _pad(table: np.ndarray, width: int) -> np.ndarray:
    out = np.full(table.shape[:2] + (width,), NONE, dtype=np.int64)
    w = min(width, table.shape[2])
    out[:, :, :w] = table[:, :, :w]
    return out


def _compare_dag(alg: str, g: Dag, args) -> str | None:
    """``None`` when the algorithm agrees with the oracle, else a message."""
    lists, counts = _dag_truth(g, args.oracle)
    res = DAG_ALGS[alg](g, args)
    n = g.n
    if res.kind == "closure":
        ok = np.array_equal(res.value, transitive_closure(g, "squaring").dense())
    elif res.kind == "counts":
        ok = np.array_equal(res.value, counts)
    elif res.kind == "decision":
        rel = {"exact-k": counts == args.k, "atleast-k": counts >= args.k, "atmost-k": counts <= args.k}
        ok = np.array_equal(res.value, rel[alg])
    elif res.kind == "exact":
        found, lcas = res.value
        target = 1 if alg == "exact1" else 2
        want = counts == target
        ok = np.array_equal(found, want)
        if ok and lists is not None:
            ok = np.array_equal(np.where(found[:, :, None], lcas, NONE),
                                np.where(want[:, :, None], _pad(lists, target), NONE))
    elif res.kind in ("lists", "latest"):
        table = res.value if res.kind == "lists" else res.value[:, :, None]
        width = {"latest-lca": 1, "ap2": 2, "ap3": 3, "all-lca": max(n, 1)}.get(alg, args.k)
        ok = np.array_equal((table >= 0).sum(axis=2), np.minimum(counts, width))
        if ok and lists is not None:
            ok = np.array_equal(_pad(table, width), _pad(lists, width))
    elif res.kind == "dag":
        vertex_map = np.array(res.extra["vertex_map"], dtype=np.int64)
        # the shift holds on distinct pairs; LCA(u, u) = {u} pins the diagonal at 1
        shifted = count_lcas(res.value).counts[np.ix_(vertex_map, vertex_map)]
        off = ~np.eye(n, dtype=bool)
        ok = np.array_equal(shifted[off], counts[off] + 1) and bool((np.diagonal(shifted) == 1).all())
    else:
        raise UsageError(f"cannot check {alg}")
    return None if ok else f"{alg} disagrees with {args.oracle}"


def _check_one(args, trial: Trial) -> str | None:
    alg = args.alg
    if alg in DAG_ALGS:
        return _compare_dag(alg, trial.instance, args)
    if alg == "verify":
        # genuine latest LCAs with ~30% of entries replaced by random ids or NONE
        g = trial.instance
        lists = _pad(all_lcas(g).table, max(g.n, 1))
        rng = np.random.default_rng(args.seed)
        flip = rng.random((g.n, g.n)) < 0.3
        cand = np.where(flip, rng.integers(NONE, max(g.n, 1), size=(g.n, g.n)), lists[:, :, 0])
        want = np.where(cand == NONE, lists[:, :, 0] == NONE, (cand[:, :, None] == lists).any(axis=2))
        got = verify_candidates(g, cand)
        ok = np.array_equal(got.bits, want) and got.any_error == bool((~want).any())
        return None if ok else "verify disagrees with all-lca membership"
    if alg in MATRIX_ALGS:
        a, b = trial.instance
        want = max_witness_naive(a, b) if args.oracle == "naive" else max_witness_direct(a, b)
        return None if np.array_equal(MATRIX_ALGS[alg](a, b, args), want) else f"{alg} disagrees"
    if alg in ("solve-hyperclique", "solve-4hyperclique-verlca"):
        h = trial.instance
        k = _hyper_k(args) if alg == "solve-hyperclique" else 3
        got = (solve_hyperclique_via_eqlca(h, k) if alg == "solve-hyperclique"
               else solve_4hyperclique_via_verlca(h))
        want = brute_hyperclique(h, HYPERCLIQUE_SIZE[k])
        return None if got == want else f"{alg} answered {got}, brute force {want}"
    if alg == "solve-4clique":
        got, want = solve_4clique_via_countlca(trial.instance), brute_4clique(trial.instance)
        return None if got == want else f"{alg} answered {got}, brute force {want}"
    raise UsageError(f"cannot check {alg}")


def _instance_kind(alg: str) -> str:
    if alg in DAG_ALGS or alg == "verify":
        return "dag"
    if alg in MATRIX_ALGS:
        return "matrix"
    if alg == "solve-4clique":
        return "fourpartite"
    return "hyper"


ORACLES_FOR = {"dag": ("count-lca", "k-lca-brute", "all-lca"), "matrix": ("naive", "max-witness"),
               "hyper": ("brute-hyperclique",), "fourpartite": ("brute-4clique",)}


def cmd_check(args) -> int:
    if args.trials < 0 or args.n < 0:
        raise UsageError("--trials and --n must be non-negative")
    kind = _instance_kind(args.alg)
    allowed = ("all-lca",) if args.alg == "verify" else ORACLES_FOR[kind]
    if args.oracle not in allowed:
        raise UsageError(f"{args.alg} can be checked against: {', '.join(allowed)}")
    if args.alg in ("exact-k", "atleast-k", "atmost-k", "k-lca-brute", "list-k") and args.k is None:
        raise UsageError(f"--k is required for {args.alg}")
    passed = 0
    for i, trial in enumerate(_trials(args, kind)):
        problem = _check_one(args, trial)
        if problem is not None:
            dump = Path(args.dump or f"counterexample-{args.alg}-{i}.txt")
            dump.write_text(f"# {trial.label}\n# {problem}\n{trial.dump}")
            print(f"FAIL {args.alg} vs {args.oracle}: trial {i} ({trial.label}): {problem}; "
                  f"instance written to {dump}")
            return EXIT_FAIL
        passed += 1
    print(f"PASS {args.alg} vs {args.oracle}: {passed}/{args.trials} trials")
    return EXIT_OK


def _bench_call(args, size: int) -> Callable[[], object]:
    alg, seed = args.alg, args.seed
    ns = argparse.Namespace(**vars(args))
    if alg in DAG_ALGS or alg == "verify":
        p = args.p if args.p is not None else min(1.0, 8.0 / max(size, 1))
        g = random_dag(size, p, seed)
        if alg == "verify":
            cand = latest_lca(g).table[:, :, 0]
            return lambda: verify_candidates(g, cand)
        if ns.k is None:
            ns.k = 2

        def call():
            g._closure = None  # time the closure as part of the algorithm
            return DAG_ALGS[alg](g, ns)
        return call
    if alg in MATRIX_ALGS:
        p = args.p if args.p is not None else 0.1
        a, b = random_matrix(size, size, p, seed), random_matrix(size, size, p, seed + 1)
        return lambda: MATRIX_ALGS[alg](a, b, ns)
    p = args.p if args.p is not None else 0.5
    if alg == "solve-4clique":
        g4 = random_four_partite(size, p, seed)
        return lambda: solve_4clique_via_countlca(g4)
    side = max(1, int(round(size ** 0.5)))
    h = random_partitioned_hypergraph([("A", side), ("B", side), ("C", side), ("U", size)], p, seed)
    if alg == "solve-hyperclique":
        return lambda: solve_hyperclique_via_eqlca(h, 3)
    return lambda: solve_4hyperclique_via_verlca(h)


def cmd_bench(args) -> int:
    if args.repeats < 1:
        raise UsageError("--repeats must be at least 1")
    if args.p is not None and not 0.0 <= args.p <= 1.0:
        raise UsageError("--p must lie in [0, 1]")
    sizes = _csv_ints(args.sizes, "--sizes")
    rows = ["algorithm,n,repeats,median_seconds\n"]
    for size in sizes:
        call = _bench_call(args, size)
        times = []
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            call()
            times.append(time.perf_counter() - t0)
        rows.append(f"{args.alg},{size},{args.repeats},{statistics.median(times):.6f}\n")
    _emit("".join(rows), args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="daglca", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"daglca {__version__}")
    parser.add_argument("--threads", type=int, default=None,
                        help="cap on BLAS threads (default: $DAGLCA_THREADS or unlimited)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a random instance")
    gen.add_argument("kind", choices=("random-dag", "layered", "hypergraph", "fourpartite"))
    gen.add_argument("--n", type=int, default=64, help="vertices (random-dag) or part size (fourpartite)")
    gen.add_argument("--p", type=float, default=0.1, help="edge probability")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--layers", default="8,8,8", help="layer sizes for layered")
    gen.add_argument("--parts", default=None, help="group sizes, e.g. 4,4,4,16 (last group is U)")
    gen.add_argument("--format", choices=("txt", "json"), default="txt")
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)

    run = sub.add_parser("run", help="run one algorithm on input files")
    run.add_argument("--alg", required=True, choices=ALGORITHMS)
    run.add_argument("--in", dest="inp", default=None)
    run.add_argument("--in2", default=None, help="second matrix, or the candidate file for verify")
    run.add_argument("--k", type=int, default=None)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--L", type=int, default=None, help="block size")
    run.add_argument("--format", choices=("json", "csv"), default="json")
    run.add_argument("--out", default=None)
    run.set_defaults(func=cmd_run)

    check = sub.add_parser("check", help="compare an algorithm with an oracle on seeded instances")
    check.add_argument("--alg", required=True, choices=ALGORITHMS)
    check.add_argument("--oracle", required=True, choices=ORACLES)
    check.add_argument("--n", type=int, default=32)
    check.add_argument("--p", default=None, help="comma separated probabilities, cycled over trials")
    check.add_argument("--parts", default=None)
    check.add_argument("--trials", type=int, default=20)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--k", type=int, default=None)
    check.add_argument("--L", type=int, default=None)
    check.add_argument("--dump", default=None, help="where to write a counterexample")
    check.set_defaults(func=cmd_check)

    bench = sub.add_parser("bench", help="median wall time per instance size (CSV)")
    bench.add_argument("--alg", required=True, choices=ALGORITHMS)
    bench.add_argument("--sizes", required=True)
    bench.add_argument("--repeats", type=int, default=3)
    bench.add_argument("--p", type=float, default=None)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--k", type=int, default=None)
    bench.add_argument("--L", type=int, default=None)
    bench.add_argument("--out", default=None)
    bench.set_defaults(func=cmd_bench)
    return parser


def _thread_limit(threads: int | None):
    if threads is None:
        env = os.environ.get("DAGLCA_THREADS")
        if env:
            try:
                threads = int(env)
            except ValueError as exc:
                raise UsageError("DAGLCA_THREADS must be an integer") from exc
    if threads is None:
        return nullcontext()
    if threads < 1:
        raise UsageError("thread count must be at least 1")
    from threadpoolctl import threadpool_limits

    return threadpool_limits(limits=threads)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        with _thread_limit(args.threads):
            return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"daglca: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        print(f"daglca: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DagLcaError as exc:
        print(f"daglca: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
