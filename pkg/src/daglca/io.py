"""Readers and writers for every file format the command line handles.

Text formats are whitespace separated and allow blank lines.  Lines starting
with ``#`` are comments except for the headers the hypergraph and 4-partite
formats define.  Writers sort edges, so equal instances serialize to
identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import DagLcaError, ParseError
from .graph import Dag
from .matrix import BoolMatrix
from .oracle import NONE
from .reductions import FourPartiteGraph, GadgetInstance, Hypergraph3


def sha256_of(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not a text file") from exc


def _int_rows(lines: list[tuple[int, str]], where: str, width: int) -> list[tuple[int, ...]]:
    out = []
    for no, line in lines:
        parts = line.split()
        if len(parts) != width:
            raise ParseError(f"{where}:{no}: expected {width} integers, got {line!r}")
        try:
            out.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ParseError(f"{where}:{no}: {exc}") from exc
    return out


def _content_lines(text: str) -> list[tuple[int, str]]:
    return [(no, line.strip()) for no, line in enumerate(text.splitlines(), 1)
            if line.strip() and not line.lstrip().startswith("#")]


def _header_and_rows(text: str, where: str, width: int) -> tuple[int, list[tuple[int, ...]]]:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(f"{where}: empty file")
    (n, m), = _int_rows(lines[:1], where, 2)
    rows = _int_rows(lines[1:], where, width)
    if len(rows) != m:
        raise ParseError(f"{where}: header announces {m} lines, found {len(rows)}")
    if n < 0:
        raise ParseError(f"{where}: negative vertex count")
    return n, rows


def _build(kind, where, *args):
    try:
        return kind(*args)
    except DagLcaError as exc:
        raise type(exc)(f"{where}: {exc}") from exc


# -- DAGs ------------------------------------------------------------------------------------------

def dag_to_text(g: Dag) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def dag_to_json(g: Dag) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]}, separators=(",", ":")) + "\n"


def parse_dag(text: str, where: str = "<input>") -> Dag:
    """Either format; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
            n = int(obj["n"])
            edges = [(int(u), int(v)) for u, v in obj["edges"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"{where}: malformed DAG JSON ({exc})") from exc
    else:
        n, edges = _header_and_rows(text, where, 2)
    return _build(Dag, where, n, edges)


def read_dag(path: str | Path) -> Dag:
    return parse_dag(_read_text(path), str(path))


def write_dag(g: Dag, path: str | Path) -> None:
    path = Path(path)
    path.write_text(dag_to_json(g) if path.suffix == ".json" else dag_to_text(g))


# -- boolean matrices ------------------------------------------------------------------------------

def matrix_to_text(a: BoolMatrix) -> str:
    rows = ["".join("1" if x else "0" for x in row) for row in a.dense()]
    return "\n".join([f"{a.rows} {a.cols}"] + rows) + "\n"


def parse_matrix(text: str, where: str = "<input>") -> BoolMatrix:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(f"{where}: empty file")
    (rows, cols), = _int_rows(lines[:1], where, 2)
    if rows < 0 or cols < 0:
        raise ParseError(f"{where}: negative matrix dimension")
    body = lines[1:]
    if cols == 0 and not body:  # zero-width rows are blank lines
        return BoolMatrix.zeros(rows, 0)
    if len(body) != rows:
        raise ParseError(f"{where}: expected {rows} rows, found {len(body)}")
    dense = np.zeros((rows, cols), dtype=bool)
    for i, (no, line) in enumerate(body):
        if len(line) != cols or set(line) - {"0", "1"}:
            raise ParseError(f"{where}:{no}: expected {cols} characters of 0/1")
        dense[i] = np.frombuffer(line.encode(), dtype=np.uint8) == ord("1")
    return BoolMatrix.from_dense(dense)


def read_matrix(path: str | Path) -> BoolMatrix:
    return parse_matrix(_read_text(path), str(path))


# -- hypergraphs and 4-partite graphs -------------------------------------------------------------

def hypergraph_to_text(h: Hypergraph3) -> str:
    lines = []
    if h.partition:
        lines.append("#partition " + " ".join(f"{name}={size}" for name, size in h.partition))
    lines.append(f"{h.n} {h.m}")
    lines += [f"{a} {b} {c}" for a, b, c in sorted(h.edges)]
    return "\n".join(lines) + "\n"


def _header_fields(text: str, tag: str) -> list[str] | None:
    for line in text.splitlines():
        if line.startswith(tag):
            return line[len(tag):].split()
    return None


def parse_hypergraph(text: str, where: str = "<input>") -> Hypergraph3:
    partition = []
    fields = _header_fields(text, "#partition")
    for item in fields or []:
        name, _, size = item.partition("=")
        try:
            partition.append((name, int(size)))
        except ValueError as exc:
            raise ParseError(f"{where}: bad partition entry {item!r}") from exc
    n, edges = _header_and_rows(text, where, 3)
    return _build(Hypergraph3, where, n, edges, partition)


def read_hypergraph(path: str | Path) -> Hypergraph3:
    return parse_hypergraph(_read_text(path), str(path))


def four_partite_to_text(g: FourPartiteGraph) -> str:
    lines = ["#parts " + " ".join(str(s) for s in g.sizes), f"{g.n} {len(g.edges)}"]
    lines += [f"{a} {b}" for a, b in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_four_partite(text: str, where: str = "<input>") -> FourPartiteGraph:
    fields = _header_fields(text, "#parts")
    if fields is None:
        raise ParseError(f"{where}: missing '#parts' header")
    try:
        sizes = [int(x) for x in fields]
    except ValueError as exc:
        raise ParseError(f"{where}: bad '#parts' header") from exc
    n, edges = _header_and_rows(text, where, 2)
    if n != sum(sizes):
        raise ParseError(f"{where}: parts cover {sum(sizes)} vertices, header says {n}")
    return _build(FourPartiteGraph, where, sizes, edges)


def read_four_partite(path: str | Path) -> FourPartiteGraph:
    return parse_four_partite(_read_text(path), str(path))


# -- candidates, reports, gadgets -----------------------------------------------------------------

def parse_candidates(text: str, n: int, where: str = "<input>") -> np.ndarray:
    """An ``n x n`` JSON matrix of vertex ids, ``null`` meaning NONE.

    A report object with a ``data`` field is accepted too.
    """
    try:
        obj = json.loads(text)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    if isinstance(obj, dict):
        obj = obj.get("data")
    try:
        cand = np.array([[NONE if x is None else int(x) for x in row] for row in obj], dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: candidates must be a matrix of ids or null") from exc
    if cand.shape != (n, n) and not (n == 0 and cand.size == 0):
        raise ParseError(f"{where}: candidate matrix shape {cand.shape} != ({n}, {n})")
    return cand.reshape(n, n)


def nullable(matrix: np.ndarray) -> list:
    """Integer matrix as nested lists with NONE mapped to ``None``."""
    return [[None if x < 0 else int(x) for x in row] for row in np.asarray(matrix)]


def report_json(kind: str, n: int, data, provenance: dict, **extra) -> str:
    obj = {"provenance": provenance, "kind": kind, "n": n, **extra, "data": data}
    return json.dumps(obj, separators=(",", ":")) + "\n"


def matrix_csv(matrix: np.ndarray) -> str:
    """One CSV row per matrix row; NONE stays ``-1``."""
    m = np.asarray(matrix)
    return "".join(",".join(str(int(x)) for x in row) + "\n" for row in m)


def lists_csv(lists: list[list[list[int]]]) -> str:
    """``u,v,count,ids`` with ids space separated."""
    out = ["u,v,count,lcas\n"]
    for u, row in enumerate(lists):
        for v, ids in enumerate(row):
            out.append(f"{u},{v},{len(ids)},{' '.join(map(str, ids))}\n")
    return "".join(out)


def gadget_queries_json(gadget: GadgetInstance) -> str:
    queries = [{"pair": list(p), "labels": list(lab)}
               for p, lab in zip(gadget.query_pairs, gadget.query_labels)]
    obj = {"expected_count": gadget.expected_count, "queries": queries}
    return json.dumps(obj, separators=(",", ":")) + "\n"


def write_gadget(gadget: GadgetInstance, path: str | Path) -> Path:
    """DAG JSON at ``path`` and the queries beside it; returns the sidecar path."""
    path = Path(path)
    path.write_text(dag_to_json(gadget.graph))
    sidecar = path.with_name(path.stem + ".queries.json")
    sidecar.write_text(gadget_queries_json(gadget))
    return sidecar
