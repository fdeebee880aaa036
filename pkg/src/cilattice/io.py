"""Readers and writers for graph edge lists, matrix/sample CSVs, table graphoids
and decomposition JSON."""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Union

import numpy as np

from .core import GroundSet, IntervalLattice
from .exceptions import InvalidArgumentError
from .lattice import Decomposition
from .oracles import TableGraphoid, UndirectedGraph
from .stats import CovarianceSpec, SampleMatrix

PathLike = Union[str, Path]


def parse_graph(text: str) -> UndirectedGraph:
    """Edge list with 1-indexed node numbers and an optional ``d=<int>`` header.

    Blank lines and lines starting with ``#`` are ignored. Without a header
    the ground set size is the largest node number seen.
    """
    d = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("d="):
            try:
                d = int(line[2:])
            except ValueError:
                raise InvalidArgumentError(f"line {lineno}: bad header {line!r}") from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidArgumentError(f"line {lineno}: expected two node numbers, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidArgumentError(f"line {lineno}: node numbers must be integers") from None
        if u < 1 or v < 1:
            raise InvalidArgumentError(f"line {lineno}: node numbers start at 1")
        edges.append((u - 1, v - 1))
    if d is None:
        if not edges:
            raise InvalidArgumentError("empty graph file needs a d=<int> header")
        d = max(max(e) for e in edges) + 1
    return UndirectedGraph(d, edges)


def read_graph(path: PathLike) -> UndirectedGraph:
    return parse_graph(Path(path).read_text())


def format_graph(graph: UndirectedGraph) -> str:
    lines = [f"d={graph.d}"]
    lines += [f"{u + 1} {v + 1}" for u, v in sorted(graph.edges)]
    return "\n".join(lines) + "\n"


def _read_rows(path: PathLike) -> tuple[list[str] | None, np.ndarray]:
    # a first row with any non-numeric cell is a header of labels
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise InvalidArgumentError(f"{path}: no data")
    header = None
    try:
        [float(c) for c in rows[0]]
    except ValueError:
        header, rows = [c.strip() for c in rows[0]], rows[1:]
    try:
        data = np.array([[float(c) for c in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise InvalidArgumentError(f"{path}: {exc}") from None
    if data.ndim != 2 or (header is not None and data.shape[1] != len(header)):
        raise InvalidArgumentError(f"{path}: ragged rows")
    return header, data


def read_matrix(path: PathLike, kind: str = "covariance") -> CovarianceSpec:
    """A ``d x d`` CSV read as a covariance or precision matrix."""
    header, data = _read_rows(path)
    return CovarianceSpec(data, kind, labels=header)


def write_matrix(path: PathLike, matrix: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in np.asarray(matrix):
            w.writerow([repr(float(x)) for x in row])


def read_samples(path: PathLike) -> SampleMatrix:
    header, data = _read_rows(path)
    return SampleMatrix(data, labels=header)


def parse_table(obj: dict) -> TableGraphoid:
    """``{"ground": [labels], "relations": [{"A": [...], "B": [...], "C": [...]}, ...]}``."""
    try:
        ground = GroundSet(len(obj["ground"]), tuple(obj["ground"]))
        relations = [(ground.varset(r["A"]), ground.varset(r["B"]), ground.varset(r.get("C", [])))
                     for r in obj["relations"]]
    except (KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"malformed table graphoid: {exc}") from None
    return TableGraphoid(ground, relations)


def read_table(path: PathLike) -> TableGraphoid:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"{path}: {exc}") from None
    return parse_table(obj)


def table_to_dict(table: TableGraphoid) -> dict:
    g = table.ground
    return {
        "ground": list(g.labels),
        "relations": [{"A": g.label_list(A), "B": g.label_list(B), "C": g.label_list(C)}
                      for A, B, C in table.relations()],
    }


def decomposition_to_dict(dec: Decomposition, ground: GroundSet) -> dict:
    return {
        "j": ground.labels[dec.node],
        "lattices": [{"m": ground.label_list(l.lower), "M": ground.label_list(l.upper)} for l in dec.lattices],
        "k": dec.k,
        "complete": dec.complete,
        "sparseOrder": dec.sparse_order,
        "coveredTotal": dec.covered_total(),
        "histogramCoveredSizes": {str(k): v for k, v in dec.covered_histogram().items()},
        "histogramMinSizes": {str(k): v for k, v in dec.min_size_histogram().items()},
    }


def decomposition_from_dict(obj: dict, ground: GroundSet) -> Decomposition:
    lattices = [IntervalLattice(ground.varset(l["m"]), ground.varset(l["M"])) for l in obj["lattices"]]
    return Decomposition(ground.index(obj["j"]), ground.size, lattices, bool(obj["complete"]),
                         obj.get("sparseOrder"))
