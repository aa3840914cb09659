"""Text formats: complex documents (JSON), OFF meshes, Matrix Market and TSV tables.

All writers are byte-deterministic: the same input always produces the
same text.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from typing import Any

import numpy as np

from .complexes import (
    CellComplex,
    CellId,
    ColoredHyperGraph,
    CombinatorialComplex,
    Complex,
    SimplicialComplex,
)
from .errors import NotFound, ParseError, UnsupportedFace
from .operators import SparseMatrix

__all__ = [
    "parse_complex",
    "serialize_complex",
    "parse_off",
    "write_off",
    "write_matrix_market",
    "read_matrix_market",
    "write_embeddings",
    "read_embeddings",
    "write_features",
    "read_features",
    "format_value",
]

SCHEMA_VERSION = "1"
MM_HEADER = "%%MatrixMarket matrix coordinate real general"

DOMAINS: dict[str, type[Complex]] = {
    "simplicial": SimplicialComplex,
    "cell": CellComplex,
    "combinatorial": CombinatorialComplex,
    "hypergraph": ColoredHyperGraph,
}
_DOMAIN_NAMES = {cls: name for name, cls in DOMAINS.items()}


def format_value(v: float) -> str:
    """Shortest round-tripping text of a float, integers without a fraction."""
    v = float(v)
    if v == 0.0:
        return "0"
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


# -- complex documents --------------------------------------------------


def _is_label(v: Any) -> bool:
    if isinstance(v, bool):
        return False
    return (isinstance(v, int) and v >= 0) or isinstance(v, str)


def parse_complex(text: str) -> Complex:
    """Build a complex from a JSON document by replaying its ``cells`` in order.

    Schema problems raise :class:`ParseError` naming the offending field;
    invalid cells raise the error of the underlying add operation.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    unknown = sorted(set(doc) - {"schema_version", "domain", "cells", "attributes"})
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ParseError(f"schema_version must be {SCHEMA_VERSION!r}, got {doc.get('schema_version')!r}")
    domain = doc.get("domain")
    if domain not in DOMAINS:
        raise ParseError(f"domain must be one of {sorted(DOMAINS)}, got {domain!r}")
    cells = doc.get("cells")
    if not isinstance(cells, list):
        raise ParseError("cells must be a list")

    cx = DOMAINS[domain]()
    for i, entry in enumerate(cells):
        where = f"cells[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where} must be an object")
        extra = sorted(set(entry) - {"vertices", "rank"})
        if extra:
            raise ParseError(f"unknown field {where}.{extra[0]}")
        verts = entry.get("vertices")
        if not isinstance(verts, list) or not verts or not all(_is_label(v) for v in verts):
            raise ParseError(f"{where}.vertices must be a non-empty list of non-negative integers or strings")
        rank = entry.get("rank")
        if rank is not None and (isinstance(rank, bool) or not isinstance(rank, int)):
            if not (domain == "cell" and rank == "auto"):
                raise ParseError(f"{where}.rank must be an integer")
            rank = None
        if domain == "simplicial":
            cx.add_cell(verts, rank)
        elif domain == "cell":
            cx.add_cell(verts, rank=min(len(verts) - 1, 2) if rank is None else rank)
        else:
            if rank is None:
                raise ParseError(f"{where}.rank is required for {domain} documents")
            cx.add_cell(verts, rank=rank)

    attrs = doc.get("attributes")
    if attrs is not None:
        if not isinstance(attrs, dict):
            raise ParseError("attributes must be an object")
        for key, values in attrs.items():
            if not isinstance(values, dict):
                raise ParseError(f"attributes[{key!r}] must be an object")
            cell = _cell_from_text(cx, key, f"attributes[{key!r}]")
            for name, value in values.items():
                cx.set_attribute(cell, name, value)
    return cx


def _cell_from_text(cx: Complex, text: str, where: str) -> CellId:
    rank = None
    if ":" in text:
        head, text = text.split(":", 1)
        try:
            rank = int(head)
        except ValueError:
            raise ParseError(f"{where}: bad rank prefix {head!r}") from None
    parts = text.split(",")
    labels: list[int | str] = parts
    if cx._label_mode != "str":
        try:
            labels = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"{where}: bad cell id {text!r}") from None
    try:
        return cx.cell(labels, rank)
    except NotFound:
        raise ParseError(f"{where}: cell {text!r} not in complex") from None


def _jsonable(v: Any) -> Any:
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, np.generic):
        return v.item()
    return v


def serialize_complex(cx: Complex) -> str:
    """Inverse of :func:`parse_complex`: every cell listed rank by rank in skeleton order."""
    domain = _DOMAIN_NAMES[type(cx)]
    lines = []
    for rank in range(cx.dim + 1):
        for cell in cx.skeleton(rank):
            lines.append(json.dumps({"vertices": cx.labels(cell), "rank": rank}))
    out = ['{', f'  "schema_version": "{SCHEMA_VERSION}",', f'  "domain": "{domain}",']
    body = ",\n".join("    " + line for line in lines)
    attrs = {
        f"{c.rank}:{cx.cell_label(c)}": {k: _jsonable(v) for k, v in a.items()}
        for c in cx
        if (a := cx._attributes.get(c))
    }
    out.append('  "cells": [' + ("\n" + body + "\n  " if lines else "") + "]" + ("," if attrs else ""))
    if attrs:
        out.append('  "attributes": ' + json.dumps(attrs, sort_keys=True))
    out.append("}")
    return "\n".join(out) + "\n"


# -- OFF meshes --------------------------------------------------------------


def _off_lines(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].split()
        if line:
            rows.append(line)
    return rows


def parse_off(text: str) -> list[tuple[int, int, int]]:
    """Triangles of an OFF mesh as vertex-index triples; vertex coordinates are discarded."""
    rows = _off_lines(text)
    if not rows or rows[0][0] != "OFF":
        raise ParseError("OFF header missing")
    head = rows[0][1:]
    pos = 1
    if not head:
        if len(rows) < 2:
            raise ParseError("OFF counts line missing")
        head = rows[1]
        pos = 2
    try:
        nv, nf = int(head[0]), int(head[1])
    except (IndexError, ValueError):
        raise ParseError(f"bad OFF counts line {' '.join(head)!r}") from None
    if nv < 0 or nf < 0 or len(rows) < pos + nv + nf:
        raise ParseError("OFF file shorter than its counts announce")
    for k in range(nv):
        row = rows[pos + k]
        try:
            [float(x) for x in row[:3]]
        except ValueError:
            raise ParseError(f"bad vertex line {' '.join(row)!r}") from None
        if len(row) < 3:
            raise ParseError(f"vertex line needs 3 coordinates: {' '.join(row)!r}")
    tris = []
    for k in range(nf):
        row = rows[pos + nv + k]
        try:
            count = int(row[0])
            idx = [int(x) for x in row[1 : 1 + count]]
        except ValueError:
            raise ParseError(f"bad face line {' '.join(row)!r}") from None
        if count != 3:
            raise UnsupportedFace(f"face {k} has {count} vertices; only triangles are supported")
        if len(idx) != 3 or any(not 0 <= i < nv for i in idx):
            raise ParseError(f"face {k} references vertices outside 0..{nv - 1}")
        tris.append((idx[0], idx[1], idx[2]))
    return tris


def write_off(vertices: Sequence[Sequence[float]], triangles: Sequence[Sequence[int]]) -> str:
    out = ["OFF", f"{len(vertices)} {len(triangles)} 0"]
    out += [" ".join(format_value(x) for x in v) for v in vertices]
    out += ["3 " + " ".join(str(i) for i in t) for t in triangles]
    return "\n".join(out) + "\n"


# -- Matrix Market -----------------------------------------------------------


def write_matrix_market(m: SparseMatrix) -> str:
    """Coordinate real general Matrix Market text, 1-based, entries sorted by (col, row)."""
    coo = m.csr.tocoo()
    order = np.lexsort((coo.row, coo.col))
    out = [MM_HEADER, f"{m.nrows} {m.ncols} {coo.nnz}"]
    for r, c, v in zip(coo.row[order].tolist(), coo.col[order].tolist(), coo.data[order].tolist()):
        out.append(f"{r + 1} {c + 1} {format_value(v)}")
    return "\n".join(out) + "\n"


def read_matrix_market(text: str) -> tuple[tuple[int, int], list[tuple[int, int, float]]]:
    """Shape and 0-based ``(row, col, value)`` triplets, in file order."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != MM_HEADER:
        raise ParseError(f"expected header {MM_HEADER!r}")
    body = [ln for ln in lines[1:] if ln.strip() and not ln.startswith("%")]
    if not body:
        raise ParseError("size line missing")
    try:
        nrows, ncols, nnz = (int(x) for x in body[0].split())
    except ValueError:
        raise ParseError(f"bad size line {body[0]!r}") from None
    if len(body) - 1 != nnz:
        raise ParseError(f"expected {nnz} entries, found {len(body) - 1}")
    entries = []
    for ln in body[1:]:
        parts = ln.split()
        try:
            r, c, v = int(parts[0]) - 1, int(parts[1]) - 1, float(parts[2])
        except (IndexError, ValueError):
            raise ParseError(f"bad entry line {ln!r}") from None
        if not (0 <= r < nrows and 0 <= c < ncols):
            raise ParseError(f"entry {ln!r} out of bounds")
        entries.append((r, c, v))
    return (nrows, ncols), entries


# -- TSV tables --------------------------------------------------------------


def _cell_text(cell: CellId, cx: Complex | None) -> str:
    return cx.cell_label(cell) if cx is not None else str(cell)


def write_embeddings(table, cx: Complex | None = None) -> str:
    """``cell_id<TAB>v1<TAB>...<TAB>vdim`` per cell, in table order."""
    out = []
    for cell, vec in table.vectors.items():
        out.append("\t".join([_cell_text(cell, cx)] + [format_value(x) for x in vec]))
    return "\n".join(out) + ("\n" if out else "")


def read_embeddings(text: str) -> dict[str, np.ndarray]:
    out = {}
    for n, ln in enumerate(text.splitlines(), 1):
        if not ln.strip():
            continue
        parts = ln.split("\t")
        try:
            out[parts[0]] = np.array([float(x) for x in parts[1:]])
        except ValueError:
            raise ParseError(f"line {n}: bad embedding row") from None
    return out


def write_features(blocks: dict[int, np.ndarray], cx: Complex) -> str:
    """``rank<TAB>cell_id<TAB>v1...`` rows, ranks ascending, cells in skeleton order."""
    out = []
    for rank in sorted(blocks):
        data = np.asarray(blocks[rank])
        for cell, row in zip(cx.skeleton(rank), data):
            out.append("\t".join([str(rank), cx.cell_label(cell)] + [format_value(x) for x in row]))
    return "\n".join(out) + ("\n" if out else "")


def read_features(text: str, cx: Complex) -> dict[int, np.ndarray]:
    """Dense feature blocks per rank, rows aligned to ``cx.skeleton(rank)``.

    Every cell of a rank that appears in the file must be listed exactly once
    and all rows of a rank must share one width.
    """
    rows: dict[int, dict[int, list[float]]] = {}
    for n, ln in enumerate(text.splitlines(), 1):
        if not ln.strip():
            continue
        parts = ln.split("\t")
        if len(parts) < 2:
            raise ParseError(f"line {n}: expected rank, cell id and values")
        try:
            rank = int(parts[0])
            values = [float(x) for x in parts[2:]]
        except ValueError:
            raise ParseError(f"line {n}: bad rank or value") from None
        cell = _cell_from_text(cx, f"{rank}:{parts[1]}", f"line {n}")
        block = rows.setdefault(rank, {})
        idx = cx.index(cell)
        if idx in block:
            raise ParseError(f"line {n}: duplicate row for cell {parts[1]}")
        block[idx] = values
    out = {}
    for rank, block in rows.items():
        size = cx.size(rank)
        if len(block) != size:
            raise ParseError(f"rank {rank}: {len(block)} feature rows for {size} cells")
        widths = {len(v) for v in block.values()}
        if len(widths) != 1:
            raise ParseError(f"rank {rank}: rows have differing widths {sorted(widths)}")
        data = np.array([block[i] for i in range(size)], dtype=float).reshape(size, widths.pop())
        if not np.all(np.isfinite(data)):
            raise ParseError(f"rank {rank}: non-finite feature value")
        out[rank] = data
    return out
