"""Topological domains: simplicial, 2D cell, combinatorial complexes and colored hypergraphs.

All four classes share the :class:`Complex` surface used by the operator,
algorithm and embedding modules. Cells are stored per rank in insertion
order; the position of a cell inside its rank is its matrix index and never
changes once the cell is inserted.
"""

from __future__ import annotations

import enum
from collections.abc import Hashable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import Any, ClassVar

import numpy as np

from .errors import InvalidCell, NotFound, RankViolation, UnsupportedRank, UnsupportedSignedIncidence

__all__ = [
    "CellKind",
    "CellId",
    "Complex",
    "SimplicialComplex",
    "CellComplex",
    "CombinatorialComplex",
    "ColoredHyperGraph",
    "canonical_cycle",
]

Key = tuple[int, ...]


class CellKind(enum.Enum):
    SIMPLEX = "simplex"
    POLYGONAL = "polygonal"
    HYPEREDGE = "hyperedge"
    CC_CELL = "cc_cell"


@dataclass(frozen=True)
class CellId:
    """Canonical identifier of a cell.

    ``vertices`` holds internal integer vertex ids. For simplices and set-system
    cells they are sorted ascending; for polygonal 2-cells they are the
    canonical cycle (see :func:`canonical_cycle`).
    """

    kind: CellKind
    vertices: Key
    rank: int

    def __str__(self) -> str:
        return ",".join(map(str, self.vertices))

    def __repr__(self) -> str:
        return f"CellId({list(self.vertices)}, rank={self.rank})"

    def __len__(self) -> int:
        return len(self.vertices)


def canonical_cycle(cycle: Sequence[int]) -> Key:
    """Rotate ``cycle`` to start at its smallest vertex, then orient it so the
    second entry is the smaller neighbour of the first.

    >>> canonical_cycle([3, 4, 1, 2])
    (1, 2, 3, 4)
    >>> canonical_cycle([1, 4, 3, 2])
    (1, 2, 3, 4)
    """
    seq = tuple(cycle)
    i = seq.index(min(seq))
    rot = seq[i:] + seq[:i]
    if rot[-1] < rot[1]:
        rot = (rot[0],) + rot[:0:-1]
    return rot


class Complex:
    """Shared storage and query surface for every domain.

    Subclasses supply the face structure through ``_face_keys`` and
    ``_containment``; oriented domains also implement ``_boundary``.
    """

    kind: ClassVar[CellKind]
    oriented: ClassVar[bool] = False

    def __init__(self) -> None:
        self._cells: list[dict[Key, int]] = []
        self._key_cache: dict[int, list[Key]] = {}
        self._skeleton_cache: dict[int, list[CellId]] = {}
        self._attributes: dict[CellId, dict[str, Any]] = {}
        # string labels are interned to 0, 1, 2, ... in first-seen order
        self._label_mode: str | None = None
        self._label_ids: dict[str, int] = {}
        self._labels: list[str] = []

    # -- vertex labels -------------------------------------------------

    def _vertex_id(self, label: Hashable) -> int:
        if isinstance(label, (bool, np.bool_)):
            raise InvalidCell(f"boolean vertex label {label!r}")
        if isinstance(label, (int, np.integer)):
            if label < 0:
                raise InvalidCell(f"negative vertex label {label}")
            if self._label_mode == "str":
                raise InvalidCell("cannot mix integer and string vertex labels")
            self._label_mode = "int"
            return int(label)
        if isinstance(label, str):
            if self._label_mode == "int":
                raise InvalidCell("cannot mix integer and string vertex labels")
            self._label_mode = "str"
            vid = self._label_ids.get(label)
            if vid is None:
                vid = self._label_ids[label] = len(self._labels)
                self._labels.append(label)
            return vid
        raise InvalidCell(f"unsupported vertex label {label!r}")

    def _lookup_id(self, label: Hashable) -> int:
        if isinstance(label, str):
            try:
                return self._label_ids[label]
            except KeyError:
                raise NotFound(f"unknown vertex {label!r}") from None
        if isinstance(label, (int, np.integer)) and not isinstance(label, (bool, np.bool_)):
            if self._label_mode == "str":
                raise NotFound(f"unknown vertex {label!r}")
            return int(label)
        raise NotFound(f"unknown vertex {label!r}")

    def label(self, vertex: int) -> int | str:
        """Original user label of internal vertex id ``vertex``."""
        return self._labels[vertex] if self._label_mode == "str" else vertex

    def labels(self, cell: CellId) -> list[int | str]:
        return [self.label(v) for v in cell.vertices]

    def cell_label(self, cell: CellId) -> str:
        """Comma-joined user labels, the textual cell id used by the file formats."""
        return ",".join(str(self.label(v)) for v in cell.vertices)

    # -- storage -------------------------------------------------------

    def _store(self, rank: int, key: Key) -> bool:
        while len(self._cells) <= rank:
            self._cells.append({})
        table = self._cells[rank]
        if key in table:
            return False
        table[key] = len(table)
        self._key_cache.pop(rank, None)
        self._skeleton_cache.pop(rank, None)
        return True

    def _table(self, rank: int) -> dict[Key, int]:
        if 0 <= rank < len(self._cells):
            return self._cells[rank]
        return {}

    def _keys(self, rank: int) -> list[Key]:
        keys = self._key_cache.get(rank)
        if keys is None:
            keys = self._key_cache[rank] = list(self._table(rank))
        return keys

    def _make(self, key: Key, rank: int) -> CellId:
        return CellId(self.kind, key, rank)

    # -- queries -------------------------------------------------------

    @property
    def dim(self) -> int:
        """Highest rank holding a cell, ``-1`` for the empty complex."""
        for rank in range(len(self._cells) - 1, -1, -1):
            if self._cells[rank]:
                return rank
        return -1

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(self._table(r)) for r in range(self.dim + 1))

    def size(self, rank: int) -> int:
        return len(self._table(rank))

    def __len__(self) -> int:
        return sum(len(t) for t in self._cells)

    def __iter__(self) -> Iterator[CellId]:
        for rank in range(len(self._cells)):
            yield from self.skeleton(rank)

    def __contains__(self, cell: object) -> bool:
        try:
            self.cell(cell)  # type: ignore[arg-type]
        except (NotFound, InvalidCell):
            return False
        return True

    def skeleton(self, rank: int) -> list[CellId]:
        """Insertion-ordered cells of ``rank``; empty when there are none."""
        cells = self._skeleton_cache.get(rank)
        if cells is None:
            cells = [self._make(k, rank) for k in self._keys(rank)]
            self._skeleton_cache[rank] = cells
        return list(cells)

    def nodes(self) -> list[CellId]:
        return self.skeleton(0)

    def index(self, cell: CellId | Sequence[Hashable], rank: int | None = None) -> int:
        """Matrix index of ``cell`` within its rank."""
        c = self.cell(cell, rank)
        return self._cells[c.rank][c.vertices]

    def cell(self, cell: CellId | Sequence[Hashable], rank: int | None = None) -> CellId:
        """Resolve a :class:`CellId` or a sequence of vertex labels to a stored cell.

        Raises :class:`NotFound` when the cell is absent.
        """
        if isinstance(cell, CellId):
            if cell.kind is not self.kind or cell.vertices not in self._table(cell.rank):
                raise NotFound(f"cell {cell} (rank {cell.rank}) not in complex")
            return cell
        if isinstance(cell, (str, int, np.integer)):
            cell = [cell]
        ids = [self._lookup_id(v) for v in cell]
        return self._resolve(ids, rank)

    def _resolve(self, ids: list[int], rank: int | None) -> CellId:
        raise NotImplementedError

    def faces(self, cell: CellId | Sequence[Hashable]) -> list[CellId]:
        """Immediate rank-1 boundary cells of ``cell``."""
        c = self.cell(cell)
        return [self._make(k, c.rank - 1) for k in self._face_keys(c.vertices, c.rank)]

    def cofaces(self, cell: CellId | Sequence[Hashable]) -> list[CellId]:
        """Rank+1 cells having ``cell`` among their faces, in skeleton order."""
        c = self.cell(cell)
        up = c.rank + 1
        return [
            self._make(k, up) for k in self._keys(up) if c.vertices in self._face_keys(k, up)
        ]

    def _face_keys(self, key: Key, rank: int) -> list[Key]:
        raise NotImplementedError

    def _boundary(self, rank: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Signed boundary triplets (rows in rank-1, cols in rank, values)."""
        raise UnsupportedSignedIncidence(
            f"{type(self).__name__} carries no orientation; use signed=False"
        )

    def _containment(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        """Index pairs (row in ``lo``, col in ``hi``) of lo-cells contained in hi-cells."""
        raise NotImplementedError

    # -- attributes ----------------------------------------------------

    def set_attribute(self, cell: CellId | Sequence[Hashable], name: str, value: Any) -> None:
        c = self.cell(cell)
        self._attributes.setdefault(c, {})[name] = value

    def attributes(self, cell: CellId | Sequence[Hashable]) -> dict[str, Any]:
        return dict(self._attributes.get(self.cell(cell), {}))

    def get_attributes(self, name: str, rank: int | None = None) -> dict[CellId, Any]:
        """Cells carrying attribute ``name`` mapped to its value, in skeleton order."""
        ranks = range(self.dim + 1) if rank is None else [rank]
        out = {}
        for r in ranks:
            for c in self.skeleton(r):
                attrs = self._attributes.get(c)
                if attrs and name in attrs:
                    out[c] = attrs[name]
        return out

    def _set_attrs(self, cell: CellId, attrs: dict[str, Any]) -> None:
        if attrs:
            self._attributes.setdefault(cell, {}).update(attrs)

    # -- operator shortcuts --------------------------------------------

    def incidence_matrix(self, rank: int, signed: bool | None = None):
        from . import operators

        return operators.incidence_matrix(self, rank, signed=signed)

    def hodge_laplacian_matrix(self, rank: int):
        from . import operators

        return operators.hodge_laplacian_matrix(self, rank)

    def up_laplacian_matrix(self, rank: int):
        from . import operators

        return operators.up_laplacian_matrix(self, rank)

    def down_laplacian_matrix(self, rank: int):
        from . import operators

        return operators.down_laplacian_matrix(self, rank)

    def adjacency_matrix(self, rank: int, via_rank: int | None = None):
        from . import operators

        return operators.adjacency_matrix(self, rank, via_rank)

    def coadjacency_matrix(self, rank: int, via_rank: int | None = None):
        from . import operators

        return operators.coadjacency_matrix(self, rank, via_rank)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(shape={self.shape})"


def _distinct(ids: list[int], what: str) -> None:
    if not ids:
        raise InvalidCell(f"empty {what}")
    if len(set(ids)) != len(ids):
        raise InvalidCell(f"repeated vertex in {what} {ids}")


class SimplicialComplex(Complex):
    """Downward-closed family of vertex sets.

    Orientation follows ascending vertex order: removing the i-th vertex of a
    k-simplex gives a face with sign ``(-1)**i``.
    """

    kind = CellKind.SIMPLEX
    oriented = True

    def __init__(self, simplices: Iterable[Sequence[Hashable]] = ()) -> None:
        super().__init__()
        for s in simplices:
            self.add_simplex(s)

    def add_simplex(self, vertices: Sequence[Hashable], **attrs: Any) -> CellId:
        """Insert a simplex and all of its faces; re-adding is a no-op."""
        if isinstance(vertices, (str, int, np.integer)):
            vertices = [vertices]
        ids = [self._vertex_id(v) for v in vertices]
        _distinct(ids, "simplex")
        key = tuple(sorted(ids))
        top = len(key) - 1
        if key not in self._table(top):
            for r in range(top):
                for face in combinations(key, r + 1):
                    self._store(r, face)
            self._store(top, key)
        cell = self._make(key, top)
        self._set_attrs(cell, attrs)
        return cell

    def add_simplices_from(self, simplices: Iterable[Sequence[Hashable]]) -> None:
        for s in simplices:
            self.add_simplex(s)

    def add_node(self, vertex: Hashable, **attrs: Any) -> CellId:
        return self.add_simplex([vertex], **attrs)

    def add_cell(self, vertices: Sequence[Hashable], rank: int | None = None, **attrs: Any) -> CellId:
        if rank is not None and rank != len(vertices) - 1:
            raise InvalidCell(f"a simplex on {len(vertices)} vertices has rank {len(vertices) - 1}, not {rank}")
        return self.add_simplex(vertices, **attrs)

    def _resolve(self, ids: list[int], rank: int | None) -> CellId:
        key = tuple(sorted(ids))
        r = len(key) - 1
        if (rank is not None and rank != r) or key not in self._table(r):
            raise NotFound(f"simplex {list(ids)} not in complex")
        return self._make(key, r)

    def _face_keys(self, key: Key, rank: int) -> list[Key]:
        if rank == 0:
            return []
        return [key[:i] + key[i + 1 :] for i in range(rank + 1)]

    def cofaces(self, cell: CellId | Sequence[Hashable]) -> list[CellId]:
        c = self.cell(cell)
        verts = set(c.vertices)
        up = c.rank + 1
        return [self._make(k, up) for k in self._keys(up) if verts.issubset(k)]

    def _boundary(self, rank: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        keys = self._keys(rank)
        if rank == 0 or not keys:
            e = np.empty(0, dtype=np.int64)
            return e, e, np.empty(0)
        lower = self._cells[rank - 1]
        rows = np.fromiter(
            (lower[k[:i] + k[i + 1 :]] for k in keys for i in range(rank + 1)),
            dtype=np.int64,
            count=len(keys) * (rank + 1),
        )
        cols = np.repeat(np.arange(len(keys), dtype=np.int64), rank + 1)
        signs = np.tile((-1.0) ** np.arange(rank + 1), len(keys))
        return rows, cols, signs

    def _containment(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        keys = self._keys(hi)
        if lo == hi - 1:
            rows, cols, _ = self._boundary(hi)
            return rows, cols
        lower = self._table(lo)
        size = lo + 1
        pairs = [(lower[f], j) for j, k in enumerate(keys) for f in combinations(k, size)]
        if not pairs:
            e = np.empty(0, dtype=np.int64)
            return e, e
        arr = np.asarray(pairs, dtype=np.int64)
        return arr[:, 0], arr[:, 1]


class CellComplex(Complex):
    """Regular 2-dimensional cell complex with polygonal 2-cells.

    Adding a 2-cell inserts its boundary edges and vertices. The canonical
    traversal of a 2-cell orients it; a boundary edge gets sign +1 when the
    traversal runs from its lower to its higher vertex.
    """

    kind = CellKind.POLYGONAL
    oriented = True
    max_rank: ClassVar[int] = 2

    def __init__(self, cells: Iterable[Sequence[Hashable]] = ()) -> None:
        super().__init__()
        for c in cells:
            self.add_cell(c, rank=min(len(c) - 1, 2))

    def add_node(self, vertex: Hashable, **attrs: Any) -> CellId:
        return self.add_cell([vertex], rank=0, **attrs)

    def add_edge(self, u: Hashable, v: Hashable, **attrs: Any) -> CellId:
        return self.add_cell([u, v], rank=1, **attrs)

    def add_cell(self, vertices: Sequence[Hashable], rank: int, **attrs: Any) -> CellId:
        """Insert a vertex (rank 0), edge (rank 1) or polygonal 2-cell (rank 2)."""
        if not 0 <= rank <= self.max_rank:
            raise UnsupportedRank(f"cell complexes support ranks 0..2, got {rank}")
        if isinstance(vertices, (str, int, np.integer)):
            vertices = [vertices]
        ids = [self._vertex_id(v) for v in vertices]
        _distinct(ids, "cell")
        if rank == 0:
            if len(ids) != 1:
                raise InvalidCell(f"a 0-cell has one vertex, got {len(ids)}")
            key: Key = (ids[0],)
            self._store(0, key)
        elif rank == 1:
            if len(ids) != 2:
                raise InvalidCell(f"a 1-cell has two vertices, got {len(ids)}")
            key = tuple(sorted(ids))
            self._store(0, key[:1])
            self._store(0, key[1:])
            self._store(1, key)
        else:
            if len(ids) < 3:
                raise InvalidCell(f"a 2-cell needs a cycle of length >= 3, got {len(ids)}")
            key = canonical_cycle(ids)
            if key not in self._table(2):
                for v in key:
                    self._store(0, (v,))
                for u, v in zip(key, key[1:] + key[:1]):
                    self._store(1, (u, v) if u < v else (v, u))
                self._store(2, key)
        cell = self._make(key, rank)
        self._set_attrs(cell, attrs)
        return cell

    def _resolve(self, ids: list[int], rank: int | None) -> CellId:
        n = len(ids)
        r = 0 if n == 1 else 1 if n == 2 else 2
        if n == 0 or (rank is not None and rank != r) or len(set(ids)) != n:
            raise NotFound(f"cell {ids} not in complex")
        key = tuple(ids) if r == 0 else tuple(sorted(ids)) if r == 1 else canonical_cycle(ids)
        if key not in self._table(r):
            raise NotFound(f"cell {ids} not in complex")
        return self._make(key, r)

    def _face_keys(self, key: Key, rank: int) -> list[Key]:
        if rank == 0:
            return []
        if rank == 1:
            return [key[:1], key[1:]]
        return [(u, v) if u < v else (v, u) for u, v in zip(key, key[1:] + key[:1])]

    def _boundary(self, rank: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        keys = self._keys(rank)
        e = np.empty(0, dtype=np.int64)
        if rank == 0 or not keys:
            return e, e, np.empty(0)
        lower = self._cells[rank - 1]
        if rank == 1:
            rows = np.fromiter((lower[(v,)] for k in keys for v in k), dtype=np.int64, count=2 * len(keys))
            cols = np.repeat(np.arange(len(keys), dtype=np.int64), 2)
            signs = np.tile(np.array([-1.0, 1.0]), len(keys))
            return rows, cols, signs
        rows_l: list[int] = []
        cols_l: list[int] = []
        vals_l: list[float] = []
        for j, k in enumerate(keys):
            for u, v in zip(k, k[1:] + k[:1]):
                if u < v:
                    rows_l.append(lower[(u, v)])
                    vals_l.append(1.0)
                else:
                    rows_l.append(lower[(v, u)])
                    vals_l.append(-1.0)
                cols_l.append(j)
        return np.asarray(rows_l, dtype=np.int64), np.asarray(cols_l, dtype=np.int64), np.asarray(vals_l)

    def _containment(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        if lo == hi - 1:
            rows, cols, _ = self._boundary(hi)
            return rows, cols
        lower = self._table(lo)
        # only (0, 2) remains: the vertices of each cycle
        pairs = [(lower[(v,)], j) for j, k in enumerate(self._keys(hi)) for v in k]
        if not pairs:
            e = np.empty(0, dtype=np.int64)
            return e, e
        arr = np.asarray(pairs, dtype=np.int64)
        return arr[:, 0], arr[:, 1]


class _SetSystem(Complex):
    """Cells are plain vertex sets tagged with a rank; faces come from set inclusion."""

    def _insert_vertices(self, key: Key) -> None:
        for v in key:
            self._store(0, (v,))

    def _face_keys(self, key: Key, rank: int) -> list[Key]:
        if rank == 0:
            return []
        verts = set(key)
        return [k for k in self._keys(rank - 1) if verts.issuperset(k)]

    def cofaces(self, cell: CellId | Sequence[Hashable]) -> list[CellId]:
        c = self.cell(cell)
        verts = set(c.vertices)
        up = c.rank + 1
        return [self._make(k, up) for k in self._keys(up) if verts.issubset(k)]

    def _resolve(self, ids: list[int], rank: int | None) -> CellId:
        key = tuple(sorted(ids))
        ranks = range(len(self._cells)) if rank is None else [rank]
        hits = [r for r in ranks if key in self._table(r)]
        if not hits:
            raise NotFound(f"cell {list(ids)} not in complex")
        if len(hits) > 1:
            raise InvalidCell(f"cell {list(ids)} is ambiguous between ranks {hits}; pass rank")
        return self._make(key, hits[0])

    def _containment(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        rows: list[int] = []
        cols: list[int] = []
        lower = self._table(lo)
        if lo == 0:
            for j, k in enumerate(self._keys(hi)):
                rows.extend(lower[(v,)] for v in k)
                cols.extend([j] * len(k))
        elif lower:
            by_min: dict[int, list[Key]] = {}
            for k in lower:
                by_min.setdefault(k[0], []).append(k)
            for j, k in enumerate(self._keys(hi)):
                verts = set(k)
                for v in k:
                    for s in by_min.get(v, ()):
                        if len(s) <= len(k) and verts.issuperset(s):
                            rows.append(lower[s])
                            cols.append(j)
        return np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64)


class CombinatorialComplex(_SetSystem):
    """Set system with a rank function that is monotone under inclusion."""

    kind = CellKind.CC_CELL

    def __init__(self) -> None:
        super().__init__()
        self._rank_of: dict[Key, int] = {}
        self._by_vertex: dict[int, set[Key]] = {}

    def add_node(self, vertex: Hashable, **attrs: Any) -> CellId:
        return self.add_cell([vertex], rank=0, **attrs)

    def add_cell(self, vertices: Sequence[Hashable], rank: int, **attrs: Any) -> CellId:
        """Insert a cell of ``rank``; missing vertices enter as rank-0 singletons.

        Raises :class:`RankViolation` if a stored subset has a higher rank or
        a stored superset a lower one.
        """
        if rank < 0:
            raise UnsupportedRank(f"rank must be >= 0, got {rank}")
        if isinstance(vertices, (str, int, np.integer)):
            vertices = [vertices]
        ids = [self._vertex_id(v) for v in vertices]
        _distinct(ids, "cell")
        key = tuple(sorted(ids))
        if len(key) == 1:
            if rank != 0:
                raise RankViolation(f"singleton {key} is a vertex and must have rank 0, got {rank}")
        elif rank == 0:
            raise InvalidCell(f"rank 0 is reserved for singletons, got {len(key)} vertices")
        known = self._rank_of.get(key)
        if known is not None and known != rank:
            raise RankViolation(f"cell {list(key)} already has rank {known}, got {rank}")
        if known is None:
            if len(key) > 1:
                self._check_monotone(key, rank)
            self._insert_vertices(key)
            for v in key:
                self._rank_of[(v,)] = 0
            if len(key) > 1:
                self._store(rank, key)
                self._rank_of[key] = rank
                for v in key:
                    self._by_vertex.setdefault(v, set()).add(key)
        cell = self._make(key, rank)
        self._set_attrs(cell, attrs)
        return cell

    def _check_monotone(self, key: Key, rank: int) -> None:
        verts = set(key)
        seen: set[Key] = set()
        for v in key:
            for other in self._by_vertex.get(v, ()):
                if other in seen:
                    continue
                seen.add(other)
                r = self._rank_of[other]
                if r > rank and verts.issuperset(other):
                    raise RankViolation(
                        f"subset {list(other)} has rank {r} > {rank} of new cell {list(key)}"
                    )
                if r < rank and verts.issubset(other):
                    raise RankViolation(
                        f"superset {list(other)} has rank {r} < {rank} of new cell {list(key)}"
                    )

    def rank_of(self, cell: CellId | Sequence[Hashable]) -> int:
        return self.cell(cell).rank


class ColoredHyperGraph(_SetSystem):
    """Hypergraph whose hyperedges carry a colour (rank >= 1). No closure is imposed."""

    kind = CellKind.HYPEREDGE

    def __init__(self, hyperedges: Iterable[Sequence[Hashable]] = ()) -> None:
        super().__init__()
        for e in hyperedges:
            self.add_hyperedge(e)

    def add_node(self, vertex: Hashable, **attrs: Any) -> CellId:
        vid = self._vertex_id(vertex)
        self._store(0, (vid,))
        cell = self._make((vid,), 0)
        self._set_attrs(cell, attrs)
        return cell

    def add_hyperedge(self, vertices: Sequence[Hashable], color: int = 1, **attrs: Any) -> CellId:
        if color < 1:
            raise UnsupportedRank(f"hyperedge colour must be >= 1, got {color}")
        if isinstance(vertices, (str, int, np.integer)):
            vertices = [vertices]
        ids = [self._vertex_id(v) for v in vertices]
        _distinct(ids, "hyperedge")
        key = tuple(sorted(ids))
        self._insert_vertices(key)
        self._store(color, key)
        cell = self._make(key, color)
        self._set_attrs(cell, attrs)
        return cell

    def add_cell(self, vertices: Sequence[Hashable], rank: int, **attrs: Any) -> CellId:
        if rank == 0:
            if isinstance(vertices, (str, int, np.integer)):
                vertices = [vertices]
            if len(vertices) != 1:
                raise InvalidCell("rank 0 is reserved for single nodes")
            return self.add_node(vertices[0], **attrs)
        return self.add_hyperedge(vertices, color=rank, **attrs)

    @property
    def colors(self) -> list[int]:
        return [r for r in range(1, len(self._cells)) if self._cells[r]]
