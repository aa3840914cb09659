"""Conversions between domains and ingestion of triangle meshes."""

from __future__ import annotations

import enum
from collections.abc import Hashable, Iterable, Iterator, Sequence
from itertools import combinations

from .complexes import CellComplex, CombinatorialComplex, Complex, SimplicialComplex
from .errors import InvalidCell

__all__ = [
    "MeshTarget",
    "bron_kerbosch",
    "graph_to_clique_complex",
    "simplicial_to_combinatorial",
    "cell_to_combinatorial",
    "to_combinatorial",
    "mesh_to_complex",
]


class MeshTarget(str, enum.Enum):
    SIMPLICIAL = "simplicial"
    CELL = "cell"


def bron_kerbosch(adj: dict[Hashable, set[Hashable]]) -> Iterator[frozenset]:
    """Yield every maximal clique of the graph given as an adjacency map.

    Bron-Kerbosch with Tomita pivoting, run with an explicit stack so deep
    graphs do not hit the recursion limit.
    """
    stack = [(frozenset(), set(adj), set())]
    while stack:
        r, p, x = stack.pop()
        if not p and not x:
            yield r
            continue
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            stack.append((r | {v}, p & adj[v], x & adj[v]))
            p.remove(v)
            x.add(v)


def graph_to_clique_complex(
    edges: Iterable[Sequence[Hashable]], max_rank: int = 2, nodes: Iterable[Hashable] = ()
) -> SimplicialComplex:
    """Lift a graph to its clique complex, keeping cliques of up to ``max_rank + 1`` vertices.

    Vertices keep their first-seen order and edges their input order, so the
    1-skeleton of the result lists the input edges as given. Higher simplices
    are inserted rank by rank in lexicographic order.
    """
    if max_rank < 1:
        raise ValueError(f"max_rank must be >= 1, got {max_rank}")
    edges = [tuple(e) for e in edges]
    adj: dict[Hashable, set[Hashable]] = {}
    for v in nodes:
        adj.setdefault(v, set())
    for e in edges:
        if len(e) != 2:
            raise InvalidCell(f"an edge has two endpoints, got {list(e)}")
        u, v = e
        if u == v:
            raise InvalidCell(f"self-loop on vertex {u!r}")
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    sc = SimplicialComplex()
    for v in adj:
        sc.add_simplex([v])
    for e in edges:
        sc.add_simplex(e)
    if max_rank >= 2:
        by_size: dict[int, set[tuple]] = {}
        for clique in bron_kerbosch(adj):
            verts = sorted(clique)
            for size in range(3, min(len(verts), max_rank + 1) + 1):
                by_size.setdefault(size, set()).update(combinations(verts, size))
        for size in sorted(by_size):
            for s in sorted(by_size[size]):
                sc.add_simplex(s)
    return sc


def _copy_into_ccc(cx: Complex) -> CombinatorialComplex:
    cc = CombinatorialComplex()
    for rank in range(cx.dim + 1):
        for cell in cx.skeleton(rank):
            labels = cx.labels(cell)
            if rank > 0 and labels in cc:
                raise InvalidCell(
                    f"cell {labels} shares its vertex set with another cell; "
                    "a combinatorial complex cannot hold both"
                )
            new = cc.add_cell(labels, rank=rank)
            attrs = cx._attributes.get(cell)
            if attrs:
                cc._set_attrs(new, dict(attrs))
    return cc


def simplicial_to_combinatorial(cx: SimplicialComplex) -> CombinatorialComplex:
    """Every k-simplex becomes a rank-k cell on the same vertices, in skeleton order."""
    return _copy_into_ccc(cx)


def cell_to_combinatorial(cx: CellComplex) -> CombinatorialComplex:
    """Every k-cell becomes a rank-k cell on its vertex set, in skeleton order.

    Two 2-cells on the same vertex set (different cycles) cannot both survive
    and raise :class:`InvalidCell`.
    """
    return _copy_into_ccc(cx)


def to_combinatorial(cx: Complex) -> CombinatorialComplex:
    if isinstance(cx, CombinatorialComplex):
        return cx
    return _copy_into_ccc(cx)


def mesh_to_complex(
    triangles: Iterable[Sequence[Hashable]], target: MeshTarget | str = MeshTarget.SIMPLICIAL
) -> SimplicialComplex | CellComplex:
    """Build a complex with one 2-cell per triangle; edges and vertices come from closure."""
    target = MeshTarget(target)
    if target is MeshTarget.SIMPLICIAL:
        cx: SimplicialComplex | CellComplex = SimplicialComplex()
        add = cx.add_simplex
    else:
        cx = CellComplex()
        add = lambda tri: cx.add_cell(tri, rank=2)  # noqa: E731
    for tri in triangles:
        if len(tri) != 3:
            raise InvalidCell(f"mesh faces must be triangles, got {len(tri)} vertices")
        add(tri)
    return cx
