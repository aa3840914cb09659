"""Sparse structural operators: incidence, (co)adjacency and Hodge Laplacians.

Every builder returns a :class:`SparseMatrix` whose rows and columns are
named by the skeleton lists of the complex, so index ``i`` of an operator
always refers to ``cx.skeleton(rank)[i]``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .complexes import CellId, Complex
from .errors import InvalidNeighborhood, UnsupportedRank, UnsupportedSignedIncidence

__all__ = [
    "SparseMatrix",
    "incidence_matrix",
    "hodge_laplacian_matrix",
    "up_laplacian_matrix",
    "down_laplacian_matrix",
    "adjacency_matrix",
    "coadjacency_matrix",
    "normalized_laplacian",
]


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """Real sparse matrix (CSR) with cell lists naming its rows and columns.

    Finalised matrices hold no duplicate coordinates and no explicit zeros.
    """

    csr: sp.csr_matrix
    row_index: Sequence[CellId]
    col_index: Sequence[CellId]

    def __post_init__(self) -> None:
        if self.csr.shape != (len(self.row_index), len(self.col_index)):
            raise ValueError(
                f"matrix shape {self.csr.shape} does not match index lengths "
                f"({len(self.row_index)}, {len(self.col_index)})"
            )

    @classmethod
    def from_triplets(
        cls,
        rows: Sequence[int] | np.ndarray,
        cols: Sequence[int] | np.ndarray,
        values: Sequence[float] | np.ndarray,
        row_index: Sequence[CellId],
        col_index: Sequence[CellId],
    ) -> SparseMatrix:
        """Assemble from coordinates; repeated coordinates are summed, zeros dropped."""
        shape = (len(row_index), len(col_index))
        m = sp.csr_matrix(
            (np.asarray(values, dtype=np.float64), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
            shape=shape,
        )
        return cls.from_csr(m, row_index, col_index)

    @classmethod
    def from_csr(cls, m: sp.spmatrix, row_index: Sequence[CellId], col_index: Sequence[CellId]) -> SparseMatrix:
        m = sp.csr_matrix(m, dtype=np.float64)
        m.sum_duplicates()
        m.eliminate_zeros()
        m.sort_indices()
        return cls(m, row_index, col_index)

    @property
    def nrows(self) -> int:
        return self.csr.shape[0]

    @property
    def ncols(self) -> int:
        return self.csr.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.csr.shape

    @property
    def nnz(self) -> int:
        return self.csr.nnz

    @property
    def entries(self) -> list[tuple[int, int, float]]:
        """Row-major list of ``(row, col, value)`` triplets."""
        coo = self.csr.tocoo()
        return list(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))

    @property
    def T(self) -> SparseMatrix:
        return SparseMatrix.from_csr(self.csr.T, self.col_index, self.row_index)

    def toarray(self) -> np.ndarray:
        return self.csr.toarray()

    def is_symmetric(self, atol: float = 0.0) -> bool:
        if self.nrows != self.ncols:
            return False
        diff = (self.csr - self.csr.T).tocoo()
        return diff.nnz == 0 or float(np.max(np.abs(diff.data))) <= atol

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            return SparseMatrix.from_csr(self.csr @ other.csr, self.row_index, other.col_index)
        return self.csr @ other

    def __repr__(self) -> str:
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz})"


def _empty_pairs() -> tuple[np.ndarray, np.ndarray]:
    e = np.empty(0, dtype=np.int64)
    return e, e


def _containment_csr(cx: Complex, lo: int, hi: int) -> sp.csr_matrix:
    """0/1 matrix with rows in rank ``lo`` and columns in rank ``hi``."""
    n_lo, n_hi = cx.size(lo), cx.size(hi)
    if lo < 0 or n_lo == 0 or n_hi == 0:
        rows, cols = _empty_pairs()
    else:
        rows, cols = cx._containment(lo, hi)
    m = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(max(n_lo, 0), n_hi))
    m.sum_duplicates()
    m.data[:] = 1.0
    return m


def _boundary_csr(cx: Complex, rank: int, signed: bool) -> sp.csr_matrix:
    """Matrix of the map from rank-``rank`` chains to rank-``rank``-1 chains."""
    if rank <= 0:
        return sp.csr_matrix((0, cx.size(max(rank, 0))))
    if not signed:
        return _containment_csr(cx, rank - 1, rank)
    n_lo, n_hi = cx.size(rank - 1), cx.size(rank)
    rows, cols, vals = cx._boundary(rank) if n_hi else (*_empty_pairs(), np.empty(0))
    return sp.csr_matrix((vals, (rows, cols)), shape=(n_lo, n_hi))


def incidence_matrix(
    cx: Complex, rank: int, signed: bool | None = None, *, to_rank: int | None = None
) -> SparseMatrix:
    """Incidence matrix between rank ``to_rank`` (rows, default ``rank - 1``) and ``rank`` (cols).

    ``signed`` defaults to True on oriented domains (simplicial and cell
    complexes) and False otherwise; signed incidence on a combinatorial
    complex or hypergraph raises :class:`UnsupportedSignedIncidence`.
    Signed incidence is only defined between consecutive ranks.
    """
    if rank < 0:
        raise UnsupportedRank(f"rank must be >= 0, got {rank}")
    lo = rank - 1 if to_rank is None else to_rank
    if lo >= rank:
        raise UnsupportedRank(f"incidence rows must be a lower rank than {rank}, got {lo}")
    if signed is None:
        signed = cx.oriented
    if signed and not cx.oriented:
        raise UnsupportedSignedIncidence(
            f"{type(cx).__name__} carries no orientation; use signed=False"
        )
    if signed and lo != rank - 1:
        raise UnsupportedSignedIncidence("signed incidence only links consecutive ranks")
    rows = cx.skeleton(lo) if lo >= 0 else []
    cols = cx.skeleton(rank)
    if lo == rank - 1:
        b = _boundary_csr(cx, rank, signed)
    else:
        b = _containment_csr(cx, lo, rank) if lo >= 0 else sp.csr_matrix((0, len(cols)))
    return SparseMatrix.from_csr(b, rows, cols)


def _check_rank(cx: Complex, rank: int) -> None:
    if not 0 <= rank <= cx.dim:
        raise UnsupportedRank(f"rank {rank} outside 0..{cx.dim} for {type(cx).__name__}")


def _up(cx: Complex, rank: int) -> sp.csr_matrix | None:
    """``B_{k+1} B_{k+1}^T``, or None when it is known to vanish."""
    if rank >= cx.dim or cx.size(rank + 1) == 0:
        return None
    b = _boundary_csr(cx, rank + 1, cx.oriented)
    return (b @ b.T).tocsr()


def _down(cx: Complex, rank: int) -> sp.csr_matrix | None:
    if rank == 0:
        return None
    b = _boundary_csr(cx, rank, cx.oriented)
    return (b.T @ b).tocsr()


def _zero_if_none(m: sp.csr_matrix | None, n: int) -> sp.csr_matrix:
    return sp.csr_matrix((n, n)) if m is None else m


def up_laplacian_matrix(cx: Complex, rank: int) -> SparseMatrix:
    """``B_{k+1} B_{k+1}^T``; the zero matrix at the top rank."""
    _check_rank(cx, rank)
    cells = cx.skeleton(rank)
    return SparseMatrix.from_csr(_zero_if_none(_up(cx, rank), len(cells)), cells, cells)


def down_laplacian_matrix(cx: Complex, rank: int) -> SparseMatrix:
    """``B_k^T B_k``; the zero matrix at rank 0."""
    _check_rank(cx, rank)
    cells = cx.skeleton(rank)
    return SparseMatrix.from_csr(_zero_if_none(_down(cx, rank), len(cells)), cells, cells)


def hodge_laplacian_matrix(cx: Complex, rank: int) -> SparseMatrix:
    """Hodge Laplacian ``B_k^T B_k + B_{k+1} B_{k+1}^T`` over ``cx.skeleton(rank)``.

    Oriented domains use signed incidence, set systems unsigned incidence.
    """
    _check_rank(cx, rank)
    cells = cx.skeleton(rank)
    up, down = _up(cx, rank), _down(cx, rank)
    if up is None or down is None:
        total = _zero_if_none(down if up is None else up, len(cells))
    else:
        total = up + down
    return SparseMatrix.from_csr(total, cells, cells)


def _support_offdiag(m: sp.spmatrix) -> sp.csr_matrix:
    m = sp.csr_matrix(m)
    m.setdiag(0)
    m.eliminate_zeros()
    m.data[:] = 1.0
    return m


def adjacency_matrix(cx: Complex, rank: int, via_rank: int | None = None) -> SparseMatrix:
    """Binary matrix linking distinct rank-``rank`` cells that share a coface of rank ``via_rank``."""
    if rank < 0:
        raise UnsupportedRank(f"rank must be >= 0, got {rank}")
    via = rank + 1 if via_rank is None else via_rank
    if via <= rank:
        raise InvalidNeighborhood(f"adjacency needs via_rank > rank, got via_rank={via}, rank={rank}")
    m = _containment_csr(cx, rank, via)
    cells = cx.skeleton(rank)
    return SparseMatrix.from_csr(_support_offdiag(m @ m.T), cells, cells)


def coadjacency_matrix(cx: Complex, rank: int, via_rank: int | None = None) -> SparseMatrix:
    """Binary matrix linking distinct rank-``rank`` cells that share a face of rank ``via_rank``."""
    if rank < 0:
        raise UnsupportedRank(f"rank must be >= 0, got {rank}")
    via = rank - 1 if via_rank is None else via_rank
    if not 0 <= via < rank:
        raise InvalidNeighborhood(
            f"coadjacency needs 0 <= via_rank < rank, got via_rank={via}, rank={rank}"
        )
    m = _containment_csr(cx, via, rank)
    cells = cx.skeleton(rank)
    return SparseMatrix.from_csr(_support_offdiag(m.T @ m), cells, cells)


def normalized_laplacian(cx: Complex, rank: int) -> SparseMatrix:
    """``D^{-1/2} L_k D^{-1/2}`` with ``D = diag(L_k)``; zero-degree cells map to zero rows."""
    lap = hodge_laplacian_matrix(cx, rank)
    d = lap.csr.diagonal()
    inv = np.zeros_like(d)
    np.divide(1.0, np.sqrt(d), out=inv, where=d > 0)
    scale = sp.diags(inv)
    m = (scale @ lap.csr @ scale).tocsr()
    # exact symmetry regardless of floating point rounding order
    m = (m + m.T) * 0.5
    return SparseMatrix.from_csr(m, lap.row_index, lap.col_index)
