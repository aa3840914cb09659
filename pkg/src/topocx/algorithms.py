"""Spectral and combinatorial analysis of complexes."""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc

from .complexes import CellId, Complex
from .errors import (
    InvalidNeighborhood,
    NoConvergence,
    NotSymmetric,
    ShapeError,
    UnsupportedSignedIncidence,
)
from .operators import SparseMatrix, adjacency_matrix, coadjacency_matrix, incidence_matrix

__all__ = [
    "Spectrum",
    "eigsh_smallest",
    "dense_eigh",
    "integer_rank",
    "betti_numbers",
    "neighborhood_matrix",
    "connected_components",
    "hop_distance",
    "zero_threshold",
    "SEED",
]

SEED = 0x5EED
DENSE_CUTOFF = 64
ZERO_TOL = 1e-8


@dataclass
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    rank_index: Sequence[CellId] = field(default_factory=list)
    residuals: np.ndarray | None = None


def _as_csr(m) -> tuple[sp.csr_matrix, Sequence[CellId]]:
    if isinstance(m, SparseMatrix):
        return m.csr, m.row_index
    return sp.csr_matrix(m, dtype=np.float64), []


def _inf_norm(a: sp.csr_matrix) -> float:
    if a.nnz == 0:
        return 0.0
    return float(np.max(np.abs(a).sum(axis=1)))


def zero_threshold(m) -> float:
    """Eigenvalues below this count as zero: ``1e-8 * max(1, ||M||_inf)``."""
    a, _ = _as_csr(m)
    return ZERO_TOL * max(1.0, _inf_norm(a))


def dense_eigh(m) -> Spectrum:
    """Full dense decomposition; the oracle path for small matrices."""
    a, index = _as_csr(m)
    vals, vecs = np.linalg.eigh(a.toarray())
    return Spectrum(vals, vecs, index)


def eigsh_smallest(
    m,
    k: int,
    tol: float = 1e-10,
    *,
    method: str = "auto",
    ncv: int | None = None,
    max_cycles: int | None = None,
) -> Spectrum:
    """The ``k`` smallest eigenpairs of a symmetric matrix.

    Parameters
    ----------
    m : SparseMatrix or array-like
        Symmetric square matrix.
    k : int
        Number of eigenpairs, ``1 <= k <= n``.
    tol : float
        Each pair satisfies ``||Mv - lv|| <= tol * max(1, ||M||_inf)``.
    method : {"auto", "lanczos", "dense"}
        ``auto`` uses the dense solver for ``n <= 64`` and Lanczos otherwise.
    ncv : int, optional
        Krylov basis size per restart cycle.
    max_cycles : int, optional
        Restart cap, ``50 * k`` by default.

    Returns
    -------
    Spectrum
        Ascending eigenvalues and unit-norm eigenvectors.

    Raises
    ------
    NotSymmetric
        If ``m`` is not symmetric.
    NoConvergence
        If the restart cap is hit; carries the worst residual achieved.

    Notes
    -----
    Thick-restart Lanczos with full reorthogonalisation against the current
    basis and all locked eigenvectors. Each cycle extends the kept Ritz
    vectors by a Krylov sequence and performs Rayleigh-Ritz on the result.
    Converged Ritz pairs are locked; after a lock the next sequence starts
    from a fresh random vector, which recovers repeated eigenvalues that one
    Krylov space cannot resolve. The search stops once a cycle containing a
    fresh random direction finds nothing below the k-th locked value.
    Random vectors come from a generator seeded with ``SEED``.
    """
    a, index = _as_csr(m)
    n, ncols = a.shape
    if n != ncols:
        raise ShapeError(f"eigsh_smallest needs a square matrix, got {a.shape}")
    if not 1 <= k <= n:
        raise ShapeError(f"k must lie in 1..{n}, got {k}")
    scale = max(1.0, _inf_norm(a))
    asym = (a - a.T).tocoo()
    if asym.nnz and float(np.max(np.abs(asym.data))) > 1e-12 * scale:
        raise NotSymmetric(f"matrix is not symmetric (max |M - M^T| = {np.max(np.abs(asym.data)):.3g})")
    if method not in ("auto", "lanczos", "dense"):
        raise ValueError(f"unknown method {method!r}")

    if method == "dense" or (method == "auto" and n <= DENSE_CUTOFF):
        spec = dense_eigh(a)
        vals, vecs = spec.eigenvalues[:k], spec.eigenvectors[:, :k]
    else:
        vals, vecs = _lanczos_smallest(
            a, k, tol * scale, ncv or min(n, max(2 * k + 1, 64)), max_cycles or 50 * k
        )
    res = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
    return Spectrum(vals, vecs, index, res)


def _orthogonalize(w: np.ndarray, *bases: np.ndarray) -> np.ndarray:
    # two passes of classical Gram-Schmidt keep orthogonality at machine precision
    for _ in range(2):
        for b in bases:
            if b.shape[1]:
                w = w - b @ (b.T @ w)
    return w


def _lanczos_smallest(a, k, thresh, ncv, max_cycles):
    n = a.shape[0]
    rng = np.random.default_rng(SEED)
    locked = np.zeros((n, 0))
    locked_vals: list[float] = []
    basis = np.zeros((n, 0))
    a_basis = np.zeros((n, 0))
    breakdown = 1e-2 * thresh
    seed = rng.standard_normal(n)
    worst = math.inf
    for _ in range(max_cycles):
        remaining = n - locked.shape[1]
        if remaining <= 0:
            break
        # the expansion starts from ``seed``: a fresh random vector after locking
        # (it exposes eigenvalue copies a single Krylov space cannot see), else
        # the residual of the lowest unconverged Ritz pair
        size = min(ncv, remaining)
        w = seed
        while basis.shape[1] < size:
            w = _orthogonalize(w, basis, locked)
            norm = np.linalg.norm(w)
            if norm <= breakdown:
                break
            v = w / norm
            av = a @ v
            basis = np.column_stack([basis, v])
            a_basis = np.column_stack([a_basis, av])
            w = av
        if basis.shape[1] == 0:
            break
        h = basis.T @ a_basis
        theta, s = np.linalg.eigh((h + h.T) / 2)
        ritz = basis @ s
        a_ritz = a_basis @ s
        want = min(len(theta), k)
        resid = a_ritz[:, :want] - ritz[:, :want] * theta[:want]
        res = np.linalg.norm(resid, axis=0)
        worst = float(np.max(res))
        if len(locked_vals) >= k:
            kth = sorted(locked_vals)[k - 1]
            if res[0] <= thresh and theta[0] >= kth - thresh:
                break
        done = np.zeros(len(theta), dtype=bool)
        # lock with slack so re-orthogonalisation cannot push a pair over the threshold
        done[:want] = res <= 0.5 * thresh
        for i in np.flatnonzero(done):
            y = _orthogonalize(ritz[:, i], locked)
            y /= np.linalg.norm(y)
            locked = np.column_stack([locked, y])
            locked_vals.append(float(theta[i]))
        keep = np.flatnonzero(~done)[: max(1, min(max(k + 1, ncv // 2), ncv - 2))]
        basis, a_basis = ritz[:, keep], a_ritz[:, keep]
        if done.any():
            if basis.shape[1]:
                q, _ = np.linalg.qr(_orthogonalize(basis, locked))
                basis, a_basis = q, a @ q
            seed = rng.standard_normal(n)
        else:
            seed = resid[:, 0]
    else:
        raise NoConvergence(f"Lanczos did not converge in {max_cycles} restart cycles", worst)

    if locked.shape[1] < k:
        raise NoConvergence(f"only {locked.shape[1]} of {k} eigenpairs converged", worst)
    order = np.argsort(locked_vals, kind="stable")[:k]
    vals = np.asarray(locked_vals)[order]
    vecs = locked[:, order]
    res = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
    if np.any(res > thresh):
        raise NoConvergence("locked eigenpairs failed the final residual check", float(np.max(res)))
    return vals, vecs


def integer_rank(m) -> int:
    """Exact rank over the rationals of an integer matrix.

    Fraction-free sparse row reduction on Python integers; every row op is
    followed by division by the row gcd to keep entries small.
    """
    if isinstance(m, SparseMatrix):
        m = m.csr
    coo = sp.coo_matrix(m)
    if coo.nnz and not np.all(coo.data == np.round(coo.data)):
        raise ValueError("integer_rank needs an integer matrix")
    # reduce along the shorter dimension
    if coo.shape[1] < coo.shape[0]:
        coo = coo.T.tocoo()
    rows: dict[int, dict[int, int]] = {}
    for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
        if v:
            rows.setdefault(r, {})[c] = int(v)
    pivots: dict[int, dict[int, int]] = {}
    for row in rows.values():
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            g = math.gcd(piv[c], row[c])
            a, b = piv[c] // g, row[c] // g
            new = {j: a * x for j, x in row.items()}
            for j, x in piv.items():
                y = new.get(j, 0) - b * x
                if y:
                    new[j] = y
                else:
                    new.pop(j, None)
            if new:
                g = math.gcd(*new.values())
                if g > 1:
                    new = {j: x // g for j, x in new.items()}
            row = new
    return len(pivots)


def betti_numbers(cx: Complex, max_rank: int | None = None) -> list[int]:
    """Betti numbers ``b_0 .. b_max_rank`` from exact ranks of the signed boundary matrices."""
    if not cx.oriented:
        raise UnsupportedSignedIncidence(
            f"Betti numbers need an oriented domain, got {type(cx).__name__}"
        )
    top = cx.dim if max_rank is None else max_rank
    ranks = [0] * (top + 2)
    for k in range(1, top + 2):
        ranks[k] = integer_rank(incidence_matrix(cx, k, signed=True))
    return [cx.size(k) - ranks[k] - ranks[k + 1] for k in range(top + 1)]


def neighborhood_matrix(cx: Complex, rank: int, via_rank: int | None = None) -> SparseMatrix:
    """Adjacency when ``via_rank > rank`` (default ``rank + 1``), coadjacency when ``via_rank < rank``."""
    via = rank + 1 if via_rank is None else via_rank
    if via > rank:
        return adjacency_matrix(cx, rank, via)
    if via < rank:
        return coadjacency_matrix(cx, rank, via)
    raise InvalidNeighborhood(f"via_rank must differ from rank {rank}")


def connected_components(cx: Complex, rank: int, via_rank: int | None = None) -> list[list[CellId]]:
    """Components of ``skeleton(rank)`` under the chosen neighbourhood.

    Each component lists its cells in skeleton order; components are ordered
    by their first cell.
    """
    nb = neighborhood_matrix(cx, rank, via_rank)
    cells = nb.row_index
    if not cells:
        return []
    _, labels = _cc(nb.csr, directed=False)
    groups: dict[int, list[CellId]] = {}
    for i, lab in enumerate(labels.tolist()):
        groups.setdefault(lab, []).append(cells[i])
    return list(groups.values())


def hop_distance(
    cx: Complex,
    rank: int,
    via_rank: int | None,
    source: CellId | Sequence[Hashable],
    target: CellId | Sequence[Hashable],
) -> float:
    """Shortest path length between two cells in the neighbourhood graph; ``inf`` if disconnected."""
    src = cx.index(source, rank)
    dst = cx.index(target, rank)
    if src == dst:
        return 0
    nb = neighborhood_matrix(cx, rank, via_rank).csr
    indptr, indices = nb.indptr, nb.indices
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in indices[indptr[u] : indptr[u + 1]].tolist():
            if v not in dist:
                if v == dst:
                    return dist[u] + 1
                dist[v] = dist[u] + 1
                queue.append(v)
    return math.inf
