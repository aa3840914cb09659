"""Euclidean embeddings of the cells of one rank.

Two families: random-walk skip-gram (:class:`Cell2Vec`) and spectral
eigenmaps of the normalised Hodge Laplacian
(:func:`higher_order_laplacian_eigenmap`).
"""

from __future__ import annotations

import enum
import logging
import threading
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algorithms import eigsh_smallest
from .complexes import CellId, Complex
from .errors import EmptyDomain, InvalidDim
from .operators import SparseMatrix, adjacency_matrix, coadjacency_matrix, hodge_laplacian_matrix, normalized_laplacian

__all__ = [
    "Neighborhood",
    "WalkCorpus",
    "EmbeddingTable",
    "random_walks",
    "Cell2Vec",
    "cell2vec",
    "higher_order_laplacian_eigenmap",
]

log = logging.getLogger(__name__)

SIGN_TIE_TOL = 1e-8


class Neighborhood(str, enum.Enum):
    ADJACENCY = "adj"
    COADJACENCY = "coadj"


def _neighborhood(cx: Complex, rank: int, nbhd: Neighborhood | str, via_rank: int | None) -> SparseMatrix:
    nbhd = Neighborhood(nbhd)
    if nbhd is Neighborhood.ADJACENCY:
        return adjacency_matrix(cx, rank, via_rank)
    return coadjacency_matrix(cx, rank, via_rank)


@dataclass
class WalkCorpus:
    """Random walks stored as skeleton indices; ``walks`` maps them back to cells."""

    cells: Sequence[CellId]
    indices: list[np.ndarray]
    walk_number: int
    walk_length: int
    seed: int

    @property
    def walks(self) -> list[list[CellId]]:
        return [[self.cells[i] for i in w.tolist()] for w in self.indices]

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[list[CellId]]:
        return iter(self.walks)


@dataclass
class EmbeddingTable:
    dim: int
    vectors: dict[CellId, np.ndarray] = field(default_factory=dict)

    def __getitem__(self, cell: CellId) -> np.ndarray:
        return self.vectors[cell]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[CellId]:
        return iter(self.vectors)

    def matrix(self, cells: Sequence[CellId] | None = None) -> np.ndarray:
        cells = list(self.vectors) if cells is None else cells
        if not cells:
            return np.zeros((0, self.dim))
        return np.vstack([self.vectors[c] for c in cells])


def _walk(neighbors: list[list[int]], start: int, length: int, rng: np.random.Generator) -> np.ndarray:
    path = [start]
    cur = start
    for _ in range(length - 1):
        nb = neighbors[cur]
        if not nb:
            break
        cur = nb[int(rng.integers(len(nb)))]
        path.append(cur)
    return np.asarray(path, dtype=np.int64)


def random_walks(
    cx: Complex,
    rank: int,
    nbhd: Neighborhood | str = Neighborhood.ADJACENCY,
    via_rank: int | None = None,
    walk_number: int = 10,
    walk_length: int = 20,
    seed: int = 0,
    workers: int = 1,
) -> WalkCorpus:
    """Uniform random walks on the (co)adjacency graph of ``skeleton(rank)``.

    ``walk_number`` walks start at every cell; a walk stops early at an
    isolated cell. Walk ``r`` from cell ``i`` draws from its own generator
    seeded with ``(seed, i, r)``, so the corpus does not depend on
    ``workers``.
    """
    if walk_number < 1 or walk_length < 1:
        raise ValueError("walk_number and walk_length must be >= 1")
    nb = _neighborhood(cx, rank, nbhd, via_rank)
    csr = nb.csr
    neighbors = [csr.indices[csr.indptr[i] : csr.indptr[i + 1]].tolist() for i in range(nb.nrows)]
    n = nb.nrows

    def one(job: tuple[int, int]) -> np.ndarray:
        r, i = job
        return _walk(neighbors, i, walk_length, np.random.default_rng([seed, i, r]))

    jobs = [(r, i) for r in range(walk_number) for i in range(n)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            walks = list(pool.map(one, jobs))
    else:
        walks = [one(j) for j in jobs]
    return WalkCorpus(nb.row_index, walks, walk_number, walk_length, seed)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * x))


class Cell2Vec:
    """Skip-gram with negative sampling over random walks of cells.

    ``fit`` mirrors the familiar estimator pattern::

        model = Cell2Vec(dim=16)
        model.fit(cx, nbhd_type="adj", nbhd_dim={"adj": 1})
        table = model.get_embedding()

    Training is single-threaded and bitwise reproducible for a fixed seed.
    ``workers > 1`` trains shards of the corpus in lock-free parallel
    threads, which gives up reproducibility.
    """

    def __init__(
        self,
        dim: int = 32,
        walk_number: int = 10,
        walk_length: int = 20,
        window: int = 5,
        negative: int = 5,
        epochs: int = 5,
        lr: float = 0.025,
        seed: int = 0,
        workers: int = 1,
    ) -> None:
        if dim < 1:
            raise InvalidDim(f"dim must be >= 1, got {dim}")
        self.dim = dim
        self.walk_number = walk_number
        self.walk_length = walk_length
        self.window = window
        self.negative = negative
        self.epochs = epochs
        self.lr = lr
        self.seed = seed
        self.workers = workers
        self.loss_history_: list[float] = []
        self._table: EmbeddingTable | None = None

    def fit(
        self,
        cx: Complex,
        rank: int = 0,
        nbhd_type: Neighborhood | str = Neighborhood.ADJACENCY,
        nbhd_dim: dict[str, int] | None = None,
        via_rank: int | None = None,
    ) -> Cell2Vec:
        nbhd = Neighborhood(nbhd_type)
        if via_rank is None and nbhd_dim:
            via_rank = nbhd_dim.get(nbhd.value)
        if cx.size(rank) == 0:
            raise EmptyDomain(f"no cells of rank {rank} to embed")
        corpus = random_walks(
            cx, rank, nbhd, via_rank, self.walk_number, self.walk_length, self.seed, self.workers
        )
        vectors = self._train(corpus.indices, len(corpus.cells))
        self._table = EmbeddingTable(self.dim, {c: vectors[i].copy() for i, c in enumerate(corpus.cells)})
        return self

    def get_embedding(self) -> EmbeddingTable:
        if self._table is None:
            raise RuntimeError("call fit() first")
        return self._table

    def _train(self, walks: list[np.ndarray], n: int) -> np.ndarray:
        rng = np.random.default_rng(self.seed)
        w_in = (rng.random((n, self.dim)) - 0.5) / self.dim
        w_out = np.zeros((n, self.dim))
        counts = np.bincount(np.concatenate(walks), minlength=n).astype(float)
        noise = counts**0.75
        noise_cdf = np.cumsum(noise / noise.sum())
        noise_cdf[-1] = 1.0
        total = max(1, self.epochs * sum(len(w) for w in walks))
        state = {"seen": 0}
        lock = threading.Lock()

        def run(shard: list[np.ndarray], shard_rng: np.random.Generator) -> tuple[float, int]:
            loss, pairs = 0.0, 0
            win, neg = self.window, self.negative
            for walk in shard:
                size = len(walk)
                for i in range(size):
                    with lock:
                        progress = state["seen"] / total
                        state["seen"] += 1
                    lr = self.lr - 0.9 * self.lr * progress
                    ctx = np.concatenate([walk[max(0, i - win) : i], walk[i + 1 : i + 1 + win]])
                    if ctx.size == 0:
                        continue
                    center = walk[i]
                    negs = np.searchsorted(noise_cdf, shard_rng.random((ctx.size, neg)), side="right")
                    negs = np.minimum(negs, n - 1)
                    u = w_in[center]
                    pos_vec = w_out[ctx]
                    neg_vec = w_out[negs]
                    s_pos = _sigmoid(pos_vec @ u)
                    s_neg = _sigmoid(neg_vec @ u)
                    # a negative that equals its positive context is skipped
                    s_neg = np.where(negs == ctx[:, None], 0.0, s_neg)
                    loss -= float(np.sum(np.log(np.maximum(s_pos, 1e-12))))
                    loss -= float(np.sum(np.log(np.maximum(1.0 - s_neg, 1e-12))))
                    pairs += ctx.size
                    g_pos = s_pos - 1.0
                    grad_u = g_pos @ pos_vec + np.einsum("ij,ijk->k", s_neg, neg_vec)
                    np.add.at(w_out, ctx, -lr * g_pos[:, None] * u)
                    np.add.at(w_out, negs.ravel(), -lr * s_neg.ravel()[:, None] * u)
                    w_in[center] -= lr * grad_u
            return loss, pairs

        self.loss_history_ = []
        for epoch in range(self.epochs):
            if self.workers > 1:
                shards = [walks[k :: self.workers] for k in range(self.workers)]
                rngs = [np.random.default_rng([self.seed, epoch, k]) for k in range(self.workers)]
                with ThreadPoolExecutor(self.workers) as pool:
                    parts = list(pool.map(run, shards, rngs))
            else:
                parts = [run(walks, rng)]
            loss = sum(p[0] for p in parts)
            pairs = sum(p[1] for p in parts)
            mean = loss / pairs if pairs else 0.0
            self.loss_history_.append(mean)
            log.debug("cell2vec epoch %d: mean loss %.6f", epoch, mean)
        return w_in


def cell2vec(
    cx: Complex,
    rank: int = 0,
    nbhd: Neighborhood | str = Neighborhood.ADJACENCY,
    via_rank: int | None = None,
    dim: int = 32,
    window: int = 5,
    negative: int = 5,
    epochs: int = 5,
    lr: float = 0.025,
    seed: int = 0,
    walk_number: int = 10,
    walk_length: int = 20,
) -> EmbeddingTable:
    """Functional form of :class:`Cell2Vec`; returns the input-side vectors."""
    model = Cell2Vec(dim, walk_number, walk_length, window, negative, epochs, lr, seed)
    return model.fit(cx, rank, nbhd, via_rank=via_rank).get_embedding()


def _canonical_clusters(vals: np.ndarray, vecs: np.ndarray, ref: np.ndarray, tol: float) -> np.ndarray:
    """Pick a reproducible basis inside every cluster of (numerically) equal eigenvalues.

    The first vector of a cluster is the projection of ``ref``; the rest come
    from projecting unit vectors in index order, Gram-Schmidt style.
    """
    out = vecs.copy()
    n = vecs.shape[0]
    start = 0
    while start < len(vals):
        stop = start + 1
        while stop < len(vals) and vals[stop] - vals[stop - 1] <= tol:
            stop += 1
        if stop - start > 1:
            q = vecs[:, start:stop]
            picked: list[np.ndarray] = []
            candidates = [ref] + [np.eye(1, n, j).ravel() for j in range(n)]
            for c in candidates:
                p = q @ (q.T @ c)
                for b in picked:
                    p = p - b * (b @ p)
                norm = np.linalg.norm(p)
                if norm > 1e-6:
                    picked.append(p / norm)
                if len(picked) == stop - start:
                    break
            out[:, start:stop] = np.column_stack(picked)
        start = stop
    return out


def higher_order_laplacian_eigenmap(cx: Complex, rank: int, dim: int, *, method: str = "auto") -> EmbeddingTable:
    """Laplacian eigenmap of ``skeleton(rank)`` from the normalised Hodge Laplacian.

    Uses the eigenvectors of the ``dim`` smallest eigenvalues after the first.
    Each coordinate vector is flipped so its largest-magnitude entry is
    positive; entries within ``SIGN_TIE_TOL`` of the largest count as tied
    and the first of them in skeleton order decides. Inside a repeated eigenvalue the basis starts from the
    projection of the square-rooted Laplacian diagonal (the trivial mode at
    rank 0), so disconnected pieces land on opposite signs.
    """
    n = cx.size(rank)
    if n == 0:
        raise EmptyDomain(f"no cells of rank {rank} to embed")
    if not 1 <= dim <= n - 1:
        raise InvalidDim(f"dim must lie in 1..{n - 1} for {n} cells, got {dim}")
    lap = normalized_laplacian(cx, rank)
    spec = eigsh_smallest(lap, dim + 1, method=method)
    ref = np.sqrt(hodge_laplacian_matrix(cx, rank).csr.diagonal())
    if not ref.any():
        ref = np.ones(n)
    scale = max(1.0, float(np.max(np.abs(lap.csr).sum(axis=1))) if lap.nnz else 1.0)
    vecs = _canonical_clusters(spec.eigenvalues, spec.eigenvectors, ref, 1e-8 * scale)
    coords = vecs[:, 1:]
    for j in range(coords.shape[1]):
        mag = np.abs(coords[:, j])
        # first entry of (numerically) largest magnitude, so mirror-symmetric
        # vectors get the same sign from every solver
        lead = int(np.flatnonzero(mag >= mag.max() - SIGN_TIE_TOL)[0])
        if coords[lead, j] < 0:
            coords[:, j] = -coords[:, j]
    cells = lap.row_index
    return EmbeddingTable(dim, {c: coords[i].copy() for i, c in enumerate(cells)})
