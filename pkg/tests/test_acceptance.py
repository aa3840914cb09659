"""Acceptance criteria, one test group per criterion.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section of the terminal summary for one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import json
import statistics
import subprocess
import sys
import time

import numpy as np
import pytest

from topocx import (
    Activation,
    Cell2Vec,
    CellComplex,
    betti_numbers,
    connected_components,
    dense_eigh,
    eigsh_smallest,
    hodge_laplacian_matrix,
    homp_forward,
    incidence_matrix,
)
from topocx.datasets import FIXTURES, filled_triangle, hollow_triangle, tetra_boundary, two_triangles
from topocx.io import MM_HEADER

from conftest import permuted_copy, random_homp_case, random_simplicial
from golden_cases import GOLDEN_DIR, cases, run

CRITERIA = {
    1: "cell complex [1,2,3,4] + [1,2,5]: hodge(2) = [[4, +-1], [+-1, 3]] exactly, < 1 ms",
    2: "200 random simplicial complexes: B_k B_{k+1} == 0 exactly, < 5 s",
    3: "Betti oracles exact and equal to zero-eigenvalue counts (dense, 1e-8)",
    4: "Lanczos vs dense on 50 random graph Laplacians (n <= 64) within 1e-8",
    5: "100 random complexes: zero eigenvalues of hodge(0) == component count",
    6: "HOMP on 50 random triples: relabeling and linearity deviation <= 1e-9",
    7: "Cell2Vec two triangles (dim 8, seed 0): intra > inter cosine, bitwise repeatable",
    8: "grid 200x200: build + hodge(1) < 5 s and < 2 GB",
    9: "CLI betti/matrix/components goldens byte-match on all fixtures; exact MM header",
}

ZERO_EIG = 1e-8
EIG_TOL = 1e-8
HOMP_TOL = 1e-9


def criterion(n):
    return pytest.mark.criterion(n)


# -- 1 ---------------------------------------------------------------------------


def square_triangle_hodge():
    cc = CellComplex()
    cc.add_cell([1, 2, 3, 4], rank=2)
    cc.add_cell([1, 2, 5], rank=2)
    return hodge_laplacian_matrix(cc, 2)


@criterion(1)
def test_c1_values():
    lap = square_triangle_hodge().toarray()
    assert lap.shape == (2, 2)
    assert lap[0, 0] == 4 and lap[1, 1] == 3
    assert abs(lap[0, 1]) == 1 and lap[1, 0] == lap[0, 1]
    assert np.array_equal(lap, lap.astype(np.int64))


@criterion(1)
def test_c1_runtime():
    square_triangle_hodge()  # warm imports and caches
    times = []
    for _ in range(101):
        t = time.perf_counter()
        square_triangle_hodge()
        times.append(time.perf_counter() - t)
    median = statistics.median(times)
    print(f"\ncriterion 1: build + hodge(2) min {min(times) * 1e3:.3f} ms, median {median * 1e3:.3f} ms")
    assert median < 1e-3


# -- 2 ---------------------------------------------------------------------------


@criterion(2)
def test_c2_boundary_of_boundary():
    rng = np.random.default_rng(2)
    t = time.perf_counter()
    checked = 0
    for _ in range(200):
        sc = random_simplicial(rng, max_vertices=8, max_simplices=8)
        assert sc.size(0) <= 8
        for k in range(1, sc.dim):
            prod = incidence_matrix(sc, k).csr @ incidence_matrix(sc, k + 1).csr
            assert prod.count_nonzero() == 0
            checked += 1
    elapsed = time.perf_counter() - t
    print(f"\ncriterion 2: {checked} products over 200 complexes in {elapsed:.3f} s")
    assert checked > 0
    assert elapsed < 5.0


# -- 3 ---------------------------------------------------------------------------

BETTI_ORACLES = [
    (hollow_triangle, (1, 1)),
    (filled_triangle, (1, 0)),
    (tetra_boundary, (1, 0, 1)),
    (two_triangles, (2, 0)),
]


@criterion(3)
@pytest.mark.parametrize("make, expect", BETTI_ORACLES, ids=[m.__name__ for m, _ in BETTI_ORACLES])
def test_c3_betti(make, expect):
    cx = make()
    assert tuple(betti_numbers(cx, len(expect) - 1)) == expect
    for k, b in enumerate(expect):
        vals = dense_eigh(hodge_laplacian_matrix(cx, k).csr).eigenvalues
        assert int(np.sum(vals < ZERO_EIG)) == b


# -- 4 ---------------------------------------------------------------------------


def random_graph_laplacian(rng, n):
    import scipy.sparse as sp

    p = rng.uniform(0.05, 0.5)
    upper = np.triu(rng.random((n, n)) < p, 1)
    a = (upper | upper.T).astype(float)
    return sp.csr_matrix(np.diag(a.sum(axis=1)) - a)


@criterion(4)
def test_c4_lanczos_matches_dense():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 65))
        k = int(rng.integers(1, min(n, 12) + 1))
        m = random_graph_laplacian(rng, n)
        got = eigsh_smallest(m, k, method="lanczos").eigenvalues
        ref = dense_eigh(m).eigenvalues[:k]
        worst = max(worst, float(np.max(np.abs(got - ref))))
    print(f"\ncriterion 4: worst eigenvalue error {worst:.2e}")
    assert worst <= EIG_TOL


# -- 5 ---------------------------------------------------------------------------


@criterion(5)
def test_c5_components_equal_kernel_dimension():
    rng = np.random.default_rng(5)
    for _ in range(100):
        sc = random_simplicial(rng, max_vertices=10, max_simplices=6)
        vals = dense_eigh(hodge_laplacian_matrix(sc, 0).csr).eigenvalues
        assert int(np.sum(vals < ZERO_EIG)) == len(connected_components(sc, 0))


# -- 6 ---------------------------------------------------------------------------


@criterion(6)
def test_c6_relabeling_equivariance():
    worst = 0.0
    for seed in range(50):
        rng = np.random.default_rng(6000 + seed)
        sc, spec, feats = random_homp_case(rng)
        other = permuted_copy(sc, rng)
        perm = {k: [sc.index(c) for c in other.skeleton(k)] for k in range(sc.dim + 1)}
        a = homp_forward(sc, spec, feats)
        b = homp_forward(other, spec, {k: v[perm[k]] for k, v in feats.items()})
        assert set(a) == set(b)
        for k in a:
            worst = max(worst, float(np.abs(a[k].data[perm[k]] - b[k].data).max(initial=0.0)))
    print(f"\ncriterion 6: relabeling deviation {worst:.2e}")
    assert worst <= HOMP_TOL


@criterion(6)
def test_c6_linearity():
    worst = 0.0
    for seed in range(50):
        rng = np.random.default_rng(6500 + seed)
        sc, spec, x = random_homp_case(rng)
        spec.activation = Activation.IDENTITY
        y = {k: rng.normal(size=v.shape) for k, v in x.items()}
        alpha, beta = rng.normal(size=2)
        mix = {k: alpha * x[k] + beta * y[k] for k in x}
        fx, fy, fm = (homp_forward(sc, spec, f) for f in (x, y, mix))
        for k in fm:
            dev = np.abs(fm[k].data - (alpha * fx[k].data + beta * fy[k].data)).max(initial=0.0)
            worst = max(worst, float(dev))
    print(f"\ncriterion 6: linearity deviation {worst:.2e}")
    assert worst <= HOMP_TOL


# -- 7 ---------------------------------------------------------------------------


def _cos(a, b):
    return float(a @ b / (np.linalg.norm(a) * np.linalg.norm(b)))


@criterion(7)
def test_c7_cell2vec_separation_and_determinism():
    cx = two_triangles()
    first = Cell2Vec(dim=8, seed=0).fit(cx).get_embedding()
    second = Cell2Vec(dim=8, seed=0).fit(cx).get_embedding()
    comps = connected_components(cx, 0)
    assert len(comps) == 2
    intra = [_cos(first[a], first[b]) for comp in comps for i, a in enumerate(comp) for b in comp[i + 1 :]]
    inter = [_cos(first[a], first[b]) for a in comps[0] for b in comps[1]]
    print(f"\ncriterion 7: mean intra {np.mean(intra):.3f}, mean inter {np.mean(inter):.3f}")
    assert np.mean(intra) > np.mean(inter)
    assert list(first) == list(second)
    for c in first:
        assert first[c].tobytes() == second[c].tobytes()


# -- 8 ---------------------------------------------------------------------------

_PERF_SCRIPT = """
import json, resource, time
from topocx import hodge_laplacian_matrix
from topocx.datasets import grid_mesh
from topocx.transforms import mesh_to_complex
out = {}
for target in ("simplicial", "cell"):
    t = time.perf_counter()
    cx = mesh_to_complex(grid_mesh(200), target)
    lap = hodge_laplacian_matrix(cx, 1)
    out[target] = {"seconds": time.perf_counter() - t, "triangles": cx.size(2), "edges": lap.nrows}
    del cx, lap
out["maxrss_kb"] = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
print(json.dumps(out))
"""


@criterion(8)
def test_c8_desk_scale_grid():
    proc = subprocess.run([sys.executable, "-c", _PERF_SCRIPT], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    res = json.loads(proc.stdout)
    peak_gb = res["maxrss_kb"] * 1024 / 2**30
    for target in ("simplicial", "cell"):
        r = res[target]
        print(f"\ncriterion 8: {target} {r['triangles']} triangles, {r['edges']} edges in {r['seconds']:.2f} s")
        assert r["triangles"] == 80_000
        assert r["seconds"] < 5.0
    print(f"criterion 8: peak RSS {peak_gb:.3f} GB")
    assert peak_gb < 2.0


# -- 9 ---------------------------------------------------------------------------

GOLDEN = [c for c in cases() if c[1][0] in ("betti", "matrix", "components")]


@criterion(9)
@pytest.mark.parametrize("fname, argv", GOLDEN, ids=[c[0] for c in GOLDEN])
def test_c9_golden(fname, argv):
    got = run(argv)
    assert got == (GOLDEN_DIR / fname).read_text()
    if argv[0] == "matrix":
        assert got.split("\n", 1)[0] == MM_HEADER == "%%MatrixMarket matrix coordinate real general"


@criterion(9)
def test_c9_every_fixture_covered():
    for cmd in ("betti", "matrix", "components"):
        covered = {argv[1].split(":", 1)[1] for _, argv in GOLDEN if argv[0] == cmd}
        assert covered == set(FIXTURES)
