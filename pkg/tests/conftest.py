from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from topocx import SimplicialComplex

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def simplicial_complexes(draw, max_vertices: int = 7, max_simplices: int = 6, max_size: int = 4):
    """Closure of a random family of vertex sets on ``0..n-1``."""
    n = draw(st.integers(2, max_vertices))
    verts = list(range(n))
    simplices = draw(
        st.lists(
            st.lists(st.sampled_from(verts), min_size=1, max_size=max_size, unique=True),
            min_size=1,
            max_size=max_simplices,
        )
    )
    sc = SimplicialComplex()
    for s in simplices:
        sc.add_simplex(s)
    return sc


@st.composite
def graphs(draw, max_vertices: int = 8):
    n = draw(st.integers(2, max_vertices))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return n, edges


def random_simplicial(rng: np.random.Generator, max_vertices: int = 8, max_simplices: int = 6) -> SimplicialComplex:
    n = int(rng.integers(2, max_vertices + 1))
    sc = SimplicialComplex()
    for _ in range(int(rng.integers(1, max_simplices + 1))):
        size = int(rng.integers(1, min(n, 4) + 1))
        sc.add_simplex(sorted(rng.choice(n, size=size, replace=False).tolist()))
    return sc


def permuted_copy(sc: SimplicialComplex, rng: np.random.Generator) -> SimplicialComplex:
    """Same simplices, inserted in a shuffled order so every skeleton is permuted."""
    out = SimplicialComplex()
    for k in range(sc.dim + 1):
        cells = [sc.labels(c) for c in sc.skeleton(k)]
        for i in rng.permutation(len(cells)):
            out.add_simplex(cells[i])
    return out


OPERATOR_RANKS = {
    "incidence": -1,
    "incidence_transpose": 1,
    "adjacency": 0,
    "coadjacency": 0,
    "up_laplacian": 0,
    "down_laplacian": 0,
    "identity": 0,
}


def random_homp_case(rng: np.random.Generator):
    """A random simplicial complex, a layer over it and matching features."""
    from topocx import Arrow, HompLayerSpec

    while True:
        sc = random_simplicial(rng, max_vertices=7, max_simplices=5)
        if sc.dim >= 1:
            break
    channels = {k: int(rng.integers(1, 4)) for k in range(sc.dim + 1)}
    out_ch = int(rng.integers(1, 4))
    arrows = []
    for _ in range(int(rng.integers(1, 6))):
        op = str(rng.choice(list(OPERATOR_RANKS)))
        src = int(rng.integers(0, sc.dim + 1))
        tgt = src + OPERATOR_RANKS[op]
        if op == "coadjacency" and src == 0 or op == "adjacency" and src == sc.dim or not 0 <= tgt <= sc.dim:
            op, tgt = "identity", src
        arrows.append(Arrow(src, tgt, op, rng.normal(size=(channels[src], out_ch))))
    spec = HompLayerSpec(
        arrows,
        within_agg=str(rng.choice(["sum", "mean"])),
        merge=str(rng.choice(["sum", "mean", "concat"])),
        activation=str(rng.choice(["identity", "relu", "tanh", "sigmoid"])),
    )
    feats = {k: rng.normal(size=(sc.size(k), c)) for k, c in channels.items()}
    return sc, spec, feats


# -- acceptance report ----------------------------------------------------

_ACCEPTANCE: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE.setdefault(mark.args[0], []).append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _ACCEPTANCE.get(n)
        if not results:
            status = "NOT RUN"
        elif all(o == "passed" for _, o in results):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status:<7} {CRITERIA[n]}")
