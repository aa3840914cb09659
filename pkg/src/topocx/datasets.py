"""Small built-in complexes and a deterministic triangle-mesh generator.

The fixtures ship as JSON documents under ``topocx/data`` and load through
the same parser as user files.
"""

from __future__ import annotations

from importlib import resources

from .complexes import Complex

FIXTURES = (
    "hollow_triangle",
    "filled_triangle",
    "tetra_boundary",
    "two_triangles",
    "square_triangle",
)


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return resources.files("topocx.data").joinpath(f"{name}.json").read_text()


def load_fixture(name: str) -> Complex:
    from .io import parse_complex

    return parse_complex(fixture_text(name))


def hollow_triangle() -> Complex:
    return load_fixture("hollow_triangle")


def filled_triangle() -> Complex:
    return load_fixture("filled_triangle")


def tetra_boundary() -> Complex:
    return load_fixture("tetra_boundary")


def two_triangles() -> Complex:
    return load_fixture("two_triangles")


def square_triangle() -> Complex:
    return load_fixture("square_triangle")


def grid_mesh(n: int) -> list[tuple[int, int, int]]:
    """Triangulated ``n x n`` grid: ``(n+1)**2`` vertices and ``2 * n**2`` triangles.

    Vertex ``(i, j)`` has id ``i * (n + 1) + j``; every square is split along
    its main diagonal.
    """
    if n < 1:
        raise ValueError(f"grid size must be >= 1, got {n}")
    w = n + 1
    tris = []
    for i in range(n):
        for j in range(n):
            a = i * w + j
            b, c, d = a + 1, a + w, a + w + 1
            tris.append((a, b, d))
            tris.append((a, d, c))
    return tris


def grid_coordinates(n: int) -> list[tuple[float, float, float]]:
    w = n + 1
    return [(float(j), float(i), 0.0) for i in range(w) for j in range(w)]
