from __future__ import annotations

import io as stdio
import json

import numpy as np
import pytest
import scipy.io
from hypothesis import given

from topocx import (
    CellComplex,
    ColoredHyperGraph,
    CombinatorialComplex,
    ParseError,
    RankViolation,
    SimplicialComplex,
    UnsupportedFace,
    hodge_laplacian_matrix,
    incidence_matrix,
)
from topocx.datasets import FIXTURES, fixture_text, hollow_triangle, load_fixture, two_triangles
from topocx.embeddings import EmbeddingTable
from topocx.io import (
    MM_HEADER,
    format_value,
    parse_complex,
    parse_off,
    read_embeddings,
    read_features,
    read_matrix_market,
    serialize_complex,
    write_embeddings,
    write_features,
    write_matrix_market,
    write_off,
)

from conftest import simplicial_complexes


def doc(domain, cells, **extra):
    return json.dumps({"schema_version": "1", "domain": domain, "cells": cells, **extra})


class TestParseComplex:
    def test_filled_triangle(self):
        cx = parse_complex(doc("simplicial", [{"vertices": [1, 2, 3]}]))
        assert isinstance(cx, SimplicialComplex)
        assert cx.shape == (3, 3, 1)

    def test_square_triangle_document(self):
        cx = parse_complex(doc("cell", [{"vertices": [1, 2, 3, 4], "rank": 2}, {"vertices": [1, 2, 5], "rank": 2}]))
        assert isinstance(cx, CellComplex)
        assert cx.shape == (5, 6, 2)

    def test_cell_auto_rank(self):
        cx = parse_complex(doc("cell", [{"vertices": [1, 2]}, {"vertices": [2, 3, 4], "rank": "auto"}]))
        assert cx.shape == (4, 4, 1)

    def test_combinatorial_needs_rank(self):
        with pytest.raises(ParseError, match=r"cells\[0\]\.rank"):
            parse_complex(doc("combinatorial", [{"vertices": [1, 2]}]))

    def test_hypergraph(self):
        cx = parse_complex(doc("hypergraph", [{"vertices": [1, 2, 3], "rank": 1}]))
        assert isinstance(cx, ColoredHyperGraph)

    def test_unknown_top_field(self):
        with pytest.raises(ParseError, match="unknown field"):
            parse_complex(doc("simplicial", [], extra=1))

    def test_unknown_cell_field(self):
        with pytest.raises(ParseError, match=r"cells\[0\]\.colour"):
            parse_complex(doc("simplicial", [{"vertices": [1], "colour": 2}]))

    def test_bad_json_reports_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_complex('{\n  "domain": }')

    def test_bad_schema_version(self):
        with pytest.raises(ParseError):
            parse_complex(json.dumps({"schema_version": "2", "domain": "simplicial", "cells": []}))

    def test_bad_domain(self):
        with pytest.raises(ParseError):
            parse_complex(doc("path", []))

    def test_underlying_error_surfaces(self):
        cells = [{"vertices": [1, 2, 3], "rank": 1}, {"vertices": [1, 2], "rank": 2}]
        with pytest.raises(RankViolation):
            parse_complex(doc("combinatorial", cells))

    def test_insertion_order_defines_indices(self):
        cx = parse_complex(doc("simplicial", [{"vertices": [5, 6]}, {"vertices": [1, 2]}]))
        assert [cx.labels(v) for v in cx.skeleton(0)] == [[5], [6], [1], [2]]

    def test_attributes(self):
        cx = parse_complex(
            doc("simplicial", [{"vertices": [1, 2]}], attributes={"1:1,2": {"w": 2}, "1": {"x": [1, 2]}})
        )
        assert cx.attributes([1, 2]) == {"w": 2}
        assert cx.attributes([1]) == {"x": [1, 2]}

    def test_attribute_for_missing_cell(self):
        with pytest.raises(ParseError):
            parse_complex(doc("simplicial", [{"vertices": [1, 2]}], attributes={"3": {"w": 1}}))

    def test_string_labels(self):
        cx = parse_complex(doc("simplicial", [{"vertices": ["a", "b", "c"]}]))
        assert cx.cell_label(cx.skeleton(1)[2]) == "b,c"


class TestRoundTrip:
    @pytest.mark.parametrize("name", FIXTURES)
    def test_fixture_round_trip(self, name):
        a = load_fixture(name)
        b = parse_complex(serialize_complex(a))
        assert type(a) is type(b)
        for k in range(a.dim + 1):
            assert a.skeleton(k) == b.skeleton(k)
        assert serialize_complex(b) == serialize_complex(a)

    @given(simplicial_complexes())
    def test_simplicial_round_trip(self, sc):
        back = parse_complex(serialize_complex(sc))
        assert all(back.skeleton(k) == sc.skeleton(k) for k in range(sc.dim + 1))

    def test_combinatorial_round_trip(self):
        cc = CombinatorialComplex()
        cc.add_cell([1, 2], rank=1)
        cc.add_cell([1, 2, 3, 4], rank=3)
        cc.set_attribute([1, 2, 3, 4], "w", 1.5)
        back = parse_complex(serialize_complex(cc))
        assert back.shape == cc.shape
        assert back.attributes([1, 2, 3, 4]) == {"w": 1.5}

    def test_fixture_text_is_a_document(self):
        for name in FIXTURES:
            assert json.loads(fixture_text(name))["schema_version"] == "1"


class TestOff:
    def test_one_triangle(self):
        text = "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n"
        assert parse_off(text) == [(0, 1, 2)]

    def test_counts_on_header_line_and_comments(self):
        text = "OFF 3 1 0 # header\n0 0 0\n1 0 0\n\n0 1 0\n3 2 1 0\n"
        assert parse_off(text) == [(2, 1, 0)]

    def test_quad_rejected(self):
        text = "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n"
        with pytest.raises(UnsupportedFace):
            parse_off(text)

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_off("PLY\n")
        with pytest.raises(ParseError):
            parse_off("OFF\nx y z\n")

    def test_out_of_range_face(self):
        with pytest.raises(ParseError):
            parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n")

    def test_write_then_parse(self):
        verts = [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.5, 0.0)]
        assert parse_off(write_off(verts, [(0, 1, 2)])) == [(0, 1, 2)]


class TestMatrixMarket:
    def test_hollow_triangle_l0(self):
        text = write_matrix_market(hodge_laplacian_matrix(hollow_triangle(), 0))
        lines = text.splitlines()
        assert lines[0] == MM_HEADER
        assert lines[1] == "3 3 9"
        assert len(lines) == 11
        assert lines[2:5] == ["1 1 2", "2 1 -1", "3 1 -1"]

    def test_sorted_by_column_then_row(self):
        text = write_matrix_market(incidence_matrix(two_triangles(), 1))
        entries = [tuple(map(int, ln.split()[:2])) for ln in text.splitlines()[2:]]
        assert entries == sorted(entries, key=lambda rc: (rc[1], rc[0]))

    @pytest.mark.parametrize("name", FIXTURES)
    def test_agrees_with_scipy_reader(self, name):
        cx = load_fixture(name)
        for k in range(cx.dim + 1):
            m = hodge_laplacian_matrix(cx, k)
            ref = scipy.io.mmread(stdio.StringIO(write_matrix_market(m)))
            np.testing.assert_array_equal(ref.toarray(), m.toarray())

    def test_round_trip(self):
        m = incidence_matrix(two_triangles(), 2)
        shape, triplets = read_matrix_market(write_matrix_market(m))
        assert shape == m.shape
        assert sorted(triplets) == sorted(m.entries)

    def test_deterministic_bytes(self):
        a = write_matrix_market(hodge_laplacian_matrix(load_fixture("square_triangle"), 1))
        b = write_matrix_market(hodge_laplacian_matrix(load_fixture("square_triangle"), 1))
        assert a == b

    def test_empty_matrix(self):
        text = write_matrix_market(incidence_matrix(hollow_triangle(), 0))
        assert text == f"{MM_HEADER}\n0 3 0\n"
        assert read_matrix_market(text) == ((0, 3), [])

    def test_reader_rejects_wrong_header(self):
        with pytest.raises(ParseError):
            read_matrix_market("%%MatrixMarket matrix array real general\n1 1\n1\n")

    def test_format_value(self):
        assert format_value(2.0) == "2"
        assert format_value(-0.0) == "0"
        assert format_value(0.1) == "0.1"
        assert float(format_value(1 / 3)) == 1 / 3


class TestTables:
    def test_embeddings(self):
        sc = hollow_triangle()
        table = EmbeddingTable(2, {c: np.array([0.5, -1.0]) for c in sc.skeleton(1)})
        text = write_embeddings(table, sc)
        assert text.splitlines()[0] == "1,2\t0.5\t-1"
        back = read_embeddings(text)
        np.testing.assert_array_equal(back["2,3"], [0.5, -1.0])

    def test_features_round_trip(self):
        sc = hollow_triangle()
        blocks = {0: np.arange(6.0).reshape(3, 2), 1: np.array([[0.25], [1.0], [-3.0]])}
        text = write_features(blocks, sc)
        back = read_features(text, sc)
        assert set(back) == {0, 1}
        for k in blocks:
            np.testing.assert_array_equal(back[k], blocks[k])

    def test_features_any_row_order(self):
        sc = hollow_triangle()
        back = read_features("0\t3\t3\n0\t1\t1\n0\t2\t2\n", sc)
        np.testing.assert_array_equal(back[0], [[1], [2], [3]])

    def test_features_missing_row(self):
        with pytest.raises(ParseError):
            read_features("0\t1\t1\n0\t2\t2\n", hollow_triangle())

    def test_features_unknown_cell(self):
        with pytest.raises(ParseError):
            read_features("0\t9\t1\n", hollow_triangle())

    def test_features_ragged(self):
        with pytest.raises(ParseError):
            read_features("0\t1\t1\n0\t2\t2\t2\n0\t3\t3\n", hollow_triangle())

    def test_features_non_finite(self):
        with pytest.raises(ParseError):
            read_features("0\t1\tnan\n0\t2\t2\n0\t3\t3\n", hollow_triangle())
