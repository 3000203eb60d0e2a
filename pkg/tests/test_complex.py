"""Unit tests for simplices, filtration validation, coface stars and the native format."""

from __future__ import annotations

import pytest

import fixtures as fx

from bardec import (
    Filtration,
    FiltrationError,
    build_coface_index,
    facets,
    format_filtration,
    parse_filtration,
    sdim,
    simplex,
    star,
    validate_filtration,
)


def test_simplex_canonicalizes_order():
    assert simplex([2, 0, 1]) == (0, 1, 2)
    assert simplex((5,)) == (5,)


def test_simplex_rejects_empty_and_duplicates():
    with pytest.raises(FiltrationError):
        simplex([])
    with pytest.raises(FiltrationError):
        simplex([1, 1, 2])


def test_sdim_and_facets():
    assert sdim((7,)) == 0
    assert sdim((0, 1, 2)) == 2
    assert facets((4,)) == []
    assert facets((0, 1)) == [(1,), (0,)]
    assert sorted(facets((0, 1, 2))) == [(0, 1), (0, 2), (1, 2)]


def test_filtration_requires_matching_lengths():
    with pytest.raises(FiltrationError):
        Filtration([(0,)], [])


def test_filtration_dims():
    assert fx.TRIANGLE_BOUNDARY.dims == [0, 0, 0, 1, 1, 1]


@pytest.mark.parametrize(
    "simplices,values,fragment",
    [
        ([(1, 0)], [0.0], "strictly ascending"),
        ([(0,), (0,)], [0.0, 1.0], "duplicate"),
        ([(0, 1)], [0.0], "has not entered"),
        ([(0,), (1,)], [1.0, 0.0], "key decreases"),
    ],
)
def test_validate_filtration_rejects(simplices, values, fragment):
    problem = validate_filtration(Filtration(list(simplices), values))
    assert problem is not None and fragment in problem


def test_validate_filtration_accepts_fixtures():
    for name, f in fx.small_complexes().items():
        assert validate_filtration(f) is None, name
    assert validate_filtration(fx.wheel()) is None
    assert validate_filtration(Filtration([], [])) is None


def test_validate_filtration_allows_value_ties_in_dim_lex_order():
    f = Filtration([(0,), (1,), (0, 1)], [0.0, 0.0, 0.0])
    assert validate_filtration(f) is None
    g = Filtration([(1,), (0,)], [0.0, 0.0])
    assert validate_filtration(g) is not None


def test_star_order_is_dimension_then_position_descending():
    w = fx.wheel()
    idx = build_coface_index(w)
    assert star(w, idx, fx.WHEEL_HUB) == [20, 19, 18, 17, 16, 11, 9, 8, 7, 6, 0]
    assert star(w, idx, fx.WHEEL_RIM_EDGE) == [16, 10]


def test_star_respects_live_restriction():
    w = fx.wheel()
    idx = build_coface_index(w)
    live = set(range(len(w))) - {16}
    assert star(w, idx, fx.WHEEL_RIM_EDGE, live=live) == [10]


def test_star_rejects_out_of_range():
    f = fx.TRIANGLE_BOUNDARY
    idx = build_coface_index(f)
    with pytest.raises(FiltrationError):
        star(f, idx, len(f))
    with pytest.raises(FiltrationError):
        star(f, idx, -1)


def test_coface_index_positions():
    f = fx.TRIANGLE_BOUNDARY
    idx = build_coface_index(f)
    assert idx.position[(0, 1)] == 3
    assert idx.cofacets[0] == [3, 4]
    assert idx.cofacets[5] == []


def test_native_format_round_trip():
    for f in (fx.TRIANGLE_BOUNDARY, fx.wheel(), fx.path(4)):
        g = parse_filtration(format_filtration(f))
        assert g.simplices == f.simplices
        assert g.values == f.values


def test_parse_filtration_skips_comments_and_blanks():
    f = parse_filtration("# header\n\n0.5 0\n 1.5 1 \n# tail\n2.5 0 1\n")
    assert f.simplices == [(0,), (1,), (0, 1)]
    assert f.values == [0.5, 1.5, 2.5]


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("0.5\n", "expected"),
        ("abc 0\n", "bad value"),
        ("0.5 x\n", "bad vertex"),
        ("0.5 1 1\n", "duplicate"),
    ],
)
def test_parse_filtration_rejects(text, fragment):
    with pytest.raises(FiltrationError) as exc:
        parse_filtration(text)
    assert fragment in str(exc.value)


def test_format_filtration_preserves_float_precision():
    f = Filtration([(0,), (1,), (0, 1)], [0.1, 0.2, 0.30000000000000004])
    g = parse_filtration(format_filtration(f))
    assert g.values == f.values
