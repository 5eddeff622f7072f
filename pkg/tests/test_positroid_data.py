"""Tests for KLS data and the bijections between them."""

from __future__ import annotations

import random

import pytest

from positroid_braids.braid_core import AffinePermutation, Permutation
from positroid_braids.const import INTRO_F, INTRO_RANK_SPOTS
from positroid_braids.exceptions import BraidParseError, InvalidDatumError
from positroid_braids.positroid_data import (
    CyclicRankMatrix,
    LeCase,
    LeDiagram,
    PositroidPair,
    affine_to_pair,
    affine_to_rank,
    all_positroid_pairs,
    convert,
    datum_to_json,
    le_inductive_case,
    le_to_pair,
    max_pair,
    pair_to_affine,
    pair_to_le,
    parse_datum,
    random_positroid_pair,
    rank_to_affine,
    require_valid,
    t_k,
    validate,
)


def test_intro_pair_to_affine(intro_pair):
    f = pair_to_affine(intro_pair)
    assert list(f.window) == INTRO_F
    assert affine_to_pair(f, 3) == intro_pair


def test_intro_rank_matrix(intro_pair):
    r = affine_to_rank(pair_to_affine(intro_pair), 3)
    for (i, j), value in INTRO_RANK_SPOTS.items():
        assert r(i, j) == value
    assert r(1, 7) == 3
    assert validate(r).ok


def test_intro_le_diagram(intro_pair):
    diagram = pair_to_le(intro_pair)
    assert diagram.shape == (4, 4, 2)
    assert len(diagram.dots) == 10 - intro_pair.u.length()
    assert validate(diagram).ok
    assert le_to_pair(diagram) == intro_pair


@pytest.mark.parametrize("k,n,count", [(1, 2, 3), (1, 3, 7), (2, 4, 33)])
def test_positroid_cell_counts(k, n, count):
    assert len(all_positroid_pairs(k, n)) == count


@pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (2, 5)])
def test_bijections_round_trip(k, n):
    for pair in all_positroid_pairs(k, n):
        f = pair_to_affine(pair)
        assert validate(f, k).ok
        assert affine_to_pair(f, k) == pair
        assert rank_to_affine(affine_to_rank(f, k)) == f
        assert le_to_pair(pair_to_le(pair)) == pair


def test_random_pairs_are_valid():
    rng = random.Random(7)
    for _ in range(20):
        assert validate(random_positroid_pair(3, 6, rng)).ok


def test_top_and_bottom_cells():
    assert pair_to_affine(max_pair(2, 5)).window == (3, 4, 5, 6, 7)
    identity = Permutation.identity(5)
    assert pair_to_affine(PositroidPair(2, 5, identity, identity)) == t_k(2, 5)


def test_affine_violations():
    report = validate(AffinePermutation(3, (1, 2, 3)), 1)
    assert not report.ok
    assert any("n*k" in v for v in report.violations)
    assert not validate(AffinePermutation(3, (7, 2, 3))).ok
    assert validate(AffinePermutation(7, (3, 5, 8, 6, 7, 9, 11)), 3).ok


def test_pair_violations():
    bad = PositroidPair(1, 3, Permutation([3, 2, 1]), Permutation([2, 1, 3]))
    report = validate(bad)
    assert not report.ok
    with pytest.raises(InvalidDatumError) as err:
        require_valid(bad)
    assert err.value.violations == report.violations


def test_rank_matrix_shape_violation():
    r = CyclicRankMatrix(1, 2, ((1,),))
    assert not validate(r).ok


def test_le_condition():
    diagram = LeDiagram(2, 4, (2, 2), frozenset({(1, 2), (2, 1)}))
    assert any("Le condition" in v for v in diagram.violations())


def test_le_ascii_round_trip(intro_pair):
    diagram = pair_to_le(intro_pair)
    text = diagram.to_ascii()
    assert len(text.split("\n")) == 3
    assert LeDiagram.from_ascii(text, 3, 7) == diagram
    with pytest.raises(BraidParseError):
        LeDiagram.from_ascii("*x", 1, 3)


def test_le_inductive_cases():
    assert le_inductive_case(LeDiagram(2, 4, ()))[0] is LeCase.EMPTY
    diagram = LeDiagram(2, 4, (2, 2), frozenset({(1, 1), (2, 1), (1, 2), (2, 2)}))
    assert le_inductive_case(diagram) == (LeCase.TOP_ADJUSTED_LAST_COLUMN, 2)
    diagram = LeDiagram(2, 4, (2, 2), frozenset({(1, 1), (2, 1)}))
    assert le_inductive_case(diagram) == (LeCase.EMPTY_COLUMN, 2)


def test_json_forms(intro_pair):
    f = pair_to_affine(intro_pair)
    data = datum_to_json(f, 3)
    assert data == {"k": 3, "n": 7, "f": INTRO_F}
    assert parse_datum("affine", data) == f
    assert parse_datum("pair", intro_pair.to_json()) == intro_pair
    le = pair_to_le(intro_pair)
    assert parse_datum("le", le.to_json()) == le
    with pytest.raises(InvalidDatumError):
        parse_datum("matrix", {})


def test_convert_routes_through_pair(intro_pair):
    r = convert(intro_pair, "rank")
    assert convert(r, "affine") == pair_to_affine(intro_pair)
    assert convert(convert(r, "le"), "pair") == intro_pair
