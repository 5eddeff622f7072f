"""Tests for the Richardson, juggling, matrix and Le braids."""

from __future__ import annotations

from math import comb

import pytest

from positroid_braids.braid_core import BraidWord, Permutation, coxeter_projection
from positroid_braids.const import BRAID_KINDS, INTRO_JUGGLING, INTRO_MATRIX, INTRO_RICHARDSON
from positroid_braids.constructions import (
    action_state,
    braid_of_kind,
    column_tangle,
    juggling_braid_action,
    juggling_braid_algorithm,
    juggling_braid_diagram,
    juggling_length,
    juggling_split,
    le_braid,
    matrix_braid,
    reverse_family,
    reverse_family_permutation,
    richardson_braid,
    script_j,
    twist_family,
)
from positroid_braids.exceptions import InvalidDatumError
from positroid_braids.positroid_data import (
    LeDiagram,
    PositroidPair,
    affine_to_rank,
    all_positroid_pairs,
    pair_to_affine,
    pair_to_le,
)
from positroid_braids.config import SearchConfig
from positroid_braids.rewriting import FRAMING_BRAID, MoveKind, find_equivalence, replay


def test_intro_braids(intro_pair):
    f = pair_to_affine(intro_pair)
    assert richardson_braid(intro_pair) == BraidWord.parse(INTRO_RICHARDSON)
    assert juggling_braid_diagram(f, 3) == BraidWord.parse(INTRO_JUGGLING)
    assert matrix_braid(affine_to_rank(f, 3)) == BraidWord.parse(INTRO_MATRIX)
    assert juggling_length(intro_pair) == 7


def test_richardson_braid_projects_to_u_inverse_w(intro_pair):
    word = richardson_braid(intro_pair)
    positives = BraidWord(7, tuple(x for x in word.letters if x > 0))
    assert coxeter_projection(positives) == intro_pair.w
    assert word.writhe() == intro_pair.w.length() - intro_pair.u.length()


@pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (2, 5), (3, 5)])
def test_juggling_routes_agree_on_length(k, n):
    for pair in all_positroid_pairs(k, n):
        f = pair_to_affine(pair)
        juggling = juggling_braid_diagram(f, k)
        assert juggling.strands == max(k, 1)
        assert juggling.is_positive()
        assert len(juggling) == juggling_length(pair)
        assert len(juggling_braid_algorithm(f, k)) == len(juggling)
        assert len(juggling_braid_action(pair)) == len(juggling)


@pytest.mark.slow
@pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (2, 5), (3, 5)])
def test_juggling_routes_are_related_by_braid_moves(k, n):
    for pair in all_positroid_pairs(k, n):
        f = pair_to_affine(pair)
        juggling = juggling_braid_diagram(f, k)
        for route in (juggling_braid_algorithm(f, k), juggling_braid_action(pair)):
            trace = find_equivalence(juggling, route, SearchConfig(max_extra_length=0), FRAMING_BRAID)
            assert trace is not None, f"{pair.to_json()}: {juggling} vs {route}"
            assert replay(trace).ok
            assert {move.kind for move in trace.moves} <= {MoveKind.RIII_POS, MoveKind.COMMUTE}


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5)])
def test_matrix_braid_writhe_matches_juggling_times_delta(k, n):
    for pair in all_positroid_pairs(k, n):
        f = pair_to_affine(pair)
        juggling = juggling_braid_diagram(f, k)
        matrix = matrix_braid(affine_to_rank(f, k))
        assert matrix.writhe() == juggling.writhe() + comb(k, 2)


def test_zero_k_gives_empty_word_on_one_strand():
    identity = Permutation.identity(2)
    pair = PositroidPair(0, 2, identity, identity)
    for kind in ("juggling", "matrix", "le", "juggling-action"):
        assert braid_of_kind(kind, pair) == BraidWord(1)
    assert juggling_length(pair) == 0


def test_column_tangle():
    assert column_tangle([], 3) == []
    assert column_tangle([2], 3) == []
    assert column_tangle([1, 2], 2) == [1]
    assert column_tangle([1, 3], 3) == [-1, 2, 1]
    # dots {1,3,5} of a height-5 column on six strands
    assert column_tangle([1, 3, 5], 6) == [-2, -4, 5, 4, 3, 2]


def test_fully_dotted_column_is_positive():
    assert column_tangle([1, 2, 3], 3) == [2, 1]
    assert column_tangle([1, 2, 3, 4], 4) == [3, 2, 1]


def test_action_route_applies_last_letter_first():
    pair = PositroidPair(2, 4, Permutation([1, 3, 4, 2]), Permutation([3, 4, 1, 2]))
    assert juggling_braid_action(pair) == BraidWord(2, (1,))
    assert len(juggling_braid_diagram(pair_to_affine(pair), 2)) == 1


def test_action_route_reproduces_intro(intro_pair):
    assert juggling_braid_action(intro_pair) == BraidWord.parse(INTRO_JUGGLING)
    parts = juggling_split(action_state(intro_pair))
    assert parts.first == BraidWord(3, (2, 2, 2, 1, 1))
    assert parts.second == BraidWord(3, (2, 1))


def test_le_braid_equals_script_j_on_intro(intro_pair):
    le = le_braid(pair_to_le(intro_pair))
    scripted = script_j(intro_pair)
    assert le == BraidWord(3, (2, 2, -1, 2, 1, -1, 2, 1))
    assert scripted == BraidWord(3, (2, 2, 2, 1, 1, -1, -2, -1, 2, 1))
    trace = find_equivalence(le, scripted, framing=FRAMING_BRAID)
    assert trace is not None
    assert replay(trace).ok


@pytest.mark.slow
@pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (2, 5), (3, 5)])
def test_le_braid_certified_against_script_j(k, n):
    for pair in all_positroid_pairs(k, n):
        le = le_braid(pair_to_le(pair))
        trace = find_equivalence(le, script_j(pair))
        assert trace is not None, f"no certificate for {pair}"
        assert replay(trace).ok


def test_le_braid_of_empty_diagram():
    assert le_braid(LeDiagram(2, 4, ())) == BraidWord(2)


def test_script_j_is_conjugate_shape(intro_pair):
    word = script_j(intro_pair)
    juggling = juggling_braid_diagram(pair_to_affine(intro_pair), 3)
    assert word.strands == 3
    assert word.writhe() == juggling.writhe() - comb(3, 2)


def test_reverse_family():
    assert reverse_family([2, 1], 3).letters == (2, 2, 1)
    with pytest.raises(InvalidDatumError):
        reverse_family([1, 2], 3)


@pytest.mark.parametrize("partition,k", [([1], 2), ([1, 1], 2)])
def test_reverse_family_length(partition, k):
    w = reverse_family_permutation(partition, k)
    pair = PositroidPair(k, w.n, Permutation.identity(w.n), w)
    juggling = juggling_braid_diagram(pair_to_affine(pair), k)
    assert len(juggling) == comb(k, 2) + len(reverse_family(partition, k))


def test_twist_family():
    assert twist_family([1], 0, 2).letters == (1, 1)
    assert twist_family([0, 0], 2, 3).letters == (2, 1, 2, 1)
    with pytest.raises(InvalidDatumError):
        twist_family([1, 1], 0, 2)


@pytest.mark.parametrize("kind", sorted(BRAID_KINDS))
def test_every_kind_builds(kind, intro_pair):
    word = braid_of_kind(kind, intro_pair)
    assert word.strands == (7 if kind == "richardson" else 3)


def test_unknown_kind(intro_pair):
    with pytest.raises(InvalidDatumError):
        braid_of_kind("spiral", intro_pair)
