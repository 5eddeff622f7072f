"""Tests for point counts, the flag-variety oracle and brick strata."""

from __future__ import annotations

import pytest
import sympy

from positroid_braids.braid_core import BraidWord, Permutation, all_permutations, bruhat_leq, w0
from positroid_braids.braid_matrix import variety_braid_pair, variety_upper_triangular
from positroid_braids.const import T_MODE_RANGE
from positroid_braids.exceptions import BoundExceededError, EvaluationError, InvalidDatumError
from positroid_braids.positroid_data import all_positroid_pairs
from positroid_braids.varieties import (
    METHOD_PRODUCT_SPLIT,
    brick_count,
    brick_stratify,
    count_points,
    count_polynomial,
    enlarge_to_w0,
    markov_count_check,
    nonempty_iff_demazure_w0,
    positroid_count_check,
    quotient_count,
    richardson_oracle,
    richardson_variety,
)

Q = sympy.Symbol("q")


def _x(strands, letters, pi=None):
    return variety_upper_triangular(BraidWord(strands, tuple(letters)), pi or w0(strands))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_single_crossing_is_a_point(q):
    assert count_points(_x(2, [1]), q).count == 1


def test_two_crossings_give_a_torus():
    assert count_polynomial(_x(2, [1, 1]), [2, 3]) == Q - 1


def test_three_crossings():
    # z1 + z3 + z1*z2*z3 = 0
    assert count_points(_x(2, [1, 1, 1]), 3).count == 7
    assert count_polynomial(_x(2, [1, 1, 1]), [2, 3, 5]) == Q**2 - Q + 1


def test_free_variables_multiply():
    report = count_points(_x(2, [1, 1], Permutation.identity(2)), 3)
    assert report.count == 3
    assert report.method == METHOD_PRODUCT_SPLIT


def test_non_prime_field_is_rejected():
    with pytest.raises(EvaluationError):
        count_points(_x(2, [1]), 4)


def test_assignment_bound():
    with pytest.raises(BoundExceededError):
        count_points(_x(2, [1, 1, 1]), 5, max_assignments=10)


@pytest.mark.parametrize("t_mode", ["pm1", T_MODE_RANGE])
def test_empty_braid_pair_on_two_strands(t_mode):
    presentation = variety_braid_pair(BraidWord(2))
    assert presentation.is_visibly_empty()
    assert count_points(presentation, 3, t_mode=t_mode).count == 0


def test_count_polynomial_needs_distinct_primes():
    with pytest.raises(InvalidDatumError):
        count_polynomial(_x(2, [1]), [2, 2])


def _bruhat_pairs(n):
    perms = all_permutations(n)
    return [(u, w) for u in perms for w in perms if bruhat_leq(u, w)]


@pytest.mark.parametrize("u,w", _bruhat_pairs(3), ids=str)
def test_richardson_braid_variety_matches_flags(u, w):
    assert count_points(richardson_variety(u, w), 2).count == richardson_oracle(u, w, 2)


@pytest.mark.slow
@pytest.mark.parametrize("u,w", _bruhat_pairs(3), ids=str)
def test_richardson_braid_variety_matches_flags_q3(u, w):
    assert count_points(richardson_variety(u, w), 3).count == richardson_oracle(u, w, 3)


def test_oracle_on_two_strands():
    identity, longest = Permutation.identity(2), w0(2)
    assert richardson_oracle(longest, longest, 5) == 1
    assert richardson_oracle(identity, longest, 5) == 4


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("one_line", [[2, 3, 1], [3, 1, 2], [2, 1, 3], [3, 2, 1]])
def test_oracle_diagonal_is_a_point(one_line, q):
    w = Permutation(one_line)
    assert richardson_oracle(w, w, q) == 1


def test_oracle_empty_off_bruhat_order():
    assert richardson_oracle(Permutation([2, 3, 1]), Permutation([3, 1, 2]), 2) == 0
    assert richardson_oracle(Permutation([3, 2, 1]), Permutation([1, 2, 3]), 3) == 0


def test_oracle_strand_bound():
    with pytest.raises(BoundExceededError):
        richardson_oracle(Permutation.identity(5), w0(5), 2)


@pytest.mark.parametrize(
    "letters,expected",
    [
        ((1, 2, 1, 2, 1), {2: 11, 3: 19}),
        ((1, 2, 2, 1, 2), {2: 9, 3: 16}),
    ],
)
def test_brick_counts(letters, expected):
    word = BraidWord(3, letters)
    for q, value in expected.items():
        assert brick_count(word, q) == value


def test_brick_strata_of_a_square():
    strata = brick_stratify(BraidWord(2, (1, 1)))
    assert [s.subset for s in strata.strata] == [(1, 2), (1,), (2,)]
    assert strata.open_stratum().dim == 1
    assert strata.count(3).total == 4


@pytest.mark.parametrize("q", [2, 3])
def test_enlarging_keeps_brick_count(q):
    word = BraidWord(3, (1, 1))
    enlarged = enlarge_to_w0(word)
    assert enlarged.letters[:2] == (1, 1)
    assert brick_count(enlarged, q) == brick_count(word, q) == q + 1


@pytest.mark.parametrize("eta", [BraidWord(1), BraidWord(2, (1,)), BraidWord(2, (1, 1))], ids=str)
@pytest.mark.parametrize("q", [2, 3])
def test_markov_counts(eta, q):
    checks = markov_count_check(eta, q)
    assert [c.name for c in checks] == ["stabilization", "disjoint-strand"]
    assert all(c.ok for c in checks)


def test_markov_counts_on_one_strand():
    stabilization, disjoint = markov_count_check(BraidWord(1), 5)
    assert (stabilization.left, stabilization.right) == (4, 1)
    assert (disjoint.left, disjoint.right) == (1, 1)


def test_quotient_count_matches_positive_word():
    eta = BraidWord(2, (1, -1, 1, 1, 1, 1))
    positive = variety_braid_pair(BraidWord(2, (1, 1, 1, 1)))
    assert quotient_count(eta, 3).count == count_points(positive, 3).count


@pytest.mark.parametrize(
    "n,max_length", [(2, 5), (3, 4), pytest.param(3, 6, marks=pytest.mark.slow)]
)
def test_nonempty_iff_demazure_product_is_longest(n, max_length):
    assert nonempty_iff_demazure_w0(n, max_length) == []


@pytest.mark.parametrize("pair", all_positroid_pairs(1, 3), ids=lambda p: str(p.to_json()))
def test_richardson_and_juggling_counts_gr13(pair):
    assert positroid_count_check(pair, 2).ok


@pytest.mark.slow
@pytest.mark.parametrize("pair", all_positroid_pairs(2, 4), ids=lambda p: str(p.to_json()))
def test_richardson_and_juggling_counts_gr24(pair):
    comparison = positroid_count_check(pair, 2)
    assert comparison.ok, comparison.to_json()


@pytest.mark.slow
@pytest.mark.parametrize(
    "pair", [*all_positroid_pairs(1, 3), *all_positroid_pairs(2, 4)], ids=lambda p: str(p.to_json())
)
def test_richardson_and_juggling_counts_at_three(pair):
    comparison = positroid_count_check(pair, 3)
    assert comparison.ok, comparison.to_json()
    assert comparison.to_json()["torus_rank"] >= 0
