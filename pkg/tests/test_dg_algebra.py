"""Tests for the braid DG-algebra, its derivations and slice elimination."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from positroid_braids.braid_core import BraidWord, half_twist
from positroid_braids.braid_matrix import variety_braid_pair, word_matrix
from positroid_braids.const import SET_T_PM1, SET_T_SYMBOLIC
from positroid_braids.dg_algebra import (
    GradedElement,
    build_dga,
    derivations,
    between_word,
    complement_word,
    dotted,
    region_coefficient,
    riii_substitution,
    sha_terms,
    slice_eliminate,
    t_specialization,
    w_gen,
    y_gen,
)
from positroid_braids.exceptions import InvalidDatumError
from positroid_braids.poly_core import Polynomial, Variable

# sigma1 sigma1^-1 sigma1^4 on two strands
ETA_TWO = BraidWord(2, (1, -1, 1, 1, 1, 1))
# sigma1 sigma1^-1 on three strands
ETA_THREE = BraidWord(3, (1, -1))


def test_positive_word_has_no_w_generators():
    dga = build_dga(BraidWord(2, (1,)))
    assert dga.w_count == 0
    assert dga.z_count == 2
    assert dga.normalized
    assert dga.d_squared() == []
    # B_1(z1) B_1(z2) = [[1, z2], [z1, 1 + z1*z2]]
    assert dga.differential("y11") == Polynomial.one() + Polynomial.t(1)
    assert dga.differential("y12") == Polynomial.z(2)
    assert dga.differential("y21") == Polynomial.z(1)


def test_rii_pair_derivation():
    dga = build_dga(ETA_TWO)
    assert dga.w_count == 1
    v = dga.derivations[1]
    assert dict(v.coefficients) == {1: Polynomial.one(), 2: Polynomial.constant(-1)}
    assert str(v) == "d/dz1 - d/dz2"
    assert dga.differential("z1") == GradedElement.generator(w_gen(1))
    assert dga.differential("w1").is_zero()


@pytest.mark.parametrize("eta", [ETA_TWO, ETA_THREE])
def test_d_squared_vanishes(eta):
    dga = build_dga(eta, verify=True)
    assert dga.normalized
    assert dga.d_squared() == []


@pytest.mark.parametrize("eta", [ETA_TWO, ETA_THREE])
def test_derivations_annihilate_equations(eta):
    vs = derivations(eta)
    assert vs.commute()
    assert vs.violations(variety_braid_pair(eta).equations) == []


def test_slice_elimination_matches_positive_word():
    quotient = slice_eliminate(ETA_TWO)
    positive = variety_braid_pair(BraidWord(2, (1, 1, 1, 1)))
    assert quotient.kind == "slice-eliminated"
    assert quotient.variables == positive.variables
    assert quotient.equations == positive.equations


def test_slice_elimination_on_three_strands():
    quotient = slice_eliminate(ETA_THREE)
    empty = variety_braid_pair(BraidWord(3))
    assert len(quotient.variables) == 3
    assert quotient.equations == empty.equations


def test_positive_word_needs_no_slice():
    word = BraidWord(3, (1, 2))
    assert slice_eliminate(word) == variety_braid_pair(word)


def test_graded_signs():
    y = GradedElement.generator(y_gen(1, 1))
    w = GradedElement.generator(w_gen(1))
    assert y * w == -(w * y)
    assert (y * y).is_zero()
    assert (w * Polynomial.z(1)).degrees() == [-1]


def test_generators_and_json():
    dga = build_dga(ETA_TWO)
    names = [name for name, _ in dga.generators()]
    assert names[:4] == ["y11", "y12", "y21", "y22"]
    assert names[-1] == "w1"
    assert dict(dga.generators())["z6"] == 0
    data = dga.to_json()
    assert data["derivations"] == {"w1": "d/dz1 - d/dz2"}
    assert data["t"] == "symbolic"
    assert data["normalized"] is True
    with pytest.raises(InvalidDatumError):
        dga.differential("y33")


def test_pm1_specialization():
    assert t_specialization(BraidWord(2, (1,))) == {1: -1, 2: 1}
    assert t_specialization(BraidWord(2, (1, 1))) == {1: -1, 2: -1}
    dga = build_dga(BraidWord(2, (1,)), set_t=SET_T_PM1)
    assert dga.to_json()["t"] == {"t1": "-1", "t2": "-1"}


def test_sha_terms_vanish_without_negative_crossings():
    assert sha_terms(BraidWord(3, (1, 2)), 1, 2).is_zero()


def test_dotted_word():
    assert dotted(BraidWord(3, (1, -2, 2))) == BraidWord(3, (1, -1, 2))


@pytest.mark.parametrize(
    "word,at",
    [
        (BraidWord(3, (1, 2, 1)), 0),
        (BraidWord(3, (2, 1, 2)), 0),
        (BraidWord(4, (3, 1, 2, 1)), 1),
    ],
)
def test_riii_substitution_matches_matrices(word, at):
    moved_letters = list(word.letters)
    a, b = moved_letters[at], moved_letters[at + 1]
    moved_letters[at:at + 3] = [b, a, b]
    moved = BraidWord(word.strands, tuple(moved_letters))
    assert word_matrix(moved).substitute(riii_substitution(word, at)) == word_matrix(word)


def test_riii_substitution_rejects_other_patterns():
    with pytest.raises(InvalidDatumError):
        riii_substitution(BraidWord(3, (1, 1, 1)), 0)
    with pytest.raises(InvalidDatumError):
        riii_substitution(BraidWord(3, (1, 2)), 0)


def test_word_with_delta_padding():
    dga = build_dga(BraidWord(3))
    assert dga.word == half_twist(3)
    assert dga.z_count == 3
    assert dga.w_count == 0
    assert dga.matrix[1, 3] == Polynomial.one()


# z1 w1 z2 z3 z4 z5 w2 z6 w3 z7 z8 w4 z9 z10
LABELLED = BraidWord(4, (1, -2, 3, 2, 1, 2, -1, 3, -1, 3, 2, -1, 3, 1))


def test_between_and_complement_words():
    assert between_word(LABELLED, "z2", "w3") == BraidWord(4, (2, 1, 2, -1, 3))
    assert between_word(LABELLED, "w3", "z2") == BraidWord(4, (2, 1, 2, -1, 3))
    assert between_word(LABELLED, "z7", "w1") == BraidWord(4, (3, 2, 1, 2, -1, 3, -1))
    assert complement_word(LABELLED, "z2", "w3") == BraidWord(4, (3, 2, -1, 3, 1, 1, -2))
    assert between_word(LABELLED, "z1", "w1") == BraidWord(4)


def test_dotted_between_words():
    assert dotted(between_word(LABELLED, "z2", "w3")) == BraidWord(4, (1, -3, 2, 3, 2))
    assert dotted(between_word(LABELLED, "z7", "w1")) == BraidWord(4, (-3, 1, -3, 2, 3, 2, 1))


def test_unknown_crossing_label():
    with pytest.raises(InvalidDatumError):
        between_word(LABELLED, "z11", "w1")
    with pytest.raises(InvalidDatumError):
        between_word(LABELLED, "z1", "z1")


def test_region_coefficient_counts_two_regions():
    # strictly between z1 and w1 of s1 s3 s2^3 s1 s3 s2^2 s1 s3 s2 s3^2 s1^-1
    between = BraidWord(4, (3, 2, 2, 2, 1, 3, 2, 2, 1, 3, 2, 3, 3))
    assert region_coefficient(between, 2, 1, 2, 1) == Polynomial.parse("1 + z2*z3")


def test_empty_region():
    assert region_coefficient(BraidWord(3), 2, 1, 2, 1) == Polynomial.one()
    assert region_coefficient(BraidWord(3), 3, 2, 3, 2) == Polynomial.one()
    with pytest.raises(InvalidDatumError):
        region_coefficient(BraidWord(3), 4, 1, 2, 1)


def test_between_word_matrix_entry():
    # w1 z1 z2 z3 z4 z5 z6 w2 z7 z8 z9 z10 counted left to right
    beta = BraidWord(4, (-2, 1, 3, 2, 2, 1, 3, -2, 2, 1, 3, 2))
    between = between_word(beta, "z9", "w1")
    assert between == BraidWord(4, (1, 3, 2, 2, 1, 3, -2, 2, 1))
    assert word_matrix(between)[2, 2] == Polynomial.parse("z1 + z8 + z1*z5*z8")


def test_rii_pair_degree_one_differentials():
    dga = build_dga(ETA_TWO)
    ones = {Variable.t(1): 1, Variable.t(2): 1}
    expected = {
        "y11": "z3 + (1 + z3*z4)z5 + 1",
        "y12": "1 + z3*z4 + (z3 + (1 + z3*z4)z5)z6",
        "y21": "1 + (z1 + z2)z3 + (z1 + z2 + (1 + (z1 + z2)z3)z4)z5",
        "y22": "z1 + z2 + (1 + (z1 + z2)z3)z4 + (1 + (z1 + z2)z3 + (z1 + z2 + (1 + (z1 + z2)z3)z4)z5)z6 + 1",
    }
    for name, text in expected.items():
        assert dga.differential(name).substitute(ones) == Polynomial.parse(text)
    assert dga.differential("z2") == -GradedElement.generator(w_gen(1))
    for j in range(3, 7):
        assert dga.differential(f"z{j}").is_zero()


@st.composite
def rii_perturbed_words(draw):
    """Positive words on at most three strands with up to two sigma_a^-1 sigma_a pairs."""
    n = draw(st.integers(2, 3))
    letters = st.integers(1, n - 1)
    tokens = [(a,) for a in draw(st.lists(letters, max_size=4))]
    for _ in range(draw(st.integers(0, 2))):
        a = draw(letters)
        tokens.insert(draw(st.integers(0, len(tokens))), (-a, a))
    return BraidWord(n, tuple(x for token in tokens for x in token))


@pytest.mark.parametrize(
    "eta",
    [
        BraidWord(3, (-1, 1)),
        BraidWord(2, (-1, 1, 1, 1)),
        BraidWord(3, (2, -1, 1, 2, 1)),
        BraidWord(3, (-2, 2, -1, 1)),
        BraidWord(3, (1, -2, 2, 1, -1, 1)),
    ],
    ids=str,
)
@pytest.mark.parametrize("set_t", [SET_T_SYMBOLIC, SET_T_PM1])
def test_d_squared_vanishes_around_the_closure(eta, set_t):
    dga = build_dga(eta, set_t=set_t)
    assert dga.normalized
    assert dga.d_squared() == []


@pytest.mark.parametrize("at", range(5))
def test_rii_pair_anywhere_in_a_positive_word(at):
    letters = [1, 2, 1, 2]
    letters[at:at] = [-2, 2]
    dga = build_dga(BraidWord(3, tuple(letters)))
    assert dga.w_count == 1
    assert dga.normalized
    assert dga.d_squared() == []


@pytest.mark.slow
@settings(max_examples=200, derandomize=True, deadline=None)
@given(rii_perturbed_words(), st.sampled_from([SET_T_SYMBOLIC, SET_T_PM1]))
def test_d_squared_vanishes_on_rii_perturbed_words(eta, set_t):
    dga = build_dga(eta, set_t=set_t)
    assert dga.normalized, str(eta)
    assert dga.d_squared() == [], str(eta)
