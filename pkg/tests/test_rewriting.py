"""Tests for braid moves, certificates and the equivalence search."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from positroid_braids.braid_core import BraidWord, half_twist
from positroid_braids.config import SearchConfig
from positroid_braids.const import INTRO_REDUCED
from positroid_braids.constructions import juggling_braid_diagram, richardson_braid
from positroid_braids.exceptions import InapplicableMoveError, InvalidDatumError, ReplayError
from positroid_braids.positroid_data import max_pair, pair_to_affine, pair_to_le
from positroid_braids.rewriting import (
    BACK,
    BOTTOM,
    FRAMING_BRAID,
    FRAMING_CLOSURE,
    FRAMING_DELTA,
    FRONT,
    TOP,
    Move,
    MoveKind,
    MoveTrace,
    TraceBuilder,
    apply_move,
    burau_invariant,
    find_equivalence,
    free_reduce,
    invariant_mismatch,
    markov_reduce,
    nested_exchange,
    replay,
    slide,
)


def word(n, *letters):
    return BraidWord(n, tuple(letters))


def words(n=3, max_size=6):
    letters = st.sampled_from([x for i in range(1, n) for x in (i, -i)])
    return st.lists(letters, max_size=max_size).map(lambda xs: BraidWord(n, tuple(xs)))


@pytest.mark.parametrize(
    "before,move,after",
    [
        (word(3, 1), Move(MoveKind.RII_INSERT, 1, letter=-2), word(3, 1, -2, 2)),
        (word(3, 1, 2, -2), Move(MoveKind.RII_REMOVE, 1), word(3, 1)),
        (word(3, 1, 2, 1), Move(MoveKind.RIII_POS, 0), word(3, 2, 1, 2)),
        (word(3, -2, -1, -2), Move(MoveKind.RIII_NEG, 0), word(3, -1, -2, -1)),
        (word(4, 1, -3), Move(MoveKind.COMMUTE, 0), word(4, -3, 1)),
        (word(3, 1, 2), Move(MoveKind.DELTA_CONJUGATE, direction=FRONT), word(3, 2, 2)),
        (word(3, 1, 2), Move(MoveKind.CYCLIC_ROTATE, direction=BACK), word(3, 2, 1)),
        (word(2, 1), Move(MoveKind.POS_STABILIZE, 1), word(3, 1, 2)),
        (word(3, 1, 2), Move(MoveKind.POS_DESTABILIZE, 1), word(2, 1)),
        (word(2, 1), Move(MoveKind.ADD_DISJOINT_STRAND, direction=BOTTOM), word(3, 2)),
        (word(3, 1), Move(MoveKind.REMOVE_DISJOINT_STRAND, direction=TOP), word(2, 1)),
    ],
)
def test_elementary_moves(before, move, after):
    assert apply_move(before, move) == after


@pytest.mark.parametrize(
    "before,move",
    [
        (word(3, 1, 1), Move(MoveKind.RII_REMOVE, 0)),
        (word(3, 1, -2, 1), Move(MoveKind.RIII_POS, 0)),
        (word(3, 1, 2), Move(MoveKind.COMMUTE, 0)),
        (word(3, 2, 2), Move(MoveKind.POS_DESTABILIZE, 0)),
        (word(3, 2), Move(MoveKind.REMOVE_DISJOINT_STRAND, direction=TOP)),
        (word(3, 1), Move(MoveKind.REMOVE_DISJOINT_STRAND, direction=BOTTOM)),
        (word(3), Move(MoveKind.DELTA_CONJUGATE, direction=FRONT)),
    ],
)
def test_inapplicable_moves(before, move):
    with pytest.raises(InapplicableMoveError):
        apply_move(before, move)


def test_trace_inverse_and_json():
    start = word(3, 1, 2, -2, -1, 2)
    trace = free_reduce(start)
    assert trace.end == word(3, 2)
    assert len(trace) == 2
    assert trace.inverse().replay() == start
    assert MoveTrace.from_json(trace.to_json()) == trace


def test_replay_reports_failures():
    trace = MoveTrace(word(3, 1, -1), (Move(MoveKind.RII_REMOVE, 0),), word(3, 2))
    report = replay(trace)
    assert not report.ok
    assert report.step == 1
    bad_step = MoveTrace(word(3, 1), (Move(MoveKind.RII_REMOVE, 0),), word(3))
    assert replay(bad_step).step == 0


def test_trace_chaining():
    first = free_reduce(word(3, 1, -1, 2))
    with pytest.raises(ReplayError):
        first.then(free_reduce(word(3, 1)))
    chained = first.then(free_reduce(word(3, 2)))
    assert chained.start == word(3, 1, -1, 2)
    assert chained.end == word(3, 2)


def test_move_json_validation():
    with pytest.raises(InvalidDatumError):
        Move.from_json({"kind": "Teleport"})
    move = Move.from_json({"kind": "RII_insert", "at": 2, "letter": -1})
    assert move == Move(MoveKind.RII_INSERT, 2, letter=-1)


def test_mixed_relation():
    builder = TraceBuilder(word(3, 1, 2, -1)).mixed(0)
    assert builder.word == word(3, -2, 1, 2)
    builder = TraceBuilder(word(3, -1, 2, 1)).mixed(0)
    assert builder.word == word(3, 2, 1, -2)
    assert replay(builder.build()).ok


def test_slide_through_interval():
    result = slide(2, 5, word(6, 4, 2))
    assert result.upsilon == word(6, 3)
    assert result.b == 3
    assert result.trace.end == word(6, -3, 5, 4, 3)
    assert replay(result.trace).ok


def test_nested_exchange():
    trace = nested_exchange(1, 2, 2, 2)
    assert trace.start == word(3, 2, 1, 2)
    assert trace.end == word(3, 1, 2, 1)
    inverse_variant = nested_exchange(1, 2, 2, 3, sign=-1)
    assert replay(inverse_variant).ok
    assert inverse_variant.end.letters[0] == -1
    with pytest.raises(InvalidDatumError):
        nested_exchange(2, 2, 2, 3)


def test_markov_reduce_worked_pair(markov44_pair):
    assert richardson_braid(markov44_pair) == word(6, 4, 3, 2, 1, 5, 4, 3, 2, -2, -4, -3)
    reduced, trace = markov_reduce(markov44_pair)
    assert reduced == word(4, 1, 2, 3)
    assert replay(trace).ok
    kinds = {m.kind for m in trace.moves}
    assert MoveKind.POS_DESTABILIZE in kinds
    assert MoveKind.DELTA_CONJUGATE in kinds


def test_markov44_le_diagram(markov44_pair):
    diagram = pair_to_le(markov44_pair)
    assert len(diagram.dots) == 5
    assert len(diagram.cells()) - len(diagram.dots) == 3


def test_markov_reduce_top_cell():
    reduced, trace = markov_reduce(max_pair(2, 4))
    assert reduced == word(2, 1, 1)
    assert replay(trace).ok


def test_markov_reduce_intro_matches_juggling_invariants(intro_pair):
    reduced, trace = markov_reduce(intro_pair)
    juggling = juggling_braid_diagram(pair_to_affine(intro_pair), 3)
    assert reduced == word(3, 1, 1, 1, 1)
    assert replay(trace).ok
    assert invariant_mismatch(reduced, juggling + half_twist(3).inverse()) is None
    hop = find_equivalence(reduced, BraidWord.parse(INTRO_REDUCED))
    assert hop is not None
    assert replay(trace.then(hop)).ok


def test_markov_reduce_only_destabilizes_last_letter(intro_pair):
    _, trace = markov_reduce(intro_pair)
    word_now = trace.start
    for move in trace.moves:
        if move.kind is MoveKind.POS_DESTABILIZE:
            assert move.at == len(word_now) - 1
        word_now = apply_move(word_now, move)


def test_interior_destabilization_is_rejected():
    # s2 s1 on three strands destabilizes only after conjugating s1 around.
    with pytest.raises(InapplicableMoveError):
        apply_move(word(3, 2, 1), Move(MoveKind.POS_DESTABILIZE, 0))
    with pytest.raises(InapplicableMoveError):
        apply_move(word(2, 1), Move(MoveKind.POS_STABILIZE, 0))
    forged = MoveTrace(word(3, 2, 1), (Move(MoveKind.POS_DESTABILIZE, 0),), word(2, 1))
    report = replay(forged)
    assert not report.ok
    assert report.step == 0


def test_destabilization_through_half_twist():
    builder = TraceBuilder(word(4, 1, 3, 2))
    builder.delta_conjugate(BACK).destabilize().delta_conjugate(FRONT)
    assert builder.word == word(3, 1, 1)
    trace = builder.build()
    assert replay(trace).ok
    assert trace.inverse().replay() == word(4, 1, 3, 2)


def test_find_equivalence_braid_relation():
    trace = find_equivalence(word(3, 1, 2, 1), word(3, 2, 1, 2), framing=FRAMING_BRAID)
    assert trace is not None
    assert len(trace) == 1
    assert replay(trace).ok


def test_find_equivalence_framings():
    assert find_equivalence(word(3, 1), word(3, 2), framing=FRAMING_BRAID) is None
    delta = find_equivalence(word(3, 1), word(3, 2), framing=FRAMING_DELTA)
    assert delta is not None and delta.moves[0].kind is MoveKind.DELTA_CONJUGATE
    closure = find_equivalence(word(3, 1, 2), word(3, 2, 1), framing=FRAMING_CLOSURE)
    assert closure is not None and replay(closure).ok
    with pytest.raises(InvalidDatumError):
        find_equivalence(word(3, 1), word(3, 1), framing="spiral")


def test_find_equivalence_rejects_by_invariants():
    assert invariant_mismatch(word(3, 1), word(3, 1, 1)) == "writhes differ"
    assert invariant_mismatch(word(3, 1), word(4, 1)) == "strand counts differ"
    assert find_equivalence(word(3, 1, 1), word(3, 1)) is None


def test_find_equivalence_needs_rii_room():
    start, target = word(3, 1, 2, -1), word(3, -2, 1, 2)
    assert find_equivalence(start, target, SearchConfig(max_extra_length=0), FRAMING_BRAID) is None
    trace = find_equivalence(start, target, SearchConfig(max_extra_length=2), FRAMING_BRAID)
    assert trace is not None
    assert trace.end == target
    assert replay(trace).ok


def test_burau_invariant_respects_braid_relation():
    assert burau_invariant(word(3, 1, 2, 1), FRAMING_BRAID) == burau_invariant(word(3, 2, 1, 2), FRAMING_BRAID)
    assert burau_invariant(word(3, 1, -1), FRAMING_BRAID) == burau_invariant(word(3), FRAMING_BRAID)


@given(words(), st.integers(0, 6), st.sampled_from([1, -1, 2, -2]))
def test_rii_insertion_keeps_invariants(w, at, letter):
    at = min(at, len(w))
    moved = apply_move(w, Move(MoveKind.RII_INSERT, at, letter=letter))
    assert invariant_mismatch(w, moved) is None
    assert invariant_mismatch(w, moved, FRAMING_BRAID) is None
