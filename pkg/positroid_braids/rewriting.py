"""Elementary braid moves, replayable move traces and equivalence searches.

Words are compared in one of three framings:

* ``braid``: equality in the braid group (no conjugation moves),
* ``closure``: conjugacy, realised by cyclic rotation of the word,
* ``delta``: conjugacy of ``beta Delta``, realised by the half-twist
  conjugation ``sigma_i beta -> beta sigma_{n-i}``.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import voluptuous as vol

from .braid_core import (
    BraidWord,
    coxeter_projection,
    half_twist,
    interval_letters,
)
from .config import SearchConfig
from .constructions import richardson_braid
from .exceptions import (
    InapplicableMoveError,
    InvalidDatumError,
    PositroidBraidsError,
    ReplayError,
)
from .positroid_data import PositroidPair, require_valid

_LOGGER = logging.getLogger(__name__)

FRONT = "front"
BACK = "back"
TOP = "top"
BOTTOM = "bottom"

FRAMING_BRAID = "braid"
FRAMING_CLOSURE = "closure"
FRAMING_DELTA = "delta"
FRAMINGS = (FRAMING_BRAID, FRAMING_CLOSURE, FRAMING_DELTA)

_BURAU_POINTS = (Fraction(2), Fraction(3))


class MoveKind(str, Enum):
    """Elementary moves recorded in a trace."""

    RII_INSERT = "RII_insert"
    RII_REMOVE = "RII_remove"
    RIII_POS = "RIII_pos"
    RIII_NEG = "RIII_neg"
    COMMUTE = "Commute"
    DELTA_CONJUGATE = "DeltaConjugate"
    CYCLIC_ROTATE = "CyclicRotate"
    POS_STABILIZE = "PosStabilize"
    POS_DESTABILIZE = "PosDestabilize"
    ADD_DISJOINT_STRAND = "AddDisjointStrand"
    REMOVE_DISJOINT_STRAND = "RemoveDisjointStrand"


MOVE_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): vol.In([kind.value for kind in MoveKind]),
        vol.Optional("at", default=0): vol.All(int, vol.Range(min=0)),
        vol.Optional("letter", default=0): int,
        vol.Optional("direction", default=""): vol.In(["", FRONT, BACK, TOP, BOTTOM]),
    }
)

TRACE_SCHEMA = vol.Schema(
    {
        vol.Required("start"): str,
        vol.Required("end"): str,
        vol.Required("moves"): [dict],
    }
)


@dataclass(frozen=True)
class Move:
    """One elementary move.

    ``at`` is a 0-based letter position, ``letter`` the signed generator
    inserted by RII_insert, and ``direction`` is front/back for the two
    conjugation moves and top/bottom for the strand moves.
    """

    kind: MoveKind
    at: int = 0
    letter: int = 0
    direction: str = ""

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value, "at": self.at}
        if self.letter:
            data["letter"] = self.letter
        if self.direction:
            data["direction"] = self.direction
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Move":
        try:
            clean = MOVE_SCHEMA(data)
        except vol.Invalid as err:
            raise InvalidDatumError([f"bad move {data!r}: {err}"]) from err
        return cls(MoveKind(clean["kind"]), clean["at"], clean["letter"], clean["direction"])

    def __str__(self) -> str:
        extra = f" s{self.letter}" if self.letter else ""
        extra += f" {self.direction}" if self.direction else ""
        return f"{self.kind.value}@{self.at}{extra}"


Letters = Tuple[int, ...]


def _adjacent(a: int, b: int) -> bool:
    return abs(abs(a) - abs(b)) == 1


def _apply(letters: Letters, strands: int, move: Move) -> Tuple[Letters, int]:
    """Apply ``move`` to raw letters; raises InapplicableMoveError."""
    kind, at = move.kind, move.at
    size = len(letters)

    def fail(reason: str) -> InapplicableMoveError:
        return InapplicableMoveError(
            f"{move} does not apply: {reason}", move, BraidWord(strands, letters)
        )

    if kind in (MoveKind.RII_REMOVE, MoveKind.COMMUTE) and at + 1 >= size:
        raise fail("position out of range")
    if kind in (MoveKind.RIII_POS, MoveKind.RIII_NEG) and at + 2 >= size:
        raise fail("position out of range")

    if kind == MoveKind.RII_INSERT:
        if not 0 <= at <= size or move.letter == 0 or abs(move.letter) >= strands:
            raise fail("bad insertion")
        return letters[:at] + (move.letter, -move.letter) + letters[at:], strands
    if kind == MoveKind.RII_REMOVE:
        if letters[at] != -letters[at + 1]:
            raise fail("letters do not cancel")
        return letters[:at] + letters[at + 2:], strands
    if kind in (MoveKind.RIII_POS, MoveKind.RIII_NEG):
        a, b, c = letters[at:at + 3]
        sign = 1 if kind == MoveKind.RIII_POS else -1
        if not (a == c and a * sign > 0 and b * sign > 0 and _adjacent(a, b)):
            raise fail("no braid relation here")
        return letters[:at] + (b, a, b) + letters[at + 3:], strands
    if kind == MoveKind.COMMUTE:
        a, b = letters[at], letters[at + 1]
        if abs(abs(a) - abs(b)) < 2:
            raise fail("letters do not commute")
        return letters[:at] + (b, a) + letters[at + 2:], strands
    if kind in (MoveKind.DELTA_CONJUGATE, MoveKind.CYCLIC_ROTATE):
        if size == 0 or move.direction not in (FRONT, BACK):
            raise fail("nothing to conjugate")
        flip = kind == MoveKind.DELTA_CONJUGATE

        def image(x: int) -> int:
            return (strands - abs(x)) * (1 if x > 0 else -1) if flip else x

        if move.direction == FRONT:
            return letters[1:] + (image(letters[0]),), strands
        return (image(letters[-1]),) + letters[:-1], strands
    if kind == MoveKind.POS_STABILIZE:
        if at != size:
            raise fail("the new generator goes at the end of the word")
        return letters + (strands,), strands + 1
    if kind == MoveKind.POS_DESTABILIZE:
        top = strands - 1
        if at != size - 1 or letters[at] != top or sum(1 for x in letters if abs(x) == top) != 1:
            raise fail(f"s{top} must occur exactly once, positively, as the last letter")
        return letters[:at], strands - 1
    if kind == MoveKind.ADD_DISJOINT_STRAND:
        if move.direction == TOP:
            return letters, strands + 1
        if move.direction == BOTTOM:
            return tuple(x + 1 if x > 0 else x - 1 for x in letters), strands + 1
        raise fail("direction must be top or bottom")
    if kind == MoveKind.REMOVE_DISJOINT_STRAND:
        if strands < 2:
            raise fail("cannot remove the last strand")
        if move.direction == TOP:
            if any(abs(x) == strands - 1 for x in letters):
                raise fail("top strand is not disjoint")
            return letters, strands - 1
        if move.direction == BOTTOM:
            if any(abs(x) == 1 for x in letters):
                raise fail("bottom strand is not disjoint")
            return tuple(x - 1 if x > 0 else x + 1 for x in letters), strands - 1
        raise fail("direction must be top or bottom")
    raise fail("unknown move")


_STRAND_DELTA = {
    MoveKind.POS_STABILIZE: 1,
    MoveKind.POS_DESTABILIZE: -1,
    MoveKind.ADD_DISJOINT_STRAND: 1,
    MoveKind.REMOVE_DISJOINT_STRAND: -1,
}
_LOCAL_MOVES = (MoveKind.RII_INSERT, MoveKind.RII_REMOVE, MoveKind.RIII_POS, MoveKind.RIII_NEG, MoveKind.COMMUTE)
_MARKOV_MOVES = (MoveKind.POS_STABILIZE, MoveKind.POS_DESTABILIZE)


def _assert_invariants(before: BraidWord, after: BraidWord, move: Move) -> None:
    writhe_delta = {MoveKind.POS_STABILIZE: 1, MoveKind.POS_DESTABILIZE: -1}.get(move.kind, 0)
    if after.writhe() - before.writhe() != writhe_delta:
        raise PositroidBraidsError(f"{move} changed the writhe of {before}")
    if after.strands - before.strands != _STRAND_DELTA.get(move.kind, 0):
        raise PositroidBraidsError(f"{move} changed the strand count of {before}")
    if move.kind in _LOCAL_MOVES and coxeter_projection(after) != coxeter_projection(before):
        raise PositroidBraidsError(f"{move} changed the permutation of {before}")


def apply_move(word: BraidWord, move: Move) -> BraidWord:
    letters, strands = _apply(word.letters, word.strands, move)
    result = BraidWord(strands, letters)
    _assert_invariants(word, result, move)
    return result


def inverse_move(move: Move, before: Union[BraidWord, Letters]) -> Move:
    """The move undoing ``move`` when applied to ``apply_move(before, move)``."""
    kind = move.kind
    if kind == MoveKind.RII_INSERT:
        return Move(MoveKind.RII_REMOVE, move.at)
    if kind == MoveKind.RII_REMOVE:
        return Move(MoveKind.RII_INSERT, move.at, letter=before[move.at])
    if kind in (MoveKind.DELTA_CONJUGATE, MoveKind.CYCLIC_ROTATE):
        return Move(kind, direction=BACK if move.direction == FRONT else FRONT)
    if kind == MoveKind.POS_STABILIZE:
        return Move(MoveKind.POS_DESTABILIZE, move.at)
    if kind == MoveKind.POS_DESTABILIZE:
        return Move(MoveKind.POS_STABILIZE, move.at)
    if kind == MoveKind.ADD_DISJOINT_STRAND:
        return Move(MoveKind.REMOVE_DISJOINT_STRAND, direction=move.direction)
    if kind == MoveKind.REMOVE_DISJOINT_STRAND:
        return Move(MoveKind.ADD_DISJOINT_STRAND, direction=move.direction)
    return move


def _check_markov_step(before: BraidWord, after: BraidWord, move: Move) -> None:
    """A (de)stabilization must be undone by its inverse up to the Burau invariant."""
    restored = apply_move(after, inverse_move(move, before))
    if burau_invariant(restored) != burau_invariant(before):
        raise PositroidBraidsError(f"{move} is not undone by its inverse on {before}")


@dataclass(frozen=True)
class ReplayReport:
    ok: bool
    step: Optional[int] = None
    message: str = ""

    def to_json(self) -> Dict[str, Any]:
        return {"ok": self.ok, "step": self.step, "message": self.message}


@dataclass(frozen=True)
class MoveTrace:
    """A certificate: replaying ``moves`` from ``start`` yields ``end``."""

    start: BraidWord
    moves: Tuple[Move, ...]
    end: BraidWord

    def __len__(self) -> int:
        return len(self.moves)

    def replay(self) -> BraidWord:
        word = self.start
        for step, move in enumerate(self.moves):
            try:
                before, word = word, apply_move(word, move)
                if move.kind in _MARKOV_MOVES:
                    _check_markov_step(before, word, move)
            except PositroidBraidsError as err:
                raise ReplayError(f"step {step}: {err}", step) from err
        if word != self.end:
            raise ReplayError(f"trace ends at {word}, expected {self.end}", len(self.moves))
        return word

    def then(self, other: "MoveTrace") -> "MoveTrace":
        if other.start != self.end:
            raise ReplayError(f"cannot chain a trace ending at {self.end} with one starting at {other.start}")
        return MoveTrace(self.start, self.moves + other.moves, other.end)

    def inverse(self) -> "MoveTrace":
        words = [self.start]
        for move in self.moves:
            words.append(apply_move(words[-1], move))
        moves = tuple(inverse_move(m, w) for m, w in zip(reversed(self.moves), reversed(words[:-1])))
        return MoveTrace(self.end, moves, self.start)

    def to_json(self) -> Dict[str, Any]:
        return {
            "start": str(self.start),
            "end": str(self.end),
            "moves": [m.to_json() for m in self.moves],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "MoveTrace":
        try:
            clean = TRACE_SCHEMA(data)
        except vol.Invalid as err:
            raise InvalidDatumError([f"bad trace: {err}"]) from err
        return cls(
            BraidWord.parse(clean["start"]),
            tuple(Move.from_json(m) for m in clean["moves"]),
            BraidWord.parse(clean["end"]),
        )


def replay(trace: MoveTrace) -> ReplayReport:
    try:
        trace.replay()
    except ReplayError as err:
        return ReplayReport(False, err.step, str(err))
    return ReplayReport(True)


class TraceBuilder:
    """Applies moves to a current word while recording them."""

    def __init__(self, word: BraidWord) -> None:
        self.start = word
        self.word = word
        self.moves: List[Move] = []

    def apply(self, move: Move) -> "TraceBuilder":
        self.word = apply_move(self.word, move)
        self.moves.append(move)
        return self

    def build(self) -> MoveTrace:
        return MoveTrace(self.start, tuple(self.moves), self.word)

    def rii_insert(self, at: int, letter: int) -> "TraceBuilder":
        return self.apply(Move(MoveKind.RII_INSERT, at, letter=letter))

    def rii_remove(self, at: int) -> "TraceBuilder":
        return self.apply(Move(MoveKind.RII_REMOVE, at))

    def riii(self, at: int) -> "TraceBuilder":
        kind = MoveKind.RIII_POS if self.word[at] > 0 else MoveKind.RIII_NEG
        return self.apply(Move(kind, at))

    def commute(self, at: int) -> "TraceBuilder":
        return self.apply(Move(MoveKind.COMMUTE, at))

    def delta_conjugate(self, direction: str = FRONT) -> "TraceBuilder":
        return self.apply(Move(MoveKind.DELTA_CONJUGATE, direction=direction))

    def rotate(self, direction: str = FRONT) -> "TraceBuilder":
        return self.apply(Move(MoveKind.CYCLIC_ROTATE, direction=direction))

    def stabilize(self) -> "TraceBuilder":
        return self.apply(Move(MoveKind.POS_STABILIZE, len(self.word)))

    def destabilize(self) -> "TraceBuilder":
        return self.apply(Move(MoveKind.POS_DESTABILIZE, len(self.word) - 1))

    def add_strand(self, side: str = TOP) -> "TraceBuilder":
        return self.apply(Move(MoveKind.ADD_DISJOINT_STRAND, direction=side))

    def remove_strand(self, side: str = TOP) -> "TraceBuilder":
        return self.apply(Move(MoveKind.REMOVE_DISJOINT_STRAND, direction=side))

    def mixed(self, at: int) -> "TraceBuilder":
        """sigma_a sigma_b sigma_a^-1 -> sigma_b^-1 sigma_a sigma_b, and its mirror.

        The mirror pattern is sigma_a^-1 sigma_b sigma_a -> sigma_b sigma_a sigma_b^-1.
        """
        a, b, c = self.word.letters[at:at + 3]
        if not (b > 0 and _adjacent(a, b) and c == -a):
            raise InapplicableMoveError(f"no mixed relation at {at}", None, self.word)
        if a > 0:
            return self.rii_insert(at, -b).riii(at + 1).rii_remove(at + 3)
        return self.rii_insert(at + 3, b).riii(at + 1).rii_remove(at)

    def transport(self, src: int, dst: int) -> "TraceBuilder":
        """Move one letter from ``src`` to ``dst`` by far commutations."""
        if dst < src:
            for pos in range(src - 1, dst - 1, -1):
                self.commute(pos)
        else:
            for pos in range(src, dst):
                self.commute(pos)
        return self

    def cancel_all(self) -> "TraceBuilder":
        """Remove adjacent inverse pairs until none is left."""
        while True:
            letters = self.word.letters
            pos = next((p for p in range(len(letters) - 1) if letters[p] == -letters[p + 1]), None)
            if pos is None:
                return self
            self.rii_remove(pos)

    def pull_through(self, start: int, length: int) -> bool:
        """Move the letter after the interval word at ``start`` to its left.

        The interval occupies ``[start, start + length)`` and reads
        sigma_d ... sigma_a.  A letter sigma_x^{+-1} with a < x <= d comes out
        as sigma_{x-1}^{+-1} in front of the interval, which moves one place
        right.  A letter sigma_a^{-1} cancels the bottom of the interval
        instead; the return value tells which happened.
        """
        letters = self.word.letters
        p = start + length
        letter = letters[p]
        x = abs(letter)
        top, bottom = abs(letters[start]), abs(letters[p - 1])
        if letter < 0 and x == bottom:
            self.rii_remove(p - 1)
            return True
        if not bottom < x <= top:
            raise InapplicableMoveError(
                f"s{x} cannot pass through the interval [{bottom},{top}]", None, self.word
            )
        q = start + (top - x)
        self.transport(p, q + 2)
        if letter > 0:
            self.riii(q)
        else:
            self.mixed(q)
        self.transport(q, start)
        return False


# Interval lemmas


@dataclass(frozen=True)
class SlideResult:
    upsilon: BraidWord
    b: int
    trace: MoveTrace


def slide(a: int, c: int, u: BraidWord) -> SlideResult:
    """Rewrite sigma_[a,c] u^{-1} as upsilon^{-1} sigma_[b,c].

    ``u`` is a positive subword of sigma_[a,c].
    """
    letters = list(u.letters)
    if any(x <= 0 or not a <= x <= c for x in letters) or letters != sorted(set(letters), reverse=True):
        raise InvalidDatumError([f"{u} is not a subword of sigma_[{a},{c}]"])
    start = BraidWord(u.strands, tuple(interval_letters(a, c))) + u.inverse()
    builder = TraceBuilder(start)
    column_start, length, b = 0, c - a + 1, a
    for _ in letters:
        if builder.pull_through(column_start, length):
            length -= 1
            b += 1
        else:
            column_start += 1
    emitted = builder.word[:column_start]
    return SlideResult(emitted.inverse(), b, builder.build())


def nested_exchange(a: int, b: int, c: int, d: int, sign: int = 1, strands: Optional[int] = None) -> MoveTrace:
    """sigma_[a,d] sigma_[b,c]^{+-1} = sigma_[b-1,c-1]^{+-1} sigma_[a,d] for a < b <= c <= d."""
    if not a < b <= c <= d:
        raise InvalidDatumError([f"need a < b <= c <= d, got {a}, {b}, {c}, {d}"])
    strands = d + 1 if strands is None else strands
    inner = BraidWord(strands, tuple(interval_letters(b, c)))
    start = BraidWord(strands, tuple(interval_letters(a, d))) + (inner if sign > 0 else inner.inverse())
    builder = TraceBuilder(start)
    for offset in range(len(inner)):
        builder.pull_through(offset, d - a + 1)
    return builder.build()


# Markov reduction of Richardson braids


def _cancelling_rewrite(letters: Letters) -> Optional[int]:
    """Position of a braid or mixed relation whose result cancels a neighbour."""
    size = len(letters)
    for at in range(size - 2):
        a, b, c = letters[at:at + 3]
        if not _adjacent(a, b):
            continue
        if a == c and (a > 0) == (b > 0):
            result = (b, a, b)
        elif b > 0 and c == -a:
            result = (-b, a, b) if a > 0 else (b, -a, -b)
        else:
            continue
        if (at > 0 and letters[at - 1] == -result[0]) or (at + 3 < size and letters[at + 3] == -result[2]):
            return at
    return None


def _simplify(builder: TraceBuilder) -> None:
    builder.cancel_all()
    while True:
        at = _cancelling_rewrite(builder.word.letters)
        if at is None:
            return
        a, b, c = builder.word.letters[at:at + 3]
        if a == c:
            builder.riii(at)
        else:
            builder.mixed(at)
        builder.cancel_all()


def _is_destabilizable(letters: Letters, strands: int) -> bool:
    top = strands - 1
    return bool(letters) and letters[-1] == top and sum(1 for x in letters if abs(x) == top) == 1


def _gather_top(builder: TraceBuilder, at: int) -> int:
    """Move tail letters commuting with everything up to the top letter in front of it."""
    for i in range(at + 1, len(builder.word)):
        letters = builder.word.letters
        if all(abs(abs(letters[i]) - abs(y)) >= 2 for y in letters[at:i]):
            builder.transport(i, at)
            at += 1
    return at


def _rotation_to_end(word: BraidWord) -> Optional[int]:
    """Fewest front half-twist conjugations leaving the top letter last."""
    letters = word.letters
    move = Move(MoveKind.DELTA_CONJUGATE, direction=FRONT)
    for count in range(1, 2 * len(letters)):
        letters = _apply(letters, word.strands, move)[0]
        if _is_destabilizable(letters, word.strands):
            return count
    return None


def _search_destabilizable(word: BraidWord, config: SearchConfig) -> Optional[List[Move]]:
    parents: Dict[Letters, Optional[Tuple[Letters, Move]]] = {word.letters: None}
    queue = deque([word.letters])
    budget = config.max_states
    while queue:
        state = queue.popleft()
        for move, nxt in _neighbours(state, word.strands, FRAMING_DELTA, len(word) + 2):
            if nxt in parents:
                continue
            parents[nxt] = (state, move)
            if _is_destabilizable(nxt, word.strands):
                moves: List[Move] = []
                node = nxt
                while parents[node] is not None:
                    node, step = parents[node]
                    moves.append(step)
                return moves[::-1]
            budget -= 1
            if budget <= 0:
                return None
            queue.append(nxt)
    return None


def _destabilize_top(builder: TraceBuilder, config: SearchConfig) -> None:
    """Remove the top strand of a word that uses the top generator.

    A unique positive sigma_{n-1} followed by a tail B free of sigma_1 is
    destabilized through A sigma_{n-1} B ~ c(B) A sigma_{n-1}, after which
    conjugating B back on n - 1 strands leaves A B with every index of B
    lowered by one.
    """
    strands = builder.word.strands
    top = strands - 1
    letters = builder.word.letters
    positions = [i for i, x in enumerate(letters) if abs(x) == top]
    if len(positions) == 1 and letters[positions[0]] == top:
        at = _gather_top(builder, positions[0])
        tail = builder.word.letters[at + 1:]
        if all(abs(x) != 1 for x in tail):
            for _ in tail:
                builder.delta_conjugate(BACK)
            builder.destabilize()
            for _ in tail:
                builder.delta_conjugate(FRONT)
            return
    count = _rotation_to_end(builder.word)
    if count is not None:
        for _ in range(count):
            builder.delta_conjugate(FRONT)
        builder.destabilize()
        return
    moves = _search_destabilizable(builder.word, config)
    if moves is None:
        raise PositroidBraidsError(f"no destabilization of s{top} found for {builder.word}")
    for move in moves:
        builder.apply(move)
    builder.destabilize()


def markov_reduce(pair: PositroidPair, config: Optional[SearchConfig] = None) -> Tuple[BraidWord, MoveTrace]:
    """Destabilize R_n(u, w) down to k strands.

    Every round first shortens the word with braid and mixed relations
    whose result cancels a neighbour.  A top strand the word never uses is
    dropped; otherwise the top generator is destabilized.  Only moves that
    keep the half-twist conjugacy class of beta Delta are used, so the
    result is equivalent to J_k(f) Delta_k^{-1} without necessarily
    matching its letters.
    """
    require_valid(pair)
    config = config or SearchConfig()
    builder = TraceBuilder(richardson_braid(pair))
    floor = max(pair.k, 1)
    while builder.word.strands > floor:
        _simplify(builder)
        top = builder.word.strands - 1
        if all(abs(x) != top for x in builder.word.letters):
            builder.remove_strand(TOP)
        else:
            _destabilize_top(builder, config)
        _LOGGER.debug(f"markov reduction at {builder.word.strands} strands: {builder.word}")
    _simplify(builder)
    trace = builder.build()
    _LOGGER.info(f"markov reduction of ({pair.u}, {pair.w}): {len(trace)} moves to {trace.end}")
    return trace.end, trace


# Invariants used as fast disproofs


def burau_matrix(word: BraidWord, t: Fraction) -> List[List[Fraction]]:
    """Unreduced Burau matrix with sigma_i -> I + [[1-t, t], [1, 0]] at rows i, i+1."""
    n = word.strands
    rows = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    for letter in word.letters:
        i = abs(letter) - 1
        for row in rows:
            left, right = row[i], row[i + 1]
            if letter > 0:
                row[i], row[i + 1] = left * (1 - t) + right, left * t
            else:
                row[i], row[i + 1] = right / t, left + right * (1 - 1 / t)
    return rows


def _matmul(a: List[List[Fraction]], b: List[List[Fraction]]) -> List[List[Fraction]]:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def burau_invariant(word: BraidWord, framing: str = FRAMING_DELTA) -> Tuple[Any, ...]:
    """Burau data that no move of ``framing`` changes."""
    target = word + half_twist(word.strands) if framing == FRAMING_DELTA else word
    values: List[Any] = []
    for t in _BURAU_POINTS:
        matrix = burau_matrix(target, t)
        if framing == FRAMING_BRAID:
            values.append(tuple(tuple(row) for row in matrix))
            continue
        power = matrix
        for _ in range(word.strands):
            values.append(sum((power[i][i] for i in range(word.strands)), Fraction(0)))
            power = _matmul(power, matrix)
    return tuple(values)


def invariant_mismatch(
    first: BraidWord, second: BraidWord, framing: str = FRAMING_DELTA, use_burau: bool = True
) -> Optional[str]:
    """Name an invariant separating the two words, or None."""
    if first.strands != second.strands:
        return "strand counts differ"
    if first.writhe() != second.writhe():
        return "writhes differ"
    if framing == FRAMING_BRAID:
        if coxeter_projection(first) != coxeter_projection(second):
            return "permutations differ"
    else:
        delta = half_twist(first.strands) if framing == FRAMING_DELTA else BraidWord(first.strands)
        if coxeter_projection(first + delta).cycle_type() != coxeter_projection(second + delta).cycle_type():
            return "closure permutations are not conjugate"
    if use_burau and burau_invariant(first, framing) != burau_invariant(second, framing):
        return "Burau invariants differ"
    return None


# Bounded bidirectional search


def _neighbours(letters: Letters, strands: int, framing: str, max_len: int) -> Iterator[Tuple[Move, Letters]]:
    size = len(letters)
    for at in range(size - 1):
        a, b = letters[at], letters[at + 1]
        if a == -b:
            yield Move(MoveKind.RII_REMOVE, at), letters[:at] + letters[at + 2:]
        elif abs(abs(a) - abs(b)) >= 2:
            yield Move(MoveKind.COMMUTE, at), letters[:at] + (b, a) + letters[at + 2:]
        if at + 2 < size and letters[at + 2] == a and (a > 0) == (b > 0) and _adjacent(a, b):
            kind = MoveKind.RIII_POS if a > 0 else MoveKind.RIII_NEG
            yield Move(kind, at), letters[:at] + (b, a, b) + letters[at + 3:]
    if size + 2 <= max_len:
        for at in range(size + 1):
            for index in range(1, strands):
                for letter in (index, -index):
                    yield Move(MoveKind.RII_INSERT, at, letter=letter), letters[:at] + (letter, -letter) + letters[at:]
    if size and framing != FRAMING_BRAID:
        kind = MoveKind.DELTA_CONJUGATE if framing == FRAMING_DELTA else MoveKind.CYCLIC_ROTATE
        for direction in (FRONT, BACK):
            move = Move(kind, direction=direction)
            yield move, _apply(letters, strands, move)[0]


class _BudgetExhausted(Exception):
    pass


def _bidirectional(
    start: Letters, goal: Letters, strands: int, framing: str, max_len: int, budget: List[int]
) -> Optional[List[Move]]:
    forward: Dict[Letters, Optional[Tuple[Letters, Move]]] = {start: None}
    backward: Dict[Letters, Optional[Tuple[Letters, Move]]] = {goal: None}
    frontiers = {True: deque([start]), False: deque([goal])}

    def join(meet: Letters) -> List[Move]:
        head: List[Move] = []
        node = meet
        while forward[node] is not None:
            node, move = forward[node]
            head.append(move)
        head.reverse()
        node = meet
        while backward[node] is not None:
            node, move = backward[node]
            head.append(move)
        return head

    if start == goal:
        return []
    while frontiers[True] and frontiers[False]:
        is_forward = len(frontiers[True]) <= len(frontiers[False])
        seen, other = (forward, backward) if is_forward else (backward, forward)
        level: deque = deque()
        for state in frontiers[is_forward]:
            for move, nxt in _neighbours(state, strands, framing, max_len):
                if nxt in seen:
                    continue
                if is_forward:
                    seen[nxt] = (state, move)
                else:
                    seen[nxt] = (state, inverse_move(move, state))
                if nxt in other:
                    return join(nxt)
                budget[0] -= 1
                if budget[0] <= 0:
                    raise _BudgetExhausted
                level.append(nxt)
        frontiers[is_forward] = level
    return None


def find_equivalence(
    first: BraidWord,
    second: BraidWord,
    config: Optional[SearchConfig] = None,
    framing: str = FRAMING_DELTA,
) -> Optional[MoveTrace]:
    """Search for a move trace from ``first`` to ``second``.

    None means no certificate was found within the budget, which is not a
    proof of inequivalence; use invariant_mismatch for that.
    """
    if framing not in FRAMINGS:
        raise InvalidDatumError([f"unknown framing {framing!r}"])
    config = config or SearchConfig()
    reason = invariant_mismatch(first, second, framing, config.use_burau_filter)
    if reason is not None:
        _LOGGER.info(f"no equivalence between {first} and {second}: {reason}")
        return None
    budget = [config.max_states]
    base = max(len(first), len(second))
    for extra in range(0, config.max_extra_length + 1, 2):
        try:
            moves = _bidirectional(first.letters, second.letters, first.strands, framing, base + extra, budget)
        except _BudgetExhausted:
            _LOGGER.info(f"search budget of {config.max_states} states exhausted for {first} ~ {second}")
            return None
        if moves is not None:
            _LOGGER.info(f"certificate of {len(moves)} moves found for {first} ~ {second} ({framing})")
            trace = MoveTrace(first, tuple(moves), second)
            trace.replay()
            return trace
    _LOGGER.info(f"no certificate for {first} ~ {second} within {config.max_extra_length} extra letters")
    return None


def equivalence_chain(
    start: BraidWord, waypoints: Sequence[BraidWord], config: Optional[SearchConfig] = None,
    framing: str = FRAMING_DELTA,
) -> Optional[MoveTrace]:
    """Certify start ~ waypoints[0] ~ waypoints[1] ~ ... one hop at a time."""
    trace = MoveTrace(start, (), start)
    for target in waypoints:
        hop = find_equivalence(trace.end, target, config, framing)
        if hop is None:
            return None
        trace = trace.then(hop)
    return trace


def free_reduce(word: BraidWord) -> MoveTrace:
    return TraceBuilder(word).cancel_all().build()
