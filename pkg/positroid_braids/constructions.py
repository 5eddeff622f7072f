"""The braids attached to a positroid stratum.

Richardson braids live on n strands, juggling, matrix and Le braids on k
strands.  When k = 0 the k-stranded braids are returned as the empty word on
one strand.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .braid_core import (
    LIFT_COLUMN,
    LIFT_LEX,
    AffinePermutation,
    BraidWord,
    Permutation,
    conjugate_partition,
    grassmannian_from_partition,
    half_twist,
    interval_letters,
    is_k_grassmannian,
    partition_of_grassmannian,
    positive_lift,
    subword_lift,
)
from .exceptions import InvalidDatumError, PositroidBraidsError
from .positroid_data import (
    CyclicRankMatrix,
    LeDiagram,
    PositroidPair,
    affine_to_rank,
    pair_to_affine,
    pair_to_le,
    require_valid,
)

_LOGGER = logging.getLogger(__name__)


def _k_strands(k: int) -> int:
    return max(k, 1)


# Richardson braid


def richardson_braid(pair: PositroidPair, strategy: str = LIFT_COLUMN) -> BraidWord:
    """beta(w) beta(u)^{-1} with beta(u) the rightmost subword of beta(w)."""
    require_valid(pair)
    if strategy == LIFT_COLUMN and not is_k_grassmannian(pair.w, pair.k):
        strategy = LIFT_LEX
    beta_w = positive_lift(pair.w, strategy, pair.k)
    beta_u = BraidWord(pair.n, tuple(beta_w[p] for p in subword_lift(beta_w, pair.u)))
    return beta_w + beta_u.inverse()


# Juggling braid: arc diagram


@dataclass(frozen=True)
class _Crossing:
    x: Fraction
    radius: int
    strands: Tuple[int, int]


def _juggling_chains(f: AffinePermutation) -> List[List[Tuple[int, int]]]:
    """Arcs of each strand, starting at f(i) - n and following f until past n."""
    n = f.n
    starts = sorted(f(i) - n for i in range(1, n + 1) if f(i) > n)
    chains = []
    for start in starts:
        arcs = []
        x = start
        while x <= n:
            arcs.append((x, f(x)))
            x = f(x)
        chains.append(arcs)
    return chains


def juggling_braid_diagram(f: AffinePermutation, k: Optional[int] = None) -> BraidWord:
    """Read J_k(f) off the juggling diagram of upper semicircles.

    Arcs (x, f(x)) and (y, f(y)) cross iff x < y < f(x) < f(y).  Crossings are
    swept left to right with strands ranked by height (not-yet-started
    strands at the bottom, earlier starts higher); the crossing of ranks p and
    p+1 from the top is sigma_p, and the swept word is read backwards.
    """
    k = f.k if k is None else k
    require_valid(f, k)
    chains = _juggling_chains(f)
    owner: Dict[Tuple[int, int], int] = {arc: s for s, arcs in enumerate(chains) for arc in arcs}
    arcs = sorted(owner)
    crossings: List[_Crossing] = []
    for idx, (x, fx) in enumerate(arcs):
        for y, fy in arcs[idx + 1:]:
            if owner[(x, fx)] == owner[(y, fy)] or not (x < y < fx < fy):
                continue
            position = Fraction(y * fy - x * fx, y + fy - x - fx)
            crossings.append(_Crossing(position, max(fx - x, fy - y), (owner[(x, fx)], owner[(y, fy)])))
    crossings.sort(key=lambda c: (c.x, c.radius))
    order = list(range(len(chains)))
    swept: List[int] = []
    for crossing in crossings:
        p, q = sorted(order.index(s) for s in crossing.strands)
        if q != p + 1:
            raise PositroidBraidsError(f"non-adjacent crossing at x={crossing.x} in the juggling diagram")
        order[p], order[q] = order[q], order[p]
        swept.append(p + 1)
    _LOGGER.debug(f"juggling diagram of {f}: {len(chains)} strands, {len(crossings)} crossings")
    return BraidWord(_k_strands(k), tuple(reversed(swept)))


# Juggling braid: interval prepending


def _prepend_intervals(f: AffinePermutation, k: int, restrict_to_window: bool) -> BraidWord:
    n = f.n
    a = sorted(f(i) - n for i in range(1, n + 1) if f(i) > n)
    letters: List[int] = []
    while any(x <= n for x in a):
        i0 = min((idx for idx in range(k) if a[idx] <= n), key=lambda idx: f(a[idx]))
        target = f(a[i0])
        j0 = max(
            idx for idx in range(k)
            if a[idx] <= target and (a[idx] <= n or not restrict_to_window)
        )
        # 1-based interval sigma_{j0-1} ... sigma_{i0}
        letters = list(range(j0, i0, -1)) + letters
        a = sorted(a[:i0] + a[i0 + 1:] + [target])
    return BraidWord(_k_strands(k), tuple(letters))


def juggling_braid_algorithm(f: AffinePermutation, k: Optional[int] = None) -> BraidWord:
    """J_k(f) by repeatedly prepending interval braids."""
    k = f.k if k is None else k
    require_valid(f, k)
    return _prepend_intervals(f, k, restrict_to_window=True)


def juggling_braid_delta(f: AffinePermutation, k: Optional[int] = None) -> BraidWord:
    """A positive word for J_k(f) Delta_k from the unrestricted prepending."""
    k = f.k if k is None else k
    require_valid(f, k)
    return _prepend_intervals(f, k, restrict_to_window=False)


# Juggling braid: braid group action


@dataclass(frozen=True)
class ActionState:
    """Pairs (a_p, b_p) labelled by a left (n-k)-Grassmannian permutation."""

    n: int
    k: int
    a: Tuple[int, ...]
    b: Tuple[int, ...]
    labels: Tuple[int, ...]

    @property
    def left_size(self) -> int:
        return self.n - self.k

    def position(self, label: int) -> int:
        return self.labels.index(label)

    def apply(self, i: int) -> "ActionState":
        """Action of sigma_i."""
        a, b, labels = list(self.a), list(self.b), list(self.labels)
        j, jj = self.position(i), self.position(i + 1)
        left_j, left_jj = j < self.left_size, jj < self.left_size
        if left_j == left_jj:
            if jj != j + 1:
                raise PositroidBraidsError(f"labels {i}, {i + 1} are not adjacent in {self.labels}")
            if left_j:
                a[j], b[j], a[jj], b[jj] = a[jj] + 1, b[jj], a[j], b[j]
            else:
                a[j], b[j], a[jj], b[jj] = a[jj] + 1, b[j], a[j], b[jj]
        else:
            if jj < j:
                b[jj] -= 1
            labels[j], labels[jj] = i + 1, i
        return ActionState(self.n, self.k, tuple(a), tuple(b), tuple(labels))

    def factors(self) -> List[List[int]]:
        """Interval factors sigma_[a_p, b_p] for p = n, ..., 1."""
        return [
            interval_letters(self.a[p], self.b[p]) if 0 < self.a[p] <= self.b[p] else []
            for p in range(self.n - 1, -1, -1)
        ]

    def word(self) -> BraidWord:
        return BraidWord(_k_strands(self.k), tuple(x for factor in self.factors() for x in factor))

    def __str__(self) -> str:
        return " ".join(f"({a},{b})_{w}" for a, b, w in zip(self.a, self.b, self.labels))


def initial_action_state(shape: Sequence[int], k: int, n: int) -> ActionState:
    """The state x_lambda whose braid is J_k(1, w_lambda)."""
    heights = conjugate_partition(shape)
    heights = heights + [0] * (n - k - len(heights))
    a = [k - h + 1 for h in heights] + [1] * k
    b = [k - 1] * (n - k) + [k - i for i in range(1, k + 1)]
    labels = list(range(k + 1, n + 1)) + list(range(1, k + 1))
    return ActionState(n, k, tuple(a), tuple(b), tuple(labels))


def action_state(pair: PositroidPair) -> ActionState:
    """A positive lift of u^{-1} acts on x_lambda from the left, last letter first."""
    require_valid(pair)
    shape = partition_of_grassmannian(pair.w, pair.k)
    state = initial_action_state(shape, pair.k, pair.n)
    for i in reversed(pair.u.inverse().reduced_word()):
        state = state.apply(i)
    return state


def juggling_braid_action(pair: PositroidPair) -> BraidWord:
    return action_state(pair).word()


@dataclass(frozen=True)
class JugglingDecomposition:
    word: BraidWord
    split: int
    first: BraidWord
    second: BraidWord


def juggling_split(state: ActionState) -> JugglingDecomposition:
    """J = J2 J1 with J1 the factors of the first n-k positions."""
    factors = state.factors()
    strands = _k_strands(state.k)
    second = [x for factor in factors[: state.k] for x in factor]
    first = [x for factor in factors[state.k:] for x in factor]
    return JugglingDecomposition(
        BraidWord(strands, tuple(second + first)), len(second),
        BraidWord(strands, tuple(first)), BraidWord(strands, tuple(second)),
    )


def script_j(pair: PositroidPair) -> BraidWord:
    """J1 Delta_k^{-1} J2, a conjugate of J_k(u, w) Delta_k^{-1}."""
    parts = juggling_split(action_state(pair))
    return parts.first + half_twist(parts.first.strands).inverse() + parts.second


# Matrix braid


def matrix_braid(r: CyclicRankMatrix) -> BraidWord:
    """Crossings of the rank grid, rows i = n..1 and columns j = i+n..i+1.

    A crossing sits at (i, j) when r[i,j] = r[i,j-1] + 1, r[i,j-1] = r[i+1,j]
    and r[i+1,j-1] = r[i,j-1] - 1; its letter is sigma_{r[i,j-1]}.
    """
    require_valid(r)
    letters: List[int] = []
    for i in range(r.n, 0, -1):
        for j in range(i + r.n, i, -1):
            top_left = r(i, j - 1)
            if r(i, j) == top_left + 1 and r(i + 1, j) == top_left and r(i + 1, j - 1) == top_left - 1:
                letters.append(top_left)
    return BraidWord(_k_strands(r.k), tuple(letters))


# Le braid


def column_tangle(dots: Sequence[int], k: int) -> List[int]:
    """Letters of the tangle of a column whose dotted rows are ``dots``.

    Each non-minimal dot strand first drops to just above the previous dot,
    passing over the undotted rows (sigma_{k+1-r}^{-1}); then the strand from
    the lowest dot rises over everything to the highest dot (sigma_{k-r}).
    """
    rows = sorted(dots)
    if len(rows) < 1:
        return []
    letters: List[int] = []
    for idx in range(len(rows) - 1, 0, -1):
        for level in range(rows[idx], rows[idx - 1] + 1, -1):
            letters.append(-(k + 1 - level))
    letters.extend(k - level for level in range(rows[0], rows[-1]))
    return letters


def le_braid(diagram: LeDiagram) -> BraidWord:
    """Column tangles concatenated from the rightmost column to the leftmost."""
    require_valid(diagram)
    letters: List[int] = []
    for j in range(diagram.columns, 0, -1):
        letters.extend(column_tangle(diagram.column_dots(j), diagram.k))
    return BraidWord(_k_strands(diagram.k), tuple(letters))


# Counting and families


def juggling_length(pair: PositroidPair) -> int:
    """l(w) + C(k,2) - l(u) - (n-k) + s with s the fixed points of f."""
    f = pair_to_affine(pair)
    s = len(f.fixed_points())
    return pair.w.length() + comb(pair.k, 2) - pair.u.length() - (pair.n - pair.k) + s


def reverse_family(partition: Sequence[int], k: int) -> BraidWord:
    """(s_{k-1}...s_{k-l_d}) ... (s_{k-1}...s_{k-l_1}) for l_1 >= ... >= l_d."""
    parts = list(partition)
    if parts != sorted(parts, reverse=True) or any(p < 0 or p > k - 1 for p in parts):
        raise InvalidDatumError([f"{parts} is not a partition with parts at most {k - 1}"])
    letters: List[int] = []
    for part in reversed(parts):
        letters.extend(interval_letters(k - part, k - 1))
    return BraidWord(_k_strands(k), tuple(letters))


def reverse_family_permutation(partition: Sequence[int], k: int) -> Permutation:
    """The k-Grassmannian w in S_{k+d} whose J_k(1, w) is Delta_k times the family word."""
    d = len(partition)
    heights = [p + 1 for p in partition]
    return grassmannian_from_partition(conjugate_partition(heights), k, k + d)


def twist_family(exponents: Sequence[int], s: int, k: int) -> BraidWord:
    """FT_2^{a_2} ... FT_k^{a_k} (s_{k-1} ... s_1)^s with FT_i the full twist on the last i strands."""
    if len(exponents) != max(k - 1, 0):
        raise InvalidDatumError([f"expected {k - 1} exponents a_2..a_k, got {len(exponents)}"])
    letters: List[int] = []
    for i, exponent in enumerate(exponents, start=2):
        letters.extend(interval_letters(k - i + 1, k - 1) * (i * exponent))
    letters.extend(interval_letters(1, k - 1) * s)
    return BraidWord(_k_strands(k), tuple(letters))


# Dispatch by kind


def braid_of_kind(kind: str, pair: PositroidPair) -> BraidWord:
    if kind == "richardson":
        return richardson_braid(pair)
    f = pair_to_affine(pair)
    if kind == "juggling":
        return juggling_braid_diagram(f, pair.k)
    if kind == "juggling-algorithm":
        return juggling_braid_algorithm(f, pair.k)
    if kind == "juggling-delta":
        return juggling_braid_delta(f, pair.k)
    if kind == "juggling-action":
        return juggling_braid_action(pair)
    if kind == "matrix":
        return matrix_braid(affine_to_rank(f, pair.k))
    if kind == "le":
        return le_braid(pair_to_le(pair))
    if kind == "script-j":
        return script_j(pair)
    raise InvalidDatumError([f"unknown braid kind {kind!r}"])
