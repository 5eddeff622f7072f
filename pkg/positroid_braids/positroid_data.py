"""The four combinatorial descriptions of an open positroid stratum.

Positroid pairs (u, w), k-bounded affine permutations f, cyclic rank
matrices r and Le diagrams, together with validity checks and the
bijections between them.  Le diagrams are stored in French notation: row 1
is the bottom row and the box in row i, column j carries s_{k+j-i}.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from .braid_core import (
    AffinePermutation,
    BraidWord,
    Permutation,
    all_permutations,
    bruhat_leq,
    grassmannian_from_partition,
    is_k_grassmannian,
    leftmost_subword,
    max_grassmannian,
    partition_of_grassmannian,
)
from .exceptions import BraidParseError, InvalidDatumError

_LOGGER = logging.getLogger(__name__)

Cell = Tuple[int, int]


@dataclass(frozen=True)
class PositroidPair:
    """u <= w in Bruhat order with w k-Grassmannian."""

    k: int
    n: int
    u: Permutation
    w: Permutation

    def violations(self) -> List[str]:
        found: List[str] = []
        if self.u.n != self.n or self.w.n != self.n:
            found.append(f"permutations must lie in S_{self.n}")
            return found
        if not 0 <= self.k <= self.n:
            found.append(f"k={self.k} outside [0,{self.n}]")
        if not is_k_grassmannian(self.w, self.k):
            found.append(f"w={self.w} is not {self.k}-Grassmannian")
        if not bruhat_leq(self.u, self.w):
            found.append(f"u={self.u} is not below w={self.w} in Bruhat order")
        return found

    def to_json(self) -> Dict[str, Any]:
        return {"k": self.k, "n": self.n, "u": list(self.u.images), "w": list(self.w.images)}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "PositroidPair":
        return cls(int(data["k"]), int(data["n"]), Permutation(data["u"]), Permutation(data["w"]))


def affine_violations(f: AffinePermutation, k: Optional[int] = None) -> List[str]:
    found: List[str] = []
    for i in range(1, f.n + 1):
        if f(i) < i:
            found.append(f"i <= f(i) fails at i={i}")
        if f(i) > i + f.n:
            found.append(f"f(i) <= i+n fails at i={i}")
    total = sum(f(i) - i for i in range(1, f.n + 1))
    expected_k = f.k if k is None else k
    if total != f.n * expected_k:
        found.append(f"sum of f(i)-i is {total}, expected n*k={f.n * expected_k}")
    return found


def t_k(k: int, n: int) -> AffinePermutation:
    """The translation element [1+n, ..., k+n, k+1, ..., n]."""
    return AffinePermutation(n, tuple(list(range(1 + n, k + n + 1)) + list(range(k + 1, n + 1))))


@dataclass(frozen=True)
class CyclicRankMatrix:
    """Rank array stored on the window i in [1,n], j in [i, i+n-1]."""

    k: int
    n: int
    window: Tuple[Tuple[int, ...], ...]

    def __call__(self, i: int, j: int) -> int:
        if j < i:
            # j - i + 1 below the diagonal makes fixed points f(i) = i detectable
            return j - i + 1
        if j >= i + self.n - 1:
            return self.k
        shift = (i - 1) // self.n
        i, j = i - shift * self.n, j - shift * self.n
        return self.window[i - 1][j - i]

    def violations(self) -> List[str]:
        found: List[str] = []
        if len(self.window) != self.n or any(len(row) != self.n for row in self.window):
            return [f"rank window must be {self.n}x{self.n}"]
        for i in range(1, self.n + 1):
            for j in range(i, i + self.n):
                r = self(i, j)
                if r - self(i + 1, j) not in (0, 1):
                    found.append(f"r[{i},{j}] - r[{i + 1},{j}] not in {{0,1}}")
                if r - self(i, j - 1) not in (0, 1):
                    found.append(f"r[{i},{j}] - r[{i},{j - 1}] not in {{0,1}}")
                low = self(i + 1, j - 1)
                if low == self(i + 1, j) == self(i, j - 1) and r != low:
                    found.append(f"r[{i},{j}] must equal r[{i + 1},{j - 1}]")
        return found

    def to_json(self) -> Dict[str, Any]:
        return {"k": self.k, "n": self.n, "window": [list(row) for row in self.window]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CyclicRankMatrix":
        return cls(int(data["k"]), int(data["n"]), tuple(tuple(int(x) for x in row) for row in data["window"]))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.window)


class LeCase(str, Enum):
    EMPTY_COLUMN = "EmptyColumn"
    EMPTY_ROW = "EmptyRow"
    TOP_ADJUSTED_LAST_COLUMN = "TopAdjustedLastColumn"
    EMPTY = "Empty"


@dataclass(frozen=True)
class LeDiagram:
    """A partition inside the k x (n-k) box with a set of dotted cells (row, column)."""

    k: int
    n: int
    shape: Tuple[int, ...]
    dots: FrozenSet[Cell] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        parts = [p for p in self.shape if p > 0]
        object.__setattr__(self, "shape", tuple(parts))
        object.__setattr__(self, "dots", frozenset((int(i), int(j)) for i, j in self.dots))

    def row_length(self, i: int) -> int:
        return self.shape[i - 1] if 1 <= i <= len(self.shape) else 0

    def column_height(self, j: int) -> int:
        return sum(1 for p in self.shape if p >= j)

    @property
    def columns(self) -> int:
        return self.shape[0] if self.shape else 0

    def cells(self) -> List[Cell]:
        """All cells in reading order: columns left to right, bottom to top."""
        return [(i, j) for j in range(1, self.columns + 1) for i in range(1, self.column_height(j) + 1)]

    def generator(self, cell: Cell) -> int:
        i, j = cell
        return self.k + j - i

    def column_dots(self, j: int) -> List[int]:
        return sorted(i for i, c in self.dots if c == j)

    def violations(self) -> List[str]:
        found: List[str] = []
        if len(self.shape) > self.k or any(p > self.n - self.k for p in self.shape):
            found.append(f"shape {list(self.shape)} does not fit in a {self.k}x{self.n - self.k} box")
        if list(self.shape) != sorted(self.shape, reverse=True):
            found.append(f"shape {list(self.shape)} is not a partition")
        cells = set(self.cells())
        stray = sorted(self.dots - cells)
        if stray:
            found.append(f"dots {stray} lie outside the shape")
        # hooks run north from a dot and east from a dot
        for (i1, j1), (i2, j2) in combinations(sorted(self.dots), 2):
            for (lo_i, lo_j), (hi_i, hi_j) in (((i1, j1), (i2, j2)), ((i2, j2), (i1, j1))):
                if hi_i > lo_i and hi_j < lo_j:
                    corner = (hi_i, lo_j)
                    if corner in cells and corner not in self.dots:
                        found.append(f"Le condition fails: dots at {(lo_i, lo_j)} and {(hi_i, hi_j)} need a dot at {corner}")
        return found

    def to_ascii(self) -> str:
        """One line per row with the top row first; '*' dot, '.' empty."""
        lines = []
        for i in range(self.k, 0, -1):
            lines.append("".join("*" if (i, j) in self.dots else "." for j in range(1, self.row_length(i) + 1)))
        return "\n".join(lines)

    @classmethod
    def from_ascii(cls, text: str, k: int, n: int) -> "LeDiagram":
        lines = [line.strip() for line in text.strip("\n").split("\n")] if text.strip() else []
        if len(lines) > k:
            raise BraidParseError(f"{len(lines)} rows given for k={k}")
        lines = [""] * (k - len(lines)) + lines
        shape: List[int] = []
        dots = set()
        for offset, line in enumerate(lines):
            i = k - offset
            if any(ch not in "*." for ch in line):
                raise BraidParseError(f"bad Le diagram row {line!r}")
            shape.append(len(line))
            dots.update((i, j) for j, ch in enumerate(line, start=1) if ch == "*")
        return cls(k, n, tuple(reversed(shape)), frozenset(dots))

    def to_json(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "n": self.n,
            "lambda": list(self.shape),
            "dots": [list(cell) for cell in sorted(self.dots)],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "LeDiagram":
        return cls(
            int(data["k"]), int(data["n"]), tuple(data["lambda"]),
            frozenset(tuple(cell) for cell in data["dots"]),
        )

    def remove_column(self, j: int) -> "LeDiagram":
        """Delete column j; the result lives in Gr(k, n-1)."""
        shape = tuple(p - 1 if p >= j else p for p in self.shape)
        dots = frozenset((i, c if c < j else c - 1) for i, c in self.dots if c != j)
        return LeDiagram(self.k, self.n - 1, shape, dots)

    def remove_row(self, i: int) -> "LeDiagram":
        """Delete row i; the result lives in Gr(k-1, n-1)."""
        shape = tuple(p for r, p in enumerate(self.shape, start=1) if r != i)
        dots = frozenset((r if r < i else r - 1, c) for r, c in self.dots if r != i)
        return LeDiagram(self.k - 1, self.n - 1, shape, dots)


KLSDatum = Union[PositroidPair, AffinePermutation, CyclicRankMatrix, LeDiagram]


@dataclass
class ValidationReport:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {"ok": self.ok, "violations": list(self.violations)}


def validate(datum: KLSDatum, k: Optional[int] = None) -> ValidationReport:
    """Check a KLS datum without raising."""
    if isinstance(datum, AffinePermutation):
        found = affine_violations(datum, k)
    elif isinstance(datum, (PositroidPair, CyclicRankMatrix, LeDiagram)):
        found = datum.violations()
    else:
        found = [f"unsupported datum type {type(datum).__name__}"]
    return ValidationReport(not found, found)


def require_valid(datum: KLSDatum, k: Optional[int] = None) -> KLSDatum:
    report = validate(datum, k)
    if not report.ok:
        raise InvalidDatumError(report.violations)
    return datum


def pair_to_affine(pair: PositroidPair) -> AffinePermutation:
    """f = u^{-1} t_k w in window notation."""
    require_valid(pair)
    n, k = pair.n, pair.k
    u_inv = pair.u.inverse()
    window = []
    for i in range(1, n + 1):
        value = pair.w(i)
        window.append(u_inv(value) + (n if value <= k else 0))
    return AffinePermutation(n, tuple(window))


def affine_to_pair(f: AffinePermutation, k: Optional[int] = None) -> PositroidPair:
    k = f.k if k is None else k
    require_valid(f, k)
    n = f.n
    highs = [i for i in range(1, n + 1) if f(i) > n]
    lows = [i for i in range(1, n + 1) if f(i) <= n]
    if len(highs) != k:
        raise InvalidDatumError([f"{len(highs)} values f(i) > n, expected k={k}"])
    w = Permutation(tuple(highs + lows)).inverse()
    u_inv = [0] * n
    for i in range(1, n + 1):
        value = w(i)
        u_inv[value - 1] = f(i) - (n if value <= k else 0)
    u = Permutation(tuple(u_inv)).inverse()
    return PositroidPair(k, n, u, w)


def affine_to_rank(f: AffinePermutation, k: Optional[int] = None) -> CyclicRankMatrix:
    """r_ij = #{a in [i, j] : f(a) > j}."""
    k = f.k if k is None else k
    require_valid(f, k)
    n = f.n
    window = tuple(
        tuple(sum(1 for a in range(i, j + 1) if f(a) > j) for j in range(i, i + n))
        for i in range(1, n + 1)
    )
    return CyclicRankMatrix(k, n, window)


def rank_to_affine(r: CyclicRankMatrix) -> AffinePermutation:
    require_valid(r)
    window = []
    for i in range(1, r.n + 1):
        hits = [
            j for j in range(i, i + r.n + 1)
            if r(i, j) == r(i + 1, j) == r(i, j - 1) == r(i + 1, j - 1) + 1
        ]
        if len(hits) != 1:
            raise InvalidDatumError([f"row {i} of the rank matrix determines {len(hits)} values of f"])
        window.append(hits[0])
    return AffinePermutation(r.n, tuple(window))


def column_word(shape: Sequence[int], k: int, n: int) -> BraidWord:
    """Cell generators of the shape in reading order."""
    diagram = LeDiagram(k, n, tuple(shape))
    return BraidWord(n, tuple(diagram.generator(c) for c in diagram.cells()))


def pair_to_le(pair: PositroidPair) -> LeDiagram:
    require_valid(pair)
    shape = tuple(partition_of_grassmannian(pair.w, pair.k))
    diagram = LeDiagram(pair.k, pair.n, shape)
    cells = diagram.cells()
    undotted = {cells[p] for p in leftmost_subword(column_word(shape, pair.k, pair.n), pair.u)}
    return LeDiagram(pair.k, pair.n, shape, frozenset(c for c in cells if c not in undotted))


def le_to_pair(diagram: LeDiagram) -> PositroidPair:
    require_valid(diagram)
    w = grassmannian_from_partition(diagram.shape, diagram.k, diagram.n)
    letters = [diagram.generator(c) for c in diagram.cells() if c not in diagram.dots]
    u = Permutation.from_word(diagram.n, letters)
    if u.length() != len(letters):
        raise InvalidDatumError(["undotted cells of the Le diagram do not spell a reduced word"])
    return PositroidPair(diagram.k, diagram.n, u, w)


def affine_to_le(f: AffinePermutation, k: Optional[int] = None) -> LeDiagram:
    return pair_to_le(affine_to_pair(f, k))


def le_to_affine(diagram: LeDiagram) -> AffinePermutation:
    return pair_to_affine(le_to_pair(diagram))


def le_inductive_case(diagram: LeDiagram) -> Tuple[LeCase, Optional[int]]:
    """First applicable case: empty column, empty row, top-adjusted last column."""
    require_valid(diagram)
    if not diagram.shape:
        return LeCase.EMPTY, None
    for j in range(1, diagram.columns + 1):
        if not diagram.column_dots(j):
            return LeCase.EMPTY_COLUMN, j
    for i in range(1, len(diagram.shape) + 1):
        if not any(r == i for r, _ in diagram.dots):
            return LeCase.EMPTY_ROW, i
    return LeCase.TOP_ADJUSTED_LAST_COLUMN, diagram.columns


def partitions_in_box(k: int, m: int) -> Iterator[Tuple[int, ...]]:
    """All partitions with at most k parts, each at most m."""

    def build(remaining: int, bound: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(bound, -1, -1):
            for rest in build(remaining - 1, first):
                yield (first,) + rest

    for parts in build(k, m):
        yield tuple(p for p in parts if p > 0)


def all_positroid_pairs(k: int, n: int) -> List[PositroidPair]:
    pairs: List[PositroidPair] = []
    perms = all_permutations(n)
    for shape in partitions_in_box(k, n - k):
        w = grassmannian_from_partition(shape, k, n)
        pairs.extend(PositroidPair(k, n, u, w) for u in perms if bruhat_leq(u, w))
    _LOGGER.debug(f"{len(pairs)} positroid pairs for (k, n) = ({k}, {n})")
    return pairs


def random_positroid_pair(k: int, n: int, rng: Optional[random.Random] = None) -> PositroidPair:
    """A random pair: random shape, then u from a random subword of the column word."""
    rng = rng or random.Random()
    shape = tuple(sorted((rng.randint(0, n - k) for _ in range(k)), reverse=True))
    word = column_word(shape, k, n)
    w = grassmannian_from_partition(shape, k, n)
    u = Permutation.identity(n)
    for letter in word.letters:
        if rng.random() < 0.5 and u(letter) < u(letter + 1):
            u = u.times_s(letter)
    return PositroidPair(k, n, u, w)


def max_pair(k: int, n: int) -> PositroidPair:
    return PositroidPair(k, n, Permutation.identity(n), max_grassmannian(k, n))


def parse_datum(kind: str, data: Dict[str, Any]) -> KLSDatum:
    """Build a KLS datum from its JSON form."""
    if kind == "pair":
        return PositroidPair.from_json(data)
    if kind == "affine":
        window = tuple(int(x) for x in data["f"])
        return AffinePermutation(len(window), window)
    if kind == "rank":
        return CyclicRankMatrix.from_json(data)
    if kind == "le":
        if "ascii" in data:
            return LeDiagram.from_ascii(data["ascii"], int(data["k"]), int(data["n"]))
        return LeDiagram.from_json(data)
    raise InvalidDatumError([f"unknown datum kind {kind!r}"])


def datum_to_json(datum: KLSDatum, k: Optional[int] = None) -> Dict[str, Any]:
    if isinstance(datum, AffinePermutation):
        return {"k": datum.k if k is None else k, "n": datum.n, "f": list(datum.window)}
    return datum.to_json()


def convert(datum: KLSDatum, target: str, k: Optional[int] = None) -> KLSDatum:
    """Route any datum through the positroid pair to the target kind."""
    if isinstance(datum, PositroidPair):
        pair = datum
    elif isinstance(datum, AffinePermutation):
        pair = affine_to_pair(datum, k)
    elif isinstance(datum, CyclicRankMatrix):
        pair = affine_to_pair(rank_to_affine(datum), datum.k)
    elif isinstance(datum, LeDiagram):
        pair = le_to_pair(datum)
    else:
        raise InvalidDatumError([f"unsupported datum type {type(datum).__name__}"])
    if target == "pair":
        return pair
    if target == "affine":
        return pair_to_affine(pair)
    if target == "rank":
        return affine_to_rank(pair_to_affine(pair), pair.k)
    if target == "le":
        return pair_to_le(pair)
    raise InvalidDatumError([f"unknown datum kind {target!r}"])
