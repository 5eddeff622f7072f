"""Braid words, permutations and type A Coxeter combinatorics.

A braid letter is stored as a signed integer: ``i`` is the positive crossing
sigma_i and ``-i`` its inverse.  Permutations are in one-line notation and
act on positions, so right multiplication by s_i swaps the entries at
positions i and i+1.  Positions inside words are 0-based.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, List, Optional, Sequence, Tuple

from .exceptions import BraidParseError, InvalidDatumError

_LOGGER = logging.getLogger(__name__)

_HEADER_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*:(.*)$", re.S)
_LETTER_RE = re.compile(r"^s(\d+)(\^-1)?$")
_AFFINE_RE = re.compile(r"^\s*k\s*=\s*(\d+)\s+f\s*=\s*(\[.*\])\s*$")

LIFT_LEX = "lex"
LIFT_ROW = "row"
LIFT_COLUMN = "column"
LIFT_STRATEGIES = (LIFT_LEX, LIFT_ROW, LIFT_COLUMN)


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators on ``strands`` strands."""

    strands: int
    letters: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise InvalidDatumError([f"strand count must be positive, got {self.strands}"])
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        bad = [x for x in self.letters if x == 0 or abs(x) >= self.strands]
        if bad:
            raise InvalidDatumError(
                [f"generator index {abs(x)} out of range for {self.strands} strands" for x in bad]
            )

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        match = _HEADER_RE.match(text)
        if match is None:
            raise BraidParseError(f"missing 'n=<int>:' header in {text!r}")
        strands = int(match.group(1))
        letters: List[int] = []
        for token in match.group(2).split():
            token_match = _LETTER_RE.match(token)
            if token_match is None:
                raise BraidParseError(f"bad braid token {token!r}")
            index = int(token_match.group(1))
            if index < 1 or index >= strands:
                raise BraidParseError(f"generator s{index} out of range for n={strands}")
            letters.append(-index if token_match.group(2) else index)
        return cls(strands, tuple(letters))

    @classmethod
    def positive(cls, strands: int, indices: Iterable[int]) -> "BraidWord":
        return cls(strands, tuple(indices))

    def __str__(self) -> str:
        tokens = [f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters]
        return f"n={self.strands}:" + "".join(f" {t}" for t in tokens)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return BraidWord(self.strands, self.letters[item])
        return self.letters[item]

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return self.concat(other)

    def concat(self, *others: "BraidWord") -> "BraidWord":
        letters = list(self.letters)
        for other in others:
            if other.strands != self.strands:
                raise InvalidDatumError(
                    [f"cannot concatenate words on {self.strands} and {other.strands} strands"]
                )
            letters.extend(other.letters)
        return BraidWord(self.strands, tuple(letters))

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.letters)

    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def opposite(self) -> "BraidWord":
        """The word read right to left, signs kept."""
        return BraidWord(self.strands, tuple(reversed(self.letters)))

    def index_complement(self) -> "BraidWord":
        """sigma_i -> sigma_{n-i}, the conjugation action of the half twist."""
        n = self.strands
        return BraidWord(n, tuple((n - abs(x)) * (1 if x > 0 else -1) for x in self.letters))

    def with_strands(self, strands: int) -> "BraidWord":
        return BraidWord(strands, self.letters)

    def replace(self, start: int, length: int, letters: Sequence[int]) -> "BraidWord":
        return BraidWord(
            self.strands, self.letters[:start] + tuple(letters) + self.letters[start + length:]
        )

    def positive_positions(self) -> List[int]:
        return [p for p, x in enumerate(self.letters) if x > 0]

    def negative_positions(self) -> List[int]:
        return [p for p, x in enumerate(self.letters) if x < 0]

    def to_json(self) -> str:
        return str(self)


def parse_braid(text: str) -> BraidWord:
    return BraidWord.parse(text)


def render_braid(word: BraidWord) -> str:
    return str(word)


@dataclass(frozen=True)
class Permutation:
    """A permutation of 1..n in one-line notation."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InvalidDatumError([f"{list(self.images)} is not a permutation of 1..{len(self.images)}"])

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(tuple(_parse_int_list(text)))

    @classmethod
    def from_word(cls, n: int, indices: Iterable[int]) -> "Permutation":
        images = list(range(1, n + 1))
        for i in indices:
            i = abs(i)
            images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.images) + "]"

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def compose(self, other: "Permutation") -> "Permutation":
        """(self * other)(i) = self(other(i))."""
        return Permutation(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for pos, value in enumerate(self.images, start=1):
            inv[value - 1] = pos
        return Permutation(tuple(inv))

    def length(self) -> int:
        return sum(1 for a, b in combinations(self.images, 2) if a > b)

    def times_s(self, i: int) -> "Permutation":
        images = list(self.images)
        images[i - 1], images[i] = images[i], images[i - 1]
        return Permutation(tuple(images))

    def s_times(self, i: int) -> "Permutation":
        images = tuple(i + 1 if x == i else i if x == i + 1 else x for x in self.images)
        return Permutation(images)

    def right_descents(self) -> List[int]:
        return [i for i in range(1, self.n) if self.images[i - 1] > self.images[i]]

    def left_descents(self) -> List[int]:
        return self.inverse().right_descents()

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def reduced_word(self) -> List[int]:
        """Lexicographically least reduced word."""
        word: List[int] = []
        current = self
        while not current.is_identity():
            i = current.left_descents()[0]
            word.append(i)
            current = current.s_times(i)
        return word

    def cycles(self) -> List[List[int]]:
        seen = set()
        out: List[List[int]] = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = []
            x = start
            while x not in seen:
                seen.add(x)
                cycle.append(x)
                x = self(x)
            out.append(cycle)
        return out

    def cycle_type(self) -> List[int]:
        return sorted((len(c) for c in self.cycles()), reverse=True)


def _parse_int_list(text: str) -> List[int]:
    stripped = text.strip()
    if not (stripped.startswith("[") and stripped.endswith("]")):
        raise BraidParseError(f"expected a bracketed list, got {text!r}")
    body = stripped[1:-1].strip()
    if not body:
        return []
    try:
        return [int(tok) for tok in body.split(",")]
    except ValueError as err:
        raise BraidParseError(f"bad integer list {text!r}") from err


def w0(n: int) -> Permutation:
    return Permutation.longest(n)


def half_twist(n: int) -> BraidWord:
    """(s1)(s2 s1)...(s_{n-1}...s1)."""
    letters: List[int] = []
    for top in range(1, n):
        letters.extend(range(top, 0, -1))
    return BraidWord(n, tuple(letters))


def interval_letters(a: int, b: int) -> List[int]:
    """Letters of sigma_[a,b] = sigma_b ... sigma_a; empty when a > b."""
    return list(range(b, a - 1, -1))


def interval_word(a: int, b: int, n: int) -> BraidWord:
    if not 1 <= a <= b < n:
        raise InvalidDatumError([f"interval [{a},{b}] is not inside [1,{n - 1}]"])
    return BraidWord(n, tuple(interval_letters(a, b)))


def opposite(word: BraidWord) -> BraidWord:
    return word.opposite()


def coxeter_projection(word: BraidWord) -> Permutation:
    return Permutation.from_word(word.strands, word.letters)


def demazure_product(word: BraidWord) -> Permutation:
    if not word.is_positive():
        raise InvalidDatumError([f"Demazure product needs a positive word, got {word}"])
    current = Permutation.identity(word.strands)
    for i in word.letters:
        if current(i) < current(i + 1):
            current = current.times_s(i)
    return current


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Tableau criterion: sorted prefixes of u are dominated by those of w."""
    if u.n != w.n:
        raise InvalidDatumError([f"permutations of different sizes {u.n} and {w.n}"])
    for k in range(1, u.n):
        for a, b in zip(sorted(u.images[:k]), sorted(w.images[:k])):
            if a > b:
                return False
    return True


def is_k_grassmannian(w: Permutation, k: int) -> bool:
    inv = w.inverse().images
    first, second = inv[:k], inv[k:]
    return list(first) == sorted(first) and list(second) == sorted(second)


def partition_of_grassmannian(w: Permutation, k: int) -> List[int]:
    """Partition lambda with lambda_i = w^{-1}(k+1-i) - (k+1-i), zeros dropped."""
    if not is_k_grassmannian(w, k):
        raise InvalidDatumError([f"{w} is not {k}-Grassmannian"])
    inv = w.inverse()
    parts = [inv(k + 1 - i) - (k + 1 - i) for i in range(1, k + 1)]
    return [p for p in parts if p > 0]


def grassmannian_from_partition(partition: Sequence[int], k: int, n: int) -> Permutation:
    parts = list(partition) + [0] * (k - len(partition))
    if len(partition) > k or any(p > n - k for p in parts) or parts != sorted(parts, reverse=True):
        raise InvalidDatumError([f"partition {list(partition)} does not fit in a {k}x{n - k} box"])
    positions = {value: value + parts[k - value] for value in range(1, k + 1)}
    images = [0] * n
    for value, pos in positions.items():
        images[pos - 1] = value
    rest = iter(range(k + 1, n + 1))
    images = [x if x else next(rest) for x in images]
    return Permutation(tuple(images))


def max_grassmannian(k: int, n: int) -> Permutation:
    """The longest k-Grassmannian permutation w_k = [k+1..n, 1..k]."""
    return Permutation(tuple(list(range(k + 1, n + 1)) + list(range(1, k + 1))))


def conjugate_partition(partition: Sequence[int]) -> List[int]:
    if not partition:
        return []
    return [sum(1 for p in partition if p >= j) for j in range(1, partition[0] + 1)]


def _row_reading(partition: Sequence[int], k: int) -> List[int]:
    letters: List[int] = []
    for i, part in enumerate(partition, start=1):
        letters.extend(range(k - i + 1, k - i + part + 1))
    return letters


def _column_reading(partition: Sequence[int], k: int) -> List[int]:
    letters: List[int] = []
    for j, height in enumerate(conjugate_partition(partition), start=1):
        letters.extend(interval_letters(k + j - height, k + j - 1))
    return letters


def positive_lift(w: Permutation, strategy: str = LIFT_LEX, k: Optional[int] = None) -> BraidWord:
    """A reduced positive braid word projecting to ``w``.

    ``row`` and ``column`` read the Young diagram of a k-Grassmannian
    permutation; ``lex`` is the lexicographically least reduced word.
    """
    if strategy == LIFT_LEX:
        return BraidWord(w.n, tuple(w.reduced_word()))
    if strategy not in (LIFT_ROW, LIFT_COLUMN):
        raise InvalidDatumError([f"unknown lift strategy {strategy!r}"])
    if k is None or not is_k_grassmannian(w, k):
        raise InvalidDatumError([f"{strategy}-reading lift needs a k-Grassmannian permutation, got {w}"])
    partition = partition_of_grassmannian(w, k)
    reader = _row_reading if strategy == LIFT_ROW else _column_reading
    return BraidWord(w.n, tuple(reader(partition, k)))


def jump_set(word: BraidWord) -> List[int]:
    """Positions outside the rightmost reduced subword for w0."""
    if not word.is_positive():
        raise InvalidDatumError([f"jump set needs a positive word, got {word}"])
    n = word.strands
    suffix = Permutation.identity(n)
    chosen = set()
    for pos in range(len(word) - 1, -1, -1):
        i = word[pos]
        inv = suffix.inverse()
        if inv(i) < inv(i + 1):
            suffix = suffix.s_times(i)
            chosen.add(pos)
    if suffix != w0(n):
        raise InvalidDatumError([f"Demazure product of {word} is not the longest element"])
    return [p for p in range(len(word)) if p not in chosen]


def subword_lift(word: BraidWord, u: Permutation) -> List[int]:
    """Positions of the rightmost reduced subword of ``word`` spelling ``u``."""
    remaining = u
    chosen: List[int] = []
    for pos in range(len(word) - 1, -1, -1):
        i = abs(word[pos])
        if remaining(i) > remaining(i + 1):
            remaining = remaining.times_s(i)
            chosen.append(pos)
    if not remaining.is_identity():
        raise InvalidDatumError([f"{u} is not below the Demazure product of {word}"])
    return sorted(chosen)


def leftmost_subword(word: BraidWord, u: Permutation) -> List[int]:
    """Positions of the leftmost reduced subword of ``word`` spelling ``u``."""
    remaining = u
    chosen: List[int] = []
    for pos, letter in enumerate(word.letters):
        i = abs(letter)
        inv = remaining.inverse()
        if inv(i) > inv(i + 1):
            remaining = remaining.s_times(i)
            chosen.append(pos)
    if not remaining.is_identity():
        raise InvalidDatumError([f"{u} is not below the Demazure product of {word}"])
    return chosen


def all_permutations(n: int) -> List[Permutation]:
    return [Permutation(p) for p in permutations(range(1, n + 1))]


@dataclass(frozen=True)
class AffinePermutation:
    """An n-periodic bijection of the integers given by its window."""

    n: int
    window: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "window", tuple(int(x) for x in self.window))
        if len(self.window) != self.n:
            raise InvalidDatumError([f"window has {len(self.window)} entries, expected {self.n}"])
        if sorted(x % self.n for x in self.window) != list(range(self.n)):
            raise InvalidDatumError([f"window {list(self.window)} is not distinct mod {self.n}"])

    @classmethod
    def parse(cls, text: str) -> Tuple[int, "AffinePermutation"]:
        match = _AFFINE_RE.match(text)
        if match is None:
            raise BraidParseError(f"expected 'k=<int> f=[...]', got {text!r}")
        window = _parse_int_list(match.group(2))
        return int(match.group(1)), cls(len(window), tuple(window))

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    @property
    def k(self) -> int:
        total = sum(self.window) - self.n * (self.n + 1) // 2
        return total // self.n

    def is_bounded(self) -> bool:
        return all(i <= self(i) <= i + self.n for i in range(1, self.n + 1))

    def is_k_bounded(self, k: int) -> bool:
        total = sum(self(i) - i for i in range(1, self.n + 1))
        return self.is_bounded() and total == self.n * k

    def fixed_points(self) -> List[int]:
        """Positions i in [1, n] with f(i) = i."""
        return [i for i in range(1, self.n + 1) if self(i) == i]

    def full_turns(self) -> List[int]:
        """Positions i in [1, n] with f(i) = i + n."""
        return [i for i in range(1, self.n + 1) if self(i) == i + self.n]

    def inverse(self) -> "AffinePermutation":
        inv = [0] * self.n
        for i in range(1, self.n + 1):
            value = self(i)
            q, r = divmod(value - 1, self.n)
            inv[r] = i - q * self.n
        return AffinePermutation(self.n, tuple(inv))

    def render(self, k: Optional[int] = None) -> str:
        k = self.k if k is None else k
        return f"k={k} f=[" + ",".join(str(x) for x in self.window) + "]"

    def __str__(self) -> str:
        return self.render()
