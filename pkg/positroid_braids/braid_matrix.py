"""Braid matrices, their path expansions and braid variety presentations."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .braid_core import BraidWord, Permutation, half_twist
from .exceptions import InvalidDatumError
from .poly_core import Polynomial, Variable

_LOGGER = logging.getLogger(__name__)

Entry = Union[Polynomial, int]


@dataclass(frozen=True)
class BraidMatrix:
    """A square matrix of polynomials, indexed from 1 like the braid strands."""

    n: int
    entries: Tuple[Tuple[Polynomial, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Entry]]) -> "BraidMatrix":
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise InvalidDatumError(["braid matrix must be square"])
        return cls(n, tuple(tuple(Polynomial.coerce(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "BraidMatrix":
        return cls.from_rows([[1 if a == b else 0 for b in range(n)] for a in range(n)])

    @classmethod
    def permutation(cls, pi: Permutation) -> "BraidMatrix":
        """Matrix with (pi(j), j) entries equal to one."""
        rows = [[0] * pi.n for _ in range(pi.n)]
        for j in range(1, pi.n + 1):
            rows[pi(j) - 1][j - 1] = 1
        return cls.from_rows(rows)

    def __getitem__(self, index: Tuple[int, int]) -> Polynomial:
        a, b = index
        return self.entries[a - 1][b - 1]

    def __mul__(self, other: "BraidMatrix") -> "BraidMatrix":
        if other.n != self.n:
            raise InvalidDatumError([f"cannot multiply {self.n}x{self.n} by {other.n}x{other.n}"])
        rows = []
        for a in range(self.n):
            row = []
            for b in range(self.n):
                total = Polynomial()
                for c in range(self.n):
                    left = self.entries[a][c]
                    if left.is_zero():
                        continue
                    right = other.entries[c][b]
                    if not right.is_zero():
                        total = total + left * right
                row.append(total)
            rows.append(tuple(row))
        return BraidMatrix(self.n, tuple(rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BraidMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def substitute(self, bindings: Mapping[Variable, Entry]) -> "BraidMatrix":
        return BraidMatrix(
            self.n, tuple(tuple(x.substitute(bindings) for x in row) for row in self.entries)
        )

    def lower_entries(self) -> List[Tuple[Tuple[int, int], Polynomial]]:
        """Strictly lower-triangular entries, row by row."""
        return [
            ((a, b), self[a, b]) for a in range(2, self.n + 1) for b in range(1, a)
        ]

    def is_upper_triangular(self) -> bool:
        return all(p.is_zero() for _, p in self.lower_entries())

    def to_lists(self) -> List[List[str]]:
        return [[str(x) for x in row] for row in self.entries]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(row) + "]" for row in self.to_lists())


def generator_matrix(i: int, z: Entry, n: int) -> BraidMatrix:
    """B_i(z): identity outside the block [[0, 1], [1, z]] at rows i, i+1."""
    if not 1 <= i < n:
        raise InvalidDatumError([f"generator index {i} out of range for n={n}"])
    rows: List[List[Entry]] = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[i - 1][i - 1] = 0
    rows[i - 1][i] = 1
    rows[i][i - 1] = 1
    rows[i][i] = z
    return BraidMatrix.from_rows(rows)


def crossing_labels(word: BraidWord, start: int = 1) -> List[Optional[Polynomial]]:
    """z_start, z_start+1, ... on positive crossings; None on negative ones."""
    labels: List[Optional[Polynomial]] = []
    counter = start
    for letter in word.letters:
        if letter > 0:
            labels.append(Polynomial.z(counter))
            counter += 1
        else:
            labels.append(None)
    return labels


def word_matrix(
    word: BraidWord,
    labels: Optional[Sequence[Optional[Entry]]] = None,
    start: int = 1,
) -> BraidMatrix:
    """Left-to-right product of B_i(z) over the letters of ``word``.

    Positive crossings take their label (fresh z-variables by default) and
    negative crossings contribute B_i(0).
    """
    if labels is None:
        labels = crossing_labels(word, start)
    if len(labels) != len(word):
        raise InvalidDatumError([f"{len(labels)} labels for a word of length {len(word)}"])
    # Row-vector update: multiplying by B_i only touches columns i, i+1.
    rows = [[Polynomial.constant(1 if a == b else 0) for b in range(word.strands)] for a in range(word.strands)]
    for letter, label in zip(word.letters, labels):
        i = abs(letter)
        z = Polynomial.coerce(label) if letter > 0 and label is not None else Polynomial()
        for row in rows:
            left, right = row[i - 1], row[i]
            row[i - 1] = right
            row[i] = left + right * z if not z.is_zero() else left
    return BraidMatrix(word.strands, tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class Path:
    """A path through a braid word from strand ``start`` to strand ``end``.

    ``jumps`` are the positions of positive sigma_i crossings where the path
    stays on level i+1 instead of following the strand.
    """

    start: int
    end: int
    jumps: Tuple[int, ...]

    def replay(self, word: BraidWord) -> int:
        level = self.start
        for pos, letter in enumerate(word.letters):
            i = abs(letter)
            if pos in self.jumps:
                if letter < 0 or level != i + 1:
                    raise InvalidDatumError([f"illegal jump at position {pos}"])
                continue
            if level == i:
                level = i + 1
            elif level == i + 1:
                level = i
        return level


def paths_of_entry(
    word: BraidWord,
    i: int,
    j: int,
    labels: Optional[Sequence[Optional[Entry]]] = None,
) -> List[Tuple[Path, Polynomial]]:
    """One (path, monomial) pair per additive term of word_matrix(word)[i, j]."""
    if labels is None:
        labels = crossing_labels(word)
    results: List[Tuple[Path, Polynomial]] = []

    def walk(pos: int, level: int, jumps: Tuple[int, ...], monomial: Polynomial) -> None:
        if pos == len(word):
            if level == j:
                results.append((Path(i, j, jumps), monomial))
            return
        letter = word[pos]
        g = abs(letter)
        if level == g:
            walk(pos + 1, g + 1, jumps, monomial)
        elif level == g + 1:
            walk(pos + 1, g, jumps, monomial)
            label = labels[pos]
            if letter > 0 and label is not None and not Polynomial.coerce(label).is_zero():
                walk(pos + 1, g + 1, jumps + (pos,), monomial * label)
        else:
            walk(pos + 1, level, jumps, monomial)

    walk(0, i, (), Polynomial.one())
    return results


@dataclass(frozen=True)
class VarietyPresentation:
    """Affine variety cut out by polynomial equations in z-variables over Z[t^{+-1}]."""

    variables: Tuple[Variable, ...]
    equations: Tuple[Polynomial, ...]
    braid: BraidWord
    pi: Optional[Permutation] = None
    ground: Tuple[Variable, ...] = field(default_factory=tuple)
    kind: str = "upper-triangular"

    def __post_init__(self) -> None:
        declared = set(self.variables) | set(self.ground)
        stray = {
            str(v) for eq in self.equations for v in eq.variables()
            if v not in declared and not v.invertible
        }
        if stray:
            raise InvalidDatumError([f"undeclared variables {sorted(stray)}"])

    def is_visibly_empty(self) -> bool:
        return any(eq.is_constant() and not eq.is_zero() for eq in self.equations)

    def substitute(self, bindings: Mapping[Variable, Entry]) -> "VarietyPresentation":
        remaining = tuple(v for v in self.variables if v not in bindings)
        ground = tuple(v for v in self.ground if v not in bindings)
        equations = tuple(
            eq for eq in (e.substitute(bindings) for e in self.equations) if not eq.is_zero()
        )
        return VarietyPresentation(remaining, equations, self.braid, self.pi, ground, self.kind)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "vars": [str(v) for v in self.variables],
            "equations": [str(eq) for eq in self.equations],
            "braid": str(self.braid),
            "pi": str(self.pi) if self.pi is not None else None,
        }
        if self.ground:
            data["ground"] = [str(v) for v in self.ground]
        return data


def variety_upper_triangular(word: BraidWord, pi: Permutation) -> VarietyPresentation:
    """X(word; pi): strictly lower entries of B_word * pi must vanish."""
    if not word.is_positive():
        raise InvalidDatumError([f"upper-triangular presentation needs a positive word, got {word}"])
    if pi.n != word.strands:
        raise InvalidDatumError([f"permutation {pi} does not act on {word.strands} strands"])
    matrix = word_matrix(word) * BraidMatrix.permutation(pi)
    equations = tuple(p for _, p in matrix.lower_entries() if not p.is_zero())
    variables = tuple(Variable.z(j) for j in range(1, len(word) + 1))
    _LOGGER.debug(f"X({word}; {pi}): {len(variables)} variables, {len(equations)} equations")
    return VarietyPresentation(variables, equations, word, pi)


def variety_braid_pair(eta: BraidWord) -> VarietyPresentation:
    """X(eta): B_{eta Delta} + diag(t) = 0 with fresh z-variables on the padding."""
    beta = eta + half_twist(eta.strands)
    matrix = word_matrix(beta)
    equations: List[Polynomial] = []
    for a in range(1, beta.strands + 1):
        for b in range(1, beta.strands + 1):
            entry = matrix[a, b] + (Polynomial.t(a) if a == b else 0)
            if not entry.is_zero():
                equations.append(entry)
    count = len(beta.positive_positions())
    variables = tuple(Variable.z(j) for j in range(1, count + 1))
    ground = tuple(Variable.t(a) for a in range(1, beta.strands + 1))
    return VarietyPresentation(variables, tuple(equations), eta, None, ground, kind="braid-pair")
