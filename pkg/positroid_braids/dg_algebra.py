"""The braid DG-algebra of eta * Delta and the braid pair (X(eta), V(eta)).

Differentials of the z-generators are read off by pushing an elementary
nilpotent matrix away from each negative crossing. Going left from a
negative crossing sigma_i^{-1} we start from E_{i,i+1}; going right we start
from -E_{i+1,i}. Every positive crossing B_a(z) absorbs the entry sitting in
its own slot ((a, a+1) going left, (a+1, a) going right) as a coefficient of
d/dz and conjugates the rest past itself. The absorbed coefficients are the
region counts E(...) of the construction. Whatever is left over at the two
ends of the word travels around the closure: it is conjugated by the diagonal
T, pushed through beta once more and fed back until it reaches a fixed point.
The leftovers then become the matrix coefficients of the Sh-terms, so that
d^2 y = 0 holds to first order in the w-generators.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from .braid_core import BraidWord, coxeter_projection, half_twist
from .braid_matrix import (
    BraidMatrix,
    Path,
    VarietyPresentation,
    crossing_labels,
    paths_of_entry,
    variety_braid_pair,
    word_matrix,
)
from .const import DEFAULT_SET_T, SET_T_PM1, SET_T_SYMBOLIC
from .exceptions import InvalidDatumError, SliceNotFoundError
from .poly_core import Family, Polynomial, PolyLike, Variable

_LOGGER = logging.getLogger(__name__)

KIND_Y = "y"
KIND_W = "w"
SIDE_LEFT = "left"
SIDE_RIGHT = "right"

_LABEL_RE = re.compile(r"^([zw])(\d+)$")


# ---------------------------------------------------------------------------
# sub-words between crossings


def crossing_position(beta: BraidWord, label: str) -> int:
    """Position in ``beta`` of the crossing called ``z<j>`` or ``w<k>``."""
    match = _LABEL_RE.match(label)
    if match is None:
        raise InvalidDatumError([f"bad crossing label {label!r}"])
    kind, index = match.group(1), int(match.group(2))
    positions = beta.positive_positions() if kind == "z" else beta.negative_positions()
    if not 1 <= index <= len(positions):
        raise InvalidDatumError([f"{label} does not exist in {beta}"])
    return positions[index - 1]


def _ordered_positions(beta: BraidWord, x: str, y: str) -> Tuple[int, int]:
    first, second = crossing_position(beta, x), crossing_position(beta, y)
    if first == second:
        raise InvalidDatumError([f"{x} and {y} are the same crossing"])
    return min(first, second), max(first, second)


def between_word(beta: BraidWord, x: str, y: str) -> BraidWord:
    """The subword strictly between the two crossings."""
    lo, hi = _ordered_positions(beta, x, y)
    return beta[lo + 1:hi]


def complement_word(beta: BraidWord, x: str, y: str) -> BraidWord:
    """Read cyclically from just right of the rightmost crossing to just left of the other."""
    lo, hi = _ordered_positions(beta, x, y)
    return beta[hi + 1:] + beta[:lo]


def dotted(word: BraidWord) -> BraidWord:
    """Opposite word with every index reflected, signs kept."""
    return word.opposite().index_complement()


# ---------------------------------------------------------------------------
# nilpotent pushes

Sparse = Dict[Tuple[int, int], Polynomial]


def _add_entry(m: Sparse, key: Tuple[int, int], value: Polynomial) -> None:
    total = m.get(key, Polynomial()) + value
    if total.is_zero():
        m.pop(key, None)
    else:
        m[key] = total


def _row_add(m: Sparse, target: int, source: int, c: Polynomial) -> None:
    for (r, col), value in list(m.items()):
        if r == source:
            _add_entry(m, (target, col), value * c)


def _col_add(m: Sparse, target: int, source: int, c: Polynomial) -> None:
    for (r, col), value in list(m.items()):
        if col == source:
            _add_entry(m, (r, target), value * c)


def _swap(m: Sparse, a: int, b: int) -> Sparse:
    def s(x: int) -> int:
        return b if x == a else a if x == b else x

    return {(s(r), s(c)): v for (r, c), v in m.items()}


def _step_left(m: Sparse, letter: int, label: Optional[Polynomial]) -> Tuple[Polynomial, Sparse]:
    """B N = h dB + N' B for B = B_a(z); returns (h, N')."""
    a = abs(letter)
    h = Polynomial()
    m = dict(m)
    if letter > 0:
        h = m.pop((a, a + 1), Polynomial())
        c = Polynomial.coerce(label) if label is not None else Polynomial()
        if not c.is_zero():
            _row_add(m, a, a + 1, c)
            _col_add(m, a + 1, a, -c)
    return h, _swap(m, a, a + 1)


def _step_right(m: Sparse, letter: int, label: Optional[Polynomial]) -> Tuple[Polynomial, Sparse]:
    """N B = h dB + B N' for B = B_a(z); returns (h, N')."""
    a = abs(letter)
    h = Polynomial()
    m = dict(m)
    if letter > 0:
        h = m.pop((a + 1, a), Polynomial())
        c = Polynomial.coerce(label) if label is not None else Polynomial()
        if not c.is_zero():
            _row_add(m, a + 1, a, -c)
            _col_add(m, a, a + 1, c)
    return h, _swap(m, a, a + 1)


def push_left(
    word: BraidWord,
    start: Sparse,
    labels: Optional[Sequence[Optional[Polynomial]]] = None,
    offset: int = 0,
) -> Tuple[Dict[int, Polynomial], Sparse]:
    """Push ``start`` from the right end of ``word`` to its left end.

    Returns the coefficients absorbed by positive crossings, keyed by
    position plus ``offset``, and what is left over at the left end.
    """
    if labels is None:
        labels = crossing_labels(word)
    absorbed: Dict[int, Polynomial] = {}
    current = {k: v for k, v in start.items() if not v.is_zero()}
    for pos in range(len(word) - 1, -1, -1):
        h, current = _step_left(current, word[pos], labels[pos])
        if not h.is_zero():
            absorbed[pos + offset] = h
    return absorbed, current


def push_right(
    word: BraidWord,
    start: Sparse,
    labels: Optional[Sequence[Optional[Polynomial]]] = None,
    offset: int = 0,
) -> Tuple[Dict[int, Polynomial], Sparse]:
    """Mirror image of :func:`push_left`, from the left end to the right end."""
    if labels is None:
        labels = crossing_labels(word)
    absorbed: Dict[int, Polynomial] = {}
    current = {k: v for k, v in start.items() if not v.is_zero()}
    for pos in range(len(word)):
        h, current = _step_right(current, word[pos], labels[pos])
        if not h.is_zero():
            absorbed[pos + offset] = h
    return absorbed, current


def _check_strand(n: int, *indices: int) -> None:
    bad = [i for i in indices if not 1 <= i <= n]
    if bad:
        raise InvalidDatumError([f"strand index {i} out of range for n={n}" for i in bad])


def region_coefficient(
    word: BraidWord,
    i1u: int,
    i1l: int,
    i2u: int,
    i2l: int,
    side: str = SIDE_LEFT,
) -> Polynomial:
    """E(B(word); i1u, i1l, i2u, i2l) with the word's own z-labels.

    ``side="left"`` counts regions leaving the right end on strands (i2l, i2u)
    and closing at the left end on (i1l, i1u); ``side="right"`` reads the
    same regions in the other direction.
    """
    _check_strand(word.strands, i1u, i1l, i2u, i2l)
    if side == SIDE_LEFT:
        _, rest = push_left(word, {(i2l, i2u): Polynomial.one()})
        return rest.get((i1l, i1u), Polynomial())
    if side == SIDE_RIGHT:
        _, rest = push_right(word, {(i1u, i1l): Polynomial.one()})
        return rest.get((i2u, i2l), Polynomial())
    raise InvalidDatumError([f"unknown side {side!r}"])


@dataclass(frozen=True)
class RegionCandidate:
    """A lower path of B(word) paired with an upper path of B(dotted word)."""

    lower: Path
    upper: Path
    monomial: Polynomial
    accepted: bool


def region_candidates(
    word: BraidWord,
    i1u: int,
    i1l: int,
    i2u: int,
    i2l: int,
) -> List[RegionCandidate]:
    n = word.strands
    coefficient = region_coefficient(word, i1u, i1l, i2u, i2l)
    support = {mono for mono, _ in coefficient}
    labels = crossing_labels(word)
    lowers = paths_of_entry(word, i1l, i2l, labels)
    uppers = paths_of_entry(dotted(word), n - i1u + 1, n - i2u + 1, list(reversed(labels)))
    out: List[RegionCandidate] = []
    for lower, low_mono in lowers:
        for upper, up_mono in uppers:
            product = low_mono * up_mono
            mono = next(iter(product))[0]
            out.append(RegionCandidate(lower, upper, product, mono in support))
    return out


# ---------------------------------------------------------------------------
# graded-commutative elements


class OddGenerator(NamedTuple):
    kind: str
    index: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return 1 if self.kind == KIND_Y else -1

    def __str__(self) -> str:
        sep = "," if any(i >= 10 for i in self.index) else ""
        return self.kind + sep.join(str(i) for i in self.index)


OddMonomial = Tuple[OddGenerator, ...]


def y_gen(l: int, m: int) -> OddGenerator:
    return OddGenerator(KIND_Y, (l, m))


def w_gen(k: int) -> OddGenerator:
    return OddGenerator(KIND_W, (k,))


def _merge(left: OddMonomial, right: OddMonomial) -> Tuple[int, OddMonomial]:
    if set(left) & set(right):
        return 0, ()
    seq = list(left + right)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(seq)


class GradedElement:
    """Element of the algebra on odd y, w and even z, with polynomial coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[OddMonomial, PolyLike]] = None) -> None:
        self._terms: Dict[OddMonomial, Polynomial] = {}
        for mono, coeff in (terms or {}).items():
            p = Polynomial.coerce(coeff)
            if not p.is_zero():
                self._terms[tuple(mono)] = p

    @classmethod
    def scalar(cls, value: PolyLike) -> "GradedElement":
        return cls({(): value})

    @classmethod
    def generator(cls, gen: OddGenerator) -> "GradedElement":
        return cls({(gen,): 1})

    @classmethod
    def monomial(cls, mono: OddMonomial) -> "GradedElement":
        return cls({mono: 1})

    def terms(self) -> List[Tuple[OddMonomial, Polynomial]]:
        return sorted(self._terms.items(), key=lambda item: item[0])

    def coefficient(self, mono: Sequence[OddGenerator]) -> Polynomial:
        return self._terms.get(tuple(mono), Polynomial())

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> List[int]:
        return sorted({sum(g.degree for g in mono) for mono in self._terms})

    def generators(self) -> List[str]:
        names = set()
        for mono, coeff in self._terms.items():
            names.update(str(g) for g in mono)
            names.update(str(v) for v in coeff.variables() if v.family is Family.Z)
        return sorted(names)

    def __add__(self, other: "GradedElement") -> "GradedElement":
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            out[mono] = out.get(mono, Polynomial()) + coeff
        return GradedElement(out)

    def __neg__(self) -> "GradedElement":
        return GradedElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def __mul__(self, other: Union["GradedElement", PolyLike]) -> "GradedElement":
        if not isinstance(other, GradedElement):
            p = Polynomial.coerce(other)
            return GradedElement({m: c * p for m, c in self._terms.items()})
        out: Dict[OddMonomial, Polynomial] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                sign, mono = _merge(m1, m2)
                if sign:
                    out[mono] = out.get(mono, Polynomial()) + c1 * c2 * sign
        return GradedElement(out)

    def substitute(self, bindings: Mapping[Variable, PolyLike]) -> "GradedElement":
        return GradedElement({m: c.substitute(bindings) for m, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Polynomial, int)):
            other = GradedElement.scalar(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self._terms == other._terms

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self.terms():
            if not mono:
                parts.append(str(coeff))
                continue
            gens = "*".join(str(g) for g in mono)
            if coeff == Polynomial.one():
                parts.append(gens)
            elif coeff == Polynomial.constant(-1):
                parts.append(f"-{gens}")
            else:
                parts.append(f"({coeff})*{gens}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"GradedElement({self})"


# ---------------------------------------------------------------------------
# the algebra


def t_specialization(beta: BraidWord) -> Dict[int, int]:
    """t_l = -1 on the smallest strand of each closure component, +1 elsewhere."""
    values: Dict[int, int] = {}
    for cycle in coxeter_projection(beta).cycles():
        for strand in cycle:
            values[strand] = -1 if strand == min(cycle) else 1
    return values


@dataclass(frozen=True)
class Derivation:
    """V(w_k) = sum_j c_j d/dz_j."""

    w_index: int
    coefficients: Mapping[int, Polynomial]

    def apply(self, p: Polynomial) -> Polynomial:
        total = Polynomial()
        for j, c in self.coefficients.items():
            d = p.partial(Variable.z(j))
            if not d.is_zero():
                total = total + c * d
        return total

    def __call__(self, p: Polynomial) -> Polynomial:
        return self.apply(p)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for j in sorted(self.coefficients):
            c = self.coefficients[j]
            if c == Polynomial.one():
                parts.append(f"d/dz{j}")
            elif c == Polynomial.constant(-1):
                parts.append(f"-d/dz{j}")
            else:
                parts.append(f"({c})*d/dz{j}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass
class DerivationSet:
    eta: BraidWord
    derivations: List[Derivation] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.derivations)

    def __iter__(self):
        return iter(self.derivations)

    def __getitem__(self, k: int) -> Derivation:
        """The derivation attached to w_k (1-based)."""
        return self.derivations[k - 1]

    def commutator(self, a: int, b: int) -> Dict[int, Polynomial]:
        """Coefficients of [V(w_a), V(w_b)]; empty when they commute."""
        first, second = self[a], self[b]
        out: Dict[int, Polynomial] = {}
        for j in set(first.coefficients) | set(second.coefficients):
            value = first.apply(second.coefficients.get(j, Polynomial())) - second.apply(
                first.coefficients.get(j, Polynomial())
            )
            if not value.is_zero():
                out[j] = value
        return out

    def commute(self) -> bool:
        k = len(self)
        return all(not self.commutator(a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1))

    def violations(self, equations: Iterable[Polynomial]) -> List[Tuple[int, int]]:
        """(k, equation index) pairs where V(w_k) does not kill the equation."""
        equations = list(equations)
        return [
            (v.w_index, e)
            for v in self.derivations
            for e, eq in enumerate(equations)
            if not v.apply(eq).is_zero()
        ]

    def to_json(self) -> Dict[str, str]:
        return {f"w{v.w_index}": str(v) for v in self.derivations}


@dataclass
class _NegativeCrossing:
    """Push data for one w_k."""

    position: int
    index: int
    coefficients: Dict[int, Polynomial]
    left: Sparse
    right: Sparse
    residual: Sparse


def _diagonal_conjugate(m: Sparse, t: Mapping[int, Polynomial], t_inv: Mapping[int, Polynomial]) -> Sparse:
    """T^{-1} M T."""
    return {(r, c): t_inv[r] * v * t[c] for (r, c), v in m.items()}


def _closure_defect(
    left: Sparse, right: Sparse, wrapped: Sparse, leftover: Sparse, t: Mapping[int, Polynomial]
) -> Sparse:
    """L T + T R + Phi(X) T - T X, zero once the wrap is consistent."""
    defect: Sparse = {}
    for (r, c), v in left.items():
        _add_entry(defect, (r, c), v * t[c])
    for (r, c), v in right.items():
        _add_entry(defect, (r, c), t[r] * v)
    for (r, c), v in leftover.items():
        _add_entry(defect, (r, c), v * t[c])
    for (r, c), v in wrapped.items():
        _add_entry(defect, (r, c), -(t[r] * v))
    return defect


def _negative_crossing(
    beta: BraidWord,
    labels: Sequence[Optional[Polynomial]],
    position: int,
    t: Mapping[int, Polynomial],
    t_inv: Mapping[int, Polynomial],
) -> _NegativeCrossing:
    i = abs(beta[position])
    left_coeffs, left = push_left(beta[:position], {(i, i + 1): Polynomial.one()}, labels[:position])
    right_coeffs, right = push_right(
        beta[position + 1:], {(i + 1, i): Polynomial.constant(-1)}, labels[position + 1:], position + 1
    )
    coefficients = dict(left_coeffs)
    for pos, c in right_coeffs.items():
        coefficients[pos] = coefficients.get(pos, Polynomial()) + c

    # Both leftovers travel around the closure and re-enter at the right end:
    # X = T^{-1} L T + R + T^{-1} Phi(X) T, with Phi the push through all of beta.
    source = _diagonal_conjugate(left, t, t_inv)
    for key, v in right.items():
        _add_entry(source, key, v)
    wrapped = dict(source)
    extra, leftover = push_left(beta, wrapped, labels)
    for _ in range(beta.strands ** 2):
        update = dict(source)
        for key, v in _diagonal_conjugate(leftover, t, t_inv).items():
            _add_entry(update, key, v)
        if update == wrapped:
            break
        wrapped = update
        extra, leftover = push_left(beta, wrapped, labels)
    for pos, c in extra.items():
        coefficients[pos] = coefficients.get(pos, Polynomial()) + c

    # V(B) = -A (B + T) - (B + T) C once the defect vanishes.
    sh_left = dict(left)
    for key, v in leftover.items():
        _add_entry(sh_left, key, v)
    sh_right = dict(right)
    for key, v in wrapped.items():
        _add_entry(sh_right, key, -v)
    return _NegativeCrossing(
        position=position,
        index=i,
        coefficients={pos: c for pos, c in coefficients.items() if not c.is_zero()},
        left=sh_left,
        right=sh_right,
        residual=_closure_defect(left, right, wrapped, leftover, t),
    )


@dataclass
class DGAlgebraPresentation:
    """Generators and differentials of the braid DG-algebra of beta = eta Delta."""

    eta: BraidWord
    word: BraidWord
    matrix: BraidMatrix
    t_values: Dict[int, Polynomial]
    dy: Dict[Tuple[int, int], GradedElement]
    dz: Dict[int, GradedElement]
    derivations: DerivationSet
    normalized: bool
    set_t: str = DEFAULT_SET_T

    @property
    def n(self) -> int:
        return self.word.strands

    @property
    def z_count(self) -> int:
        return len(self.dz)

    @property
    def w_count(self) -> int:
        return len(self.derivations)

    def generators(self) -> List[Tuple[str, int]]:
        out = [(str(y_gen(l, m)), 1) for l in range(1, self.n + 1) for m in range(1, self.n + 1)]
        out += [(f"z{j}", 0) for j in range(1, self.z_count + 1)]
        out += [(str(w_gen(k)), -1) for k in range(1, self.w_count + 1)]
        return out

    def differential(self, name: str) -> GradedElement:
        if name.startswith("z"):
            return self.dz[int(name[1:])]
        if name.startswith("w"):
            return GradedElement()
        for (l, m), value in self.dy.items():
            if str(y_gen(l, m)) == name:
                return value
        raise InvalidDatumError([f"unknown generator {name!r}"])

    def _d_odd(self, gen: OddGenerator) -> GradedElement:
        if gen.kind == KIND_W:
            return GradedElement()
        return self.dy[(gen.index[0], gen.index[1])]

    def d(self, element: GradedElement) -> GradedElement:
        """Apply the differential with the graded Leibniz rule."""
        total = GradedElement()
        for mono, coeff in element.terms():
            rest = GradedElement.monomial(mono)
            for var in coeff.variables():
                if var.family is Family.Z and var.index in self.dz:
                    total = total + self.dz[var.index] * coeff.partial(var) * rest
            for pos, gen in enumerate(mono):
                dg = self._d_odd(gen)
                if dg.is_zero():
                    continue
                sign = -1 if pos % 2 else 1
                piece = GradedElement.monomial(mono[:pos]) * dg * GradedElement.monomial(mono[pos + 1:])
                total = total + piece * (coeff * sign)
        return total

    def d_squared(self) -> List[str]:
        """Generators on which d(d(x)) does not vanish."""
        failures = [name for name, _ in self.generators() if not self.d(self.differential(name)).is_zero()]
        if failures:
            _LOGGER.warning(f"d^2 != 0 on {failures} for {self.word}")
        return failures

    def filtration(self, name: str) -> int:
        """0 < h(w_k) < h(z_j) < h(y_lm)."""
        if name.startswith("w"):
            return int(name[1:])
        if name.startswith("z"):
            return self.w_count + int(name[1:])
        return self.w_count + self.z_count + 1

    def filtration_of(self, element: GradedElement) -> int:
        names = element.generators()
        return max((self.filtration(x) for x in names), default=0)

    def sha(self, l: int, m: int) -> GradedElement:
        """The part of d y_lm that involves y-generators."""
        return GradedElement(
            {mono: c for mono, c in self.dy[(l, m)].terms() if any(g.kind == KIND_Y for g in mono)}
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "eta": str(self.eta),
            "word": str(self.word),
            "generators": [{"name": name, "degree": deg} for name, deg in self.generators()],
            "differentials": {
                name: str(self.differential(name)) for name, deg in self.generators() if deg >= 0
            },
            "derivations": self.derivations.to_json(),
            "normalized": self.normalized,
            "t": self.set_t if self.set_t == SET_T_SYMBOLIC else {
                f"t{l}": str(v) for l, v in sorted(self.t_values.items())
            },
        }


def _t_values(beta: BraidWord, set_t: str) -> Tuple[Dict[int, Polynomial], Dict[int, Polynomial]]:
    n = beta.strands
    if set_t == SET_T_SYMBOLIC:
        return (
            {l: Polynomial.t(l) for l in range(1, n + 1)},
            {l: Polynomial.t(l, -1) for l in range(1, n + 1)},
        )
    if set_t == SET_T_PM1:
        signs = t_specialization(beta)
        values = {l: Polynomial.constant(signs[l]) for l in range(1, n + 1)}
        return values, dict(values)
    raise InvalidDatumError([f"unknown t mode {set_t!r}"])


def build_dga(eta: BraidWord, set_t: str = DEFAULT_SET_T, verify: bool = False) -> DGAlgebraPresentation:
    """The DG-algebra of beta = eta * Delta_n.

    ``eta`` is expected to be equivalent to a positive braid; nothing here
    certifies that. With ``verify`` the presentation is checked for
    d^2 = 0 and the result logged.
    """
    n = eta.strands
    beta = eta + half_twist(n)
    labels = crossing_labels(beta)
    matrix = word_matrix(beta, labels)
    t, t_inv = _t_values(beta, set_t)
    z_of = {pos: j for j, pos in enumerate(beta.positive_positions(), 1)}

    crossings = [_negative_crossing(beta, labels, pos, t, t_inv) for pos in beta.negative_positions()]
    normalized = all(not c.residual for c in crossings)
    if not normalized:
        _LOGGER.warning(f"Sh-terms of {beta} are not normalized; d^2 may not vanish")

    derivations = DerivationSet(eta)
    dz: Dict[int, GradedElement] = {j: GradedElement() for j in z_of.values()}
    for k, crossing in enumerate(crossings, 1):
        coefficients = {z_of[pos]: c for pos, c in crossing.coefficients.items()}
        derivations.derivations.append(Derivation(k, coefficients))
        for j, c in coefficients.items():
            dz[j] = dz[j] + GradedElement.generator(w_gen(k)) * c

    dy: Dict[Tuple[int, int], GradedElement] = {}
    for l in range(1, n + 1):
        for m in range(1, n + 1):
            value = matrix[l, m] + (t[l] if l == m else 0)
            element = GradedElement.scalar(value)
            for k, crossing in enumerate(crossings, 1):
                w = GradedElement.generator(w_gen(k))
                for (r, p), v in crossing.left.items():
                    if r == l:
                        element = element + GradedElement.generator(y_gen(p, m)) * w * v
                for (p, c), v in crossing.right.items():
                    if c == m:
                        element = element + GradedElement.generator(y_gen(l, p)) * w * v
            dy[(l, m)] = element

    presentation = DGAlgebraPresentation(
        eta=eta,
        word=beta,
        matrix=matrix,
        t_values=t,
        dy=dy,
        dz=dz,
        derivations=derivations,
        normalized=normalized,
        set_t=set_t,
    )
    _LOGGER.info(
        f"DGA of {beta}: {presentation.z_count} z-generators, {presentation.w_count} w-generators"
    )
    if verify:
        if not presentation.d_squared():
            _LOGGER.info(f"d^2 check on {beta}: ok")
    return presentation


def sha_terms(eta: BraidWord, l: int, m: int, set_t: str = DEFAULT_SET_T) -> GradedElement:
    """Sh(y_lm) for beta = eta * Delta: the y-dependent part of d y_lm."""
    _check_strand(eta.strands, l, m)
    return build_dga(eta, set_t).sha(l, m)


def derivations(eta: BraidWord) -> DerivationSet:
    return build_dga(eta).derivations


def _compact(presentation: VarietyPresentation) -> VarietyPresentation:
    mapping = {
        old: Variable.z(j) for j, old in enumerate(presentation.variables, 1) if old.index != j
    }
    if mapping:
        _LOGGER.debug(f"renaming {', '.join(f'{a}->{b}' for a, b in mapping.items())}")
    equations = tuple(eq.rename(mapping) for eq in presentation.equations)
    variables = tuple(Variable.z(j) for j in range(1, len(presentation.variables) + 1))
    return VarietyPresentation(
        variables, equations, presentation.braid, None, presentation.ground, kind="slice-eliminated"
    )


def slice_eliminate(eta: BraidWord) -> VarietyPresentation:
    """Quotient X(eta) by the V(w_k), one slice at a time.

    For each w_k in order, the z with the smallest index whose coefficient
    in V(w_k) is a constant unit is a slice; the remaining derivations are
    made tangent to {z = 0} and the variety is cut down to it. The result is
    renamed to consecutive z-variables.
    """
    presentation = variety_braid_pair(eta)
    if eta.is_positive():
        return presentation
    dga = build_dga(eta)
    if not dga.normalized:
        raise SliceNotFoundError(f"the braid pair of {eta} carries un-normalized Sh-terms")
    fields: List[Dict[int, Polynomial]] = [dict(v.coefficients) for v in dga.derivations]
    for k in range(len(fields)):
        current = fields[k]
        slice_index = next(
            (
                j for j in sorted(current)
                if current[j].is_constant() and current[j].constant_term() in (1, -1)
            ),
            None,
        )
        if slice_index is None:
            raise SliceNotFoundError(f"V(w{k + 1}) of {eta} has no unit-coefficient slice")
        unit = current[slice_index].constant_term()
        _LOGGER.debug(f"w{k + 1}: slice z{slice_index}")
        for later in fields[k + 1:]:
            coeff = later.get(slice_index)
            if coeff is None:
                continue
            for j, c in current.items():
                value = later.get(j, Polynomial()) - coeff * c * unit
                if value.is_zero():
                    later.pop(j, None)
                else:
                    later[j] = value
        bindings = {Variable.z(slice_index): Polynomial()}
        presentation = presentation.substitute(bindings)
        for later in fields[k + 1:]:
            for j in list(later):
                value = later[j].substitute(bindings)
                if value.is_zero() or j == slice_index:
                    later.pop(j)
                else:
                    later[j] = value
    return _compact(presentation)


def riii_substitution(word: BraidWord, at: int) -> Dict[Variable, Polynomial]:
    """Change of variables along a positive RIII move at ``at``.

    Maps the z-labels of the moved word to polynomials in the labels of
    ``word`` so that the two braid matrices agree.
    """
    a, b, c = word.letters[at:at + 3] if at + 3 <= len(word) else (0, 0, 0)
    if min(a, b, c) <= 0 or a != c or abs(a - b) != 1:
        raise InvalidDatumError([f"no positive RIII pattern at {at} in {word}"])
    p = sum(1 for x in word.letters[:at] if x > 0) + 1
    first, middle, last = Polynomial.z(p), Polynomial.z(p + 1), Polynomial.z(p + 2)
    sign = -1 if b > a else 1
    return {
        Variable.z(p): last,
        Variable.z(p + 1): middle + first * last * sign,
        Variable.z(p + 2): first,
    }
