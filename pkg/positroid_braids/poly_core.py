"""Sparse multivariate polynomials over the integers.

Two variable families are used throughout the toolkit: ordinary ``z``
variables (braid-matrix coordinates, nonnegative exponents only) and ground
``t`` variables, which are invertible and may carry negative exponents.
Values are immutable; every operation returns a new polynomial in canonical
form so structural equality is mathematical equality.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from .exceptions import BraidParseError, EvaluationError

_LOGGER = logging.getLogger(__name__)


class Family(str, Enum):
    """Variable families, ordered t < z for rendering."""

    T = "t"
    Z = "z"


@dataclass(frozen=True, order=True)
class Variable:
    """A z- or t-variable with a positive index."""

    family: Family
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"variable index must be positive, got {self.index}")

    @classmethod
    def z(cls, index: int) -> "Variable":
        return cls(Family.Z, index)

    @classmethod
    def t(cls, index: int) -> "Variable":
        return cls(Family.T, index)

    @property
    def invertible(self) -> bool:
        return self.family is Family.T

    def __str__(self) -> str:
        return f"{self.family.value}{self.index}"


Monomial = Tuple[Tuple[Variable, int], ...]
Scalar = int
PolyLike = Union["Polynomial", int]

ONE_MONOMIAL: Monomial = ()


def _monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: Dict[Variable, int] = dict(a)
    for var, exp in b:
        exps[var] = exps.get(var, 0) + exp
    return tuple(sorted((v, e) for v, e in exps.items() if e != 0))


def _monomial_degree(m: Monomial) -> int:
    return sum(abs(e) for _, e in m)


def _render_monomial(m: Monomial) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)


class Polynomial:
    """Immutable sparse polynomial: a map from monomial to nonzero integer."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None) -> None:
        clean: Dict[Monomial, int] = {}
        for mono, coef in (terms or {}).items():
            if coef == 0:
                continue
            for var, exp in mono:
                if exp < 0 and not var.invertible:
                    raise ValueError(f"negative exponent on {var}")
            clean[mono] = clean.get(mono, 0) + coef
            if clean[mono] == 0:
                del clean[mono]
        self._terms = clean
        self._hash: Optional[int] = None

    # constructors

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({ONE_MONOMIAL: 1})

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def var(cls, v: Variable, exp: int = 1) -> "Polynomial":
        return cls({((v, exp),): 1} if exp else {ONE_MONOMIAL: 1})

    @classmethod
    def z(cls, index: int) -> "Polynomial":
        return cls.var(Variable.z(index))

    @classmethod
    def t(cls, index: int, exp: int = 1) -> "Polynomial":
        return cls.var(Variable.t(index), exp)

    @classmethod
    def coerce(cls, value: PolyLike) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Polynomial")

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return _Parser(text).parse()

    # inspection

    def terms(self) -> List[Tuple[Monomial, int]]:
        """Terms in canonical order (total degree, then variables)."""
        return sorted(self._terms.items(), key=lambda item: (_monomial_degree(item[0]), item[0]))

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_term(self) -> int:
        return self._terms.get(ONE_MONOMIAL, 0)

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(tuple(sorted(mono)), 0)

    def variables(self) -> List[Variable]:
        found = {v for mono in self._terms for v, _ in mono}
        return sorted(found)

    def degree(self) -> int:
        return max((_monomial_degree(m) for m in self._terms), default=-1)

    def is_unit_monomial(self) -> bool:
        """True for ±(monomial in t-variables), the invertible elements."""
        if len(self._terms) != 1:
            return False
        (mono, coef), = self._terms.items()
        return abs(coef) == 1 and all(v.invertible for v, _ in mono)

    # arithmetic

    def __add__(self, other: PolyLike) -> "Polynomial":
        other = Polynomial.coerce(other)
        merged = dict(self._terms)
        for mono, coef in other._terms.items():
            merged[mono] = merged.get(mono, 0) + coef
        return Polynomial(merged)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: PolyLike) -> "Polynomial":
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other: PolyLike) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other: PolyLike) -> "Polynomial":
        other = Polynomial.coerce(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _monomial_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exp: int) -> "Polynomial":
        if exp < 0:
            return self.inverse() ** (-exp)
        result = Polynomial.one()
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def inverse(self) -> "Polynomial":
        if not self.is_unit_monomial():
            raise EvaluationError(f"{self} is not invertible")
        (mono, coef), = self._terms.items()
        return Polynomial({tuple((v, -e) for v, e in mono): coef})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitution, evaluation, calculus

    def substitute(self, bindings: Mapping[Variable, PolyLike]) -> "Polynomial":
        """Simultaneous substitution; unbound variables are kept.

        t-variables may only be sent to units, so the result stays in the ring.
        """
        if not bindings:
            return self
        images = {v: Polynomial.coerce(p) for v, p in bindings.items()}
        for var, image in images.items():
            if var.invertible and not image.is_unit_monomial():
                raise EvaluationError(f"t-variable {var} must map to a unit, got {image}")
        powers: Dict[Tuple[Variable, int], Polynomial] = {}
        result = Polynomial()
        for mono, coef in self._terms.items():
            term = Polynomial.constant(coef)
            for var, exp in mono:
                if var not in images:
                    term = term * Polynomial.var(var, exp)
                    continue
                key = (var, exp)
                if key not in powers:
                    powers[key] = images[var] ** exp
                term = term * powers[key]
            result = result + term
        return result

    def rename(self, mapping: Mapping[Variable, Variable]) -> "Polynomial":
        return self.substitute({old: Polynomial.var(new) for old, new in mapping.items()})

    def eval_mod(self, assignment: Mapping[Variable, int], q: int) -> int:
        total = 0
        for mono, coef in self._terms.items():
            value = coef % q
            for var, exp in mono:
                if var not in assignment:
                    raise EvaluationError(f"no value assigned to {var}")
                a = assignment[var] % q
                if var.invertible and a == 0:
                    raise EvaluationError(f"t-variable {var} assigned zero")
                value = value * pow(a, exp, q) % q
            total = (total + value) % q
        return total

    def partial(self, var: Variable) -> "Polynomial":
        """Formal partial derivative with respect to ``var``."""
        out: Dict[Monomial, int] = {}
        for mono, coef in self._terms.items():
            exps = dict(mono)
            exp = exps.get(var, 0)
            if exp == 0:
                continue
            exps[var] = exp - 1
            m = tuple(sorted((v, e) for v, e in exps.items() if e != 0))
            out[m] = out.get(m, 0) + coef * exp
        return Polynomial(out)

    # rendering

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for mono, coef in self.terms():
            if not mono:
                body = str(abs(coef))
            elif abs(coef) == 1:
                body = _render_monomial(mono)
            else:
                body = f"{abs(coef)}*{_render_monomial(mono)}"
            if not pieces:
                pieces.append(f"-{body}" if coef < 0 else body)
            else:
                pieces.append(f" - {body}" if coef < 0 else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def add(p: PolyLike, q: PolyLike) -> Polynomial:
    return Polynomial.coerce(p) + q


def mul(p: PolyLike, q: PolyLike) -> Polynomial:
    return Polynomial.coerce(p) * q


def substitute(p: Polynomial, bindings: Mapping[Variable, PolyLike]) -> Polynomial:
    return p.substitute(bindings)


def eval_mod_p(p: Polynomial, assignment: Mapping[Variable, int], q: int) -> int:
    return p.eval_mod(assignment, q)


def parse_polynomial(text: str) -> Polynomial:
    return Polynomial.parse(text)


def render_polynomial(p: Polynomial) -> str:
    return str(p)


def poly_sum(items: Iterable[PolyLike]) -> Polynomial:
    total = Polynomial()
    for item in items:
        total = total + item
    return total


def poly_prod(items: Iterable[PolyLike]) -> Polynomial:
    total = Polynomial.one()
    for item in items:
        total = total * item
    return total


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([zt])(\d+)|(.))")


class _Parser:
    """Recursive-descent parser for the rendering grammar.

    Accepts ``+ - * ^``, parentheses, integer literals, ``z<k>``/``t<k>``
    and implicit multiplication such as ``(1+z1)z2``.
    """

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens: List[Tuple[str, Union[str, int, Variable]]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if match is None:
                break
            pos = match.end()
            number, family, index, other = match.groups()
            if number is not None:
                self.tokens.append(("num", int(number)))
            elif family is not None:
                self.tokens.append(("var", Variable(Family(family), int(index))))
            elif other is not None and not other.isspace():
                if other not in "+-*^()":
                    raise BraidParseError(f"unexpected character {other!r} in polynomial {text!r}")
                self.tokens.append(("op", other))
        self.pos = 0

    def _peek(self) -> Optional[Tuple[str, Union[str, int, Variable]]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> Tuple[str, Union[str, int, Variable]]:
        token = self._peek()
        if token is None:
            raise BraidParseError(f"unexpected end of polynomial {self.text!r}")
        self.pos += 1
        return token

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise BraidParseError("empty polynomial")
        result = self._expr()
        if self._peek() is not None:
            raise BraidParseError(f"trailing input in polynomial {self.text!r}")
        return result

    def _expr(self) -> Polynomial:
        sign = 1
        token = self._peek()
        if token in (("op", "-"), ("op", "+")):
            self._take()
            sign = -1 if token[1] == "-" else 1
        result = self._term() * sign
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            term = self._term()
            result = result + term if op == "+" else result - term
        return result

    def _term(self) -> Polynomial:
        result = self._power()
        while True:
            token = self._peek()
            if token == ("op", "*"):
                self._take()
                result = result * self._power()
            elif token is not None and (token[0] in ("num", "var") or token == ("op", "(")):
                result = result * self._power()
            else:
                return result

    def _power(self) -> Polynomial:
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            sign = 1
            if self._peek() == ("op", "-"):
                self._take()
                sign = -1
            kind, value = self._take()
            if kind != "num":
                raise BraidParseError(f"exponent must be an integer in {self.text!r}")
            return base ** (sign * int(value))
        return base

    def _atom(self) -> Polynomial:
        kind, value = self._take()
        if kind == "num":
            return Polynomial.constant(int(value))
        if kind == "var":
            return Polynomial.var(value)  # type: ignore[arg-type]
        if value == "(":
            inner = self._expr()
            if self._take() != ("op", ")"):
                raise BraidParseError(f"unbalanced parentheses in {self.text!r}")
            return inner
        raise BraidParseError(f"unexpected token {value!r} in polynomial {self.text!r}")
