"""Finite-field point counts, the flag-variety oracle and brick stratifications.

Every count here is an exhaustive evaluation over F_q.  The only shortcut is
the product split: equations that share no variables are counted
independently and the counts multiplied, and variables that appear in no
equation contribute a factor q each.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import sympy

from .braid_core import (
    BraidWord,
    Permutation,
    demazure_product,
    half_twist,
    positive_lift,
    w0,
)
from .braid_matrix import VarietyPresentation, variety_upper_triangular
from .const import (
    DEFAULT_MAX_ASSIGNMENTS,
    DEFAULT_ORACLE_MAX_STRANDS,
    DEFAULT_T_MODE,
    T_MODE_PM1,
    T_MODE_RANGE,
    T_MODES,
)
from .constructions import juggling_braid_diagram
from .dg_algebra import slice_eliminate, t_specialization
from .exceptions import BoundExceededError, EvaluationError, InvalidDatumError
from .poly_core import Polynomial, Variable
from .positroid_data import PositroidPair, pair_to_affine, require_valid

_LOGGER = logging.getLogger(__name__)

METHOD_BRUTE = "brute"
METHOD_PRODUCT_SPLIT = "product-split"

_T_GROUNDED_KINDS = ("braid-pair", "slice-eliminated")

# (coefficient mod q, ((slot, exponent), ...)) per term
_CompiledTerm = Tuple[int, Tuple[Tuple[int, int], ...]]


@dataclass(frozen=True)
class CountReport:
    label: str
    q: int
    count: int
    method: str
    assignments: int

    def to_json(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "q": self.q,
            "count": self.count,
            "method": self.method,
            "assignments": self.assignments,
        }


@dataclass(frozen=True)
class CountComparison:
    """Two point counts that a theorem says agree after an explicit factor."""

    name: str
    q: int
    left: int
    right: int
    factor: int
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.left == self.right * self.factor

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "q": self.q,
            "left": self.left,
            "right": self.right,
            "factor": self.factor,
            "ok": self.ok,
            **self.details,
        }


def _require_prime(q: int) -> None:
    if not sympy.isprime(q):
        raise EvaluationError(f"point counts need a prime field size, got q={q}")


def _closure_word(v: VarietyPresentation) -> BraidWord:
    return v.braid + half_twist(v.braid.strands)


def _ground(v: VarietyPresentation, q: int, t_mode: str) -> Tuple[Dict[Variable, Polynomial], Dict[Variable, range]]:
    """Bindings or value ranges for the t-variables of ``v``."""
    if t_mode not in T_MODES:
        raise InvalidDatumError([f"unknown t mode {t_mode!r}, expected one of {T_MODES}"])
    ground = set(v.ground) | {x for eq in v.equations for x in eq.variables() if x.invertible}
    if not ground:
        return {}, {}
    if t_mode == T_MODE_RANGE:
        return {}, {t: range(1, q) for t in sorted(ground)}
    if v.kind in _T_GROUNDED_KINDS:
        signs = t_specialization(_closure_word(v))
    else:
        signs = {}
    bindings: Dict[Variable, Polynomial] = {}
    for t in ground:
        bindings[t] = Polynomial.constant(signs.get(t.index, 1))
    return bindings, {}


class _Components:
    """Union-find over variables, grouping equations that share variables."""

    def __init__(self) -> None:
        self._parent: Dict[Variable, Variable] = {}

    def find(self, x: Variable) -> Variable:
        self._parent.setdefault(x, x)
        while self._parent[x] != x:
            self._parent[x] = self._parent[self._parent[x]]
            x = self._parent[x]
        return x

    def __contains__(self, x: object) -> bool:
        return x in self._parent

    def union(self, a: Variable, b: Variable) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self._parent[max(ra, rb)] = min(ra, rb)


def _compile(eq: Polynomial, slots: Mapping[Variable, int], q: int) -> List[_CompiledTerm]:
    compiled = []
    for mono, coef in eq:
        c = coef % q
        if c:
            compiled.append((c, tuple((slots[x], e) for x, e in mono)))
    return compiled


def _vanishes(terms: Sequence[_CompiledTerm], values: Sequence[int], q: int) -> bool:
    total = 0
    for c, factors in terms:
        value = c
        for slot, e in factors:
            value = value * pow(values[slot], e, q) % q
            if not value:
                break
        total += value
    return total % q == 0


def _count_component(
    variables: Sequence[Variable],
    equations: Sequence[Polynomial],
    domains: Mapping[Variable, range],
    q: int,
) -> int:
    slots = {x: pos for pos, x in enumerate(variables)}
    compiled = [_compile(eq, slots, q) for eq in equations]
    # fewest terms first so most assignments fail early
    compiled.sort(key=len)
    return sum(
        1
        for values in itertools.product(*(domains[x] for x in variables))
        if all(_vanishes(terms, values, q) for terms in compiled)
    )


def count_points(
    v: VarietyPresentation,
    q: int,
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
    t_mode: str = DEFAULT_T_MODE,
    label: Optional[str] = None,
) -> CountReport:
    """Number of F_q-points of ``v`` by exhaustive evaluation.

    t-variables are either specialized to the closure signs ("pm1") or
    enumerated over the nonzero residues ("range").
    """
    _require_prime(q)
    if label is None:
        label = f"X({v.braid}; {v.pi})" if v.pi is not None else f"X({v.braid})"
    bindings, t_domains = _ground(v, q, t_mode)
    domains: Dict[Variable, range] = {x: range(q) for x in v.variables}
    domains.update(t_domains)

    equations: List[Polynomial] = []
    for eq in v.equations:
        eq = eq.substitute(bindings) if bindings else eq
        if eq.is_constant():
            if eq.constant_term() % q:
                _LOGGER.debug(f"{label}: constant equation {eq} has no solutions over F_{q}")
                return CountReport(label, q, 0, METHOD_BRUTE, 0)
            continue
        missing = [str(x) for x in eq.variables() if x not in domains]
        if missing:
            raise EvaluationError(f"{label}: no range for variables {missing}")
        equations.append(eq)

    components = _Components()
    for eq in equations:
        first, *rest = eq.variables()
        for x in rest:
            components.union(first, x)
    grouped_vars: Dict[Variable, List[Variable]] = {}
    grouped_eqs: Dict[Variable, List[Polynomial]] = {}
    for eq in equations:
        grouped_eqs.setdefault(components.find(eq.variables()[0]), []).append(eq)
    free = 1
    for x in sorted(domains):
        if x in components:
            grouped_vars.setdefault(components.find(x), []).append(x)
        else:
            free *= len(domains[x])

    cost = 0
    for variables in grouped_vars.values():
        size = 1
        for x in variables:
            size *= len(domains[x])
        cost += size
    if cost > max_assignments:
        raise BoundExceededError(
            f"{label}: {cost} assignments over F_{q} exceed the bound of {max_assignments}"
        )

    count = free
    for root, variables in grouped_vars.items():
        if not count:
            break
        count *= _count_component(variables, grouped_eqs[root], domains, q)
    method = METHOD_BRUTE if len(grouped_vars) == 1 and free == 1 else METHOD_PRODUCT_SPLIT
    _LOGGER.debug(
        f"{label} over F_{q}: {count} points ({method}, {len(grouped_vars)} components, {cost} assignments)"
    )
    return CountReport(label, q, count, method, cost)


def count_polynomial(
    presentation: VarietyPresentation,
    primes: Sequence[int],
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
    t_mode: str = DEFAULT_T_MODE,
) -> sympy.Expr:
    """Interpolate the counts at ``primes`` into a polynomial in q."""
    if len(set(primes)) != len(primes) or not primes:
        raise InvalidDatumError([f"need distinct primes to interpolate, got {list(primes)}"])
    points = [
        (p, count_points(presentation, p, max_assignments, t_mode).count) for p in primes
    ]
    q = sympy.Symbol("q")
    return sympy.expand(sympy.interpolate(points, q))


# Open Richardson varieties by flag enumeration


def _flag_representatives(n: int, q: int) -> Iterator[List[List[int]]]:
    """One column-echelon matrix per complete flag in F_q^n.

    Column j has a 1 in row pi(j), zeros below it and in the pivot rows of
    the earlier columns, and free entries in the remaining rows above.
    """
    for pi in itertools.permutations(range(n)):
        free: List[Tuple[int, int]] = []
        for j, pivot in enumerate(pi):
            used = set(pi[:j])
            free.extend((r, j) for r in range(pivot) if r not in used)
        for values in itertools.product(range(q), repeat=len(free)):
            columns = [[0] * n for _ in range(n)]
            for j, pivot in enumerate(pi):
                columns[j][pivot] = 1
            for (r, j), value in zip(free, values):
                columns[j][r] = value
            yield columns


def _rank_mod(rows: List[List[int]], q: int) -> int:
    rows = [[x % q for x in row] for row in rows]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, q)
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col] * inv % q
                rows[r] = [(a - factor * b) % q for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _intersection_dim(columns: List[List[int]], r: int, rows: range, q: int) -> int:
    """dim of span(first r columns) meeting the coordinate subspace off ``rows``."""
    if not rows:
        return r
    block = [[columns[j][i] for j in range(r)] for i in rows]
    return r - _rank_mod(block, q)


def _in_richardson(columns: List[List[int]], u: Permutation, w: Permutation, q: int) -> bool:
    n = u.n
    for r in range(1, n):
        for p in range(1, n):
            # F_p^st is cut out by the rows below p
            expected = sum(1 for j in range(1, r + 1) if w(j) <= p)
            if _intersection_dim(columns, r, range(p, n), q) != expected:
                return False
            # the anti-standard F_p is cut out by the top n - p rows
            expected = sum(1 for i in range(1, r + 1) if u(i) >= n + 1 - p)
            if _intersection_dim(columns, r, range(0, n - p), q) != expected:
                return False
    return True


def richardson_oracle(
    u: Permutation, w: Permutation, q: int, max_strands: int = DEFAULT_ORACLE_MAX_STRANDS
) -> int:
    """Flags of F_q^n in the open Schubert cell of w and the opposite cell of u."""
    _require_prime(q)
    if u.n != w.n:
        raise InvalidDatumError([f"{u} and {w} act on different numbers of strands"])
    if u.n > max_strands:
        raise BoundExceededError(f"flag enumeration is limited to n <= {max_strands}, got n={u.n}")
    count = sum(1 for flag in _flag_representatives(u.n, q) if _in_richardson(flag, u, w, q))
    _LOGGER.debug(f"open Richardson ({u}, {w}) over F_{q}: {count} flags")
    return count


def richardson_variety(u: Permutation, w: Permutation) -> VarietyPresentation:
    """X(beta(w) beta(u^{-1} w0); w0)."""
    n = w.n
    word = positive_lift(w) + positive_lift(u.inverse() * w0(n))
    return variety_upper_triangular(word, w0(n))


def positroid_count_check(
    pair: PositroidPair, q: int, max_assignments: int = DEFAULT_MAX_ASSIGNMENTS
) -> CountComparison:
    """Richardson count against the juggling count times (q-1)^(n-s-k)."""
    require_valid(pair)
    f = pair_to_affine(pair)
    juggling = juggling_braid_diagram(f, pair.k)
    s = len(f.fixed_points())
    exponent = pair.n - s - pair.k
    left = count_points(richardson_variety(pair.u, pair.w), q, max_assignments).count
    right = count_points(
        variety_upper_triangular(juggling, w0(juggling.strands)), q, max_assignments
    ).count
    factor = (q - 1) ** exponent
    comparison = CountComparison(
        "rich-vs-juggling",
        q,
        left,
        right,
        factor,
        {"pair": pair.to_json(), "f": f.render(pair.k), "juggling": str(juggling), "torus_rank": exponent},
    )
    _LOGGER.info(f"rich-vs-juggling {f.render(pair.k)} at q={q}: {left} vs {right}*{factor}")
    return comparison


# Brick stratification


@dataclass(frozen=True)
class BrickStratum:
    subset: Tuple[int, ...]
    dim: int
    presentation: VarietyPresentation

    def to_json(self) -> Dict[str, Any]:
        return {"I": list(self.subset), "dim": self.dim, "word": str(self.presentation.braid)}


@dataclass(frozen=True)
class BrickStratification:
    """Strata of brick(beta) indexed by the subwords keeping the Demazure product."""

    word: BraidWord
    demazure: Permutation
    strata: Tuple[BrickStratum, ...]

    def open_stratum(self) -> BrickStratum:
        return self.strata[0]

    def count(self, q: int, max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> "BrickCount":
        counts = tuple(
            (stratum, count_points(stratum.presentation, q, max_assignments).count)
            for stratum in self.strata
        )
        return BrickCount(self, q, counts)

    def to_json(self) -> Dict[str, Any]:
        return {
            "word": str(self.word),
            "demazure": str(self.demazure),
            "strata": [s.to_json() for s in self.strata],
        }


@dataclass(frozen=True)
class BrickCount:
    stratification: BrickStratification
    q: int
    counts: Tuple[Tuple[BrickStratum, int], ...]

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def to_json(self) -> Dict[str, Any]:
        return {
            "word": str(self.stratification.word),
            "q": self.q,
            "strata": [{"I": list(s.subset), "dim": s.dim, "count": c} for s, c in self.counts],
            "total": self.total,
        }


def brick_stratify(beta: BraidWord) -> BrickStratification:
    """Subsets I (1-based, largest first) with delta(beta_I) = delta(beta)."""
    if not beta.is_positive():
        raise InvalidDatumError([f"brick stratification needs a positive word, got {beta}"])
    delta = demazure_product(beta)
    target = delta.length()
    strata: List[BrickStratum] = []
    for size in range(len(beta), target - 1, -1):
        for subset in itertools.combinations(range(len(beta)), size):
            sub = BraidWord(beta.strands, tuple(beta[p] for p in subset))
            if demazure_product(sub) != delta:
                continue
            presentation = variety_upper_triangular(sub.opposite(), delta)
            strata.append(BrickStratum(tuple(p + 1 for p in subset), size - target, presentation))
    _LOGGER.debug(f"brick({beta}): {len(strata)} strata, Demazure product {delta}")
    return BrickStratification(beta, delta, tuple(strata))


def brick_count(beta: BraidWord, q: int, max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> int:
    return brick_stratify(beta).count(q, max_assignments).total


def enlarge_to_w0(beta: BraidWord) -> BraidWord:
    """beta followed by a reduced word for delta(beta)^{-1} w0."""
    delta = demazure_product(beta)
    return beta + positive_lift(delta.inverse() * w0(beta.strands))


# Markov moves and Reidemeister II at the level of counts


def markov_count_check(
    eta: BraidWord, q: int, max_assignments: int = DEFAULT_MAX_ASSIGNMENTS
) -> List[CountComparison]:
    """Stabilization multiplies the count of X(eta Delta; w0) by q-1, a disjoint strand by 1."""
    if not eta.is_positive():
        raise InvalidDatumError([f"Markov count check needs a positive word, got {eta}"])
    n = eta.strands
    base = count_points(variety_upper_triangular(eta + half_twist(n), w0(n)), q, max_assignments).count
    lifted = eta.with_strands(n + 1)
    stabilized = lifted + BraidWord.positive(n + 1, [n]) + half_twist(n + 1)
    disjoint = lifted + half_twist(n + 1)
    stab_count = count_points(variety_upper_triangular(stabilized, w0(n + 1)), q, max_assignments).count
    disjoint_count = count_points(variety_upper_triangular(disjoint, w0(n + 1)), q, max_assignments).count
    checks = [
        CountComparison("stabilization", q, stab_count, base, q - 1, {"word": str(eta)}),
        CountComparison("disjoint-strand", q, disjoint_count, base, 1, {"word": str(eta)}),
    ]
    for check in checks:
        if not check.ok:
            _LOGGER.warning(f"{check.name} count mismatch for {eta} at q={q}: {check.left} vs {check.right}*{check.factor}")
    return checks


def quotient_count(
    eta: BraidWord,
    q: int,
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
    t_mode: str = T_MODE_PM1,
) -> CountReport:
    """Points of X(eta)/V(eta), counted on the slice-eliminated presentation."""
    return count_points(slice_eliminate(eta), q, max_assignments, t_mode, label=f"X({eta})/V")


def nonempty_iff_demazure_w0(
    n: int,
    max_length: int,
    primes: Sequence[int] = (2, 3),
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
) -> List[BraidWord]:
    """Positive words where "X(beta; w0) has points" disagrees with "delta(beta) = w0".

    A word counts as nonempty when it has a point over one of ``primes``.
    """
    longest = w0(n)
    failures: List[BraidWord] = []
    for length in range(max_length + 1):
        for letters in itertools.product(range(1, n), repeat=length):
            word = BraidWord(n, letters)
            presentation = variety_upper_triangular(word, longest)
            nonempty = any(count_points(presentation, p, max_assignments).count for p in primes)
            if nonempty != (demazure_product(word) == longest):
                failures.append(word)
    _LOGGER.info(f"nonemptiness sweep n={n}, length <= {max_length}: {len(failures)} disagreements")
    return failures
