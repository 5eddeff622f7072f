"""Check implementations run by the check runner and the CLI."""

from __future__ import annotations

import asyncio
import functools
import json
import logging
from concurrent.futures import Executor
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Tuple

import sympy
import voluptuous as vol

from .braid_core import AffinePermutation, BraidWord, Permutation, half_twist
from .config import Config
from .const import (
    INTRO_F,
    INTRO_JUGGLING,
    INTRO_K,
    INTRO_MATRIX,
    INTRO_N,
    INTRO_RANK_SPOTS,
    INTRO_REDUCED,
    INTRO_RICHARDSON,
    INTRO_U,
    INTRO_W,
    STATUS_ERROR,
    STATUS_FAILED,
    STATUS_PASSED,
)
from .constructions import (
    juggling_braid_action,
    juggling_braid_algorithm,
    juggling_braid_diagram,
    juggling_length,
    le_braid,
    matrix_braid,
    richardson_braid,
)
from .exceptions import InvalidDatumError
from .positroid_data import (
    PositroidPair,
    affine_to_rank,
    all_positroid_pairs,
    pair_to_affine,
    pair_to_le,
    require_valid,
)
from .rewriting import MoveTrace, find_equivalence, markov_reduce, replay
from .varieties import brick_stratify, enlarge_to_w0, positroid_count_check

PERMUTATION = vol.All([vol.Coerce(int)], vol.Length(min=1))

PAIR_SCHEMA = vol.Schema(
    {
        vol.Required("k"): vol.All(vol.Coerce(int), vol.Range(min=0)),
        vol.Required("n"): vol.All(vol.Coerce(int), vol.Range(min=1, max=12)),
        vol.Required("u"): PERMUTATION,
        vol.Required("w"): PERMUTATION,
    }
)

PAIR_OR_SIZE_SCHEMA = vol.Any(
    PAIR_SCHEMA,
    vol.Schema(
        {
            vol.Required("k"): vol.All(vol.Coerce(int), vol.Range(min=0)),
            vol.Required("n"): vol.All(vol.Coerce(int), vol.Range(min=1, max=6)),
        }
    ),
)

INTRO_SCHEMA = vol.Schema(
    {
        vol.Optional("enabled"): bool,
        vol.Optional("f"): vol.Any(None, [vol.Coerce(int)]),
    },
    extra=vol.ALLOW_EXTRA,
)

BRICK_SCHEMA = vol.Schema(
    {
        vol.Required("word"): str,
        vol.Optional("expected"): str,
    }
)

TRACE_INSTANCE_SCHEMA = vol.Schema(
    vol.Any(
        {vol.Required("trace"): dict},
        {vol.Required("path"): str},
    )
)


def pair_from_instance(instance: Dict[str, Any]) -> PositroidPair:
    clean = PAIR_SCHEMA(instance)
    pair = PositroidPair(clean["k"], clean["n"], Permutation(clean["u"]), Permutation(clean["w"]))
    return require_valid(pair)


def _error(e: Exception) -> Dict[str, Any]:
    return {
        "status": STATUS_ERROR,
        "error": str(e),
        "timestamp": datetime.now().isoformat(),
    }


class BaseCheck:
    """Base class for all checks."""

    def __init__(
        self,
        config: Dict[str, Any],
        settings: Optional[Config] = None,
        executor: Optional[Executor] = None,
    ):
        self.config = config
        self.settings = settings or Config()
        self.executor = executor
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    def is_enabled(self) -> bool:
        return bool(self.config.get("enabled", True))

    async def get_data(self) -> Dict[str, Any]:
        """Run the check. Must be implemented by subclasses."""
        raise NotImplementedError

    async def _run_blocking(self, func: Callable[..., Any], *args: Any) -> Any:
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(self.executor, functools.partial(func, *args))

    def _report(self, checks: Dict[str, bool], details: Dict[str, Any]) -> Dict[str, Any]:
        failed = [name for name, ok in checks.items() if not ok]
        report = {
            "status": STATUS_FAILED if failed else STATUS_PASSED,
            "checks": checks,
            "details": details,
            "timestamp": datetime.now().isoformat(),
        }
        if failed:
            report["first_failure"] = failed[0]
            self.logger.warning(f"{len(failed)} of {len(checks)} checks failed, first: {failed[0]}")
        return report

    def _instance(self) -> Dict[str, Any]:
        return dict(self.config.get("instance") or {})

    def _primes(self) -> List[int]:
        return [int(q) for q in self.config.get("q") or [2]]


class IntroReproductionCheck(BaseCheck):
    """The Gr(3,7) worked example: four braids, rank matrix, length formula, two chains."""

    async def get_data(self) -> Dict[str, Any]:
        try:
            clean = INTRO_SCHEMA(self.config)
            checks, details = await self._run_blocking(self._evaluate, clean.get("f") or INTRO_F)
            return self._report(checks, details)
        except Exception as e:
            self.logger.error(f"Error reproducing the worked example: {e}")
            return _error(e)

    def _evaluate(self, window: List[int]) -> Tuple[Dict[str, bool], Dict[str, Any]]:
        pair = PositroidPair(INTRO_K, INTRO_N, Permutation(INTRO_U), Permutation(INTRO_W))
        f = require_valid(AffinePermutation(len(window), tuple(window)), INTRO_K)
        rich = richardson_braid(pair)
        juggling = juggling_braid_diagram(f, INTRO_K)
        rank = affine_to_rank(f, INTRO_K)
        matrix = matrix_braid(rank)
        le = le_braid(pair_to_le(pair))
        checks: Dict[str, bool] = {}
        checks["affine"] = pair_to_affine(pair) == f
        checks["richardson"] = rich == BraidWord.parse(INTRO_RICHARDSON)
        checks["juggling"] = juggling == BraidWord.parse(INTRO_JUGGLING)
        checks["juggling_routes"] = (
            len(juggling_braid_algorithm(f, INTRO_K)) == len(juggling)
            and len(juggling_braid_action(pair)) == len(juggling)
        )
        checks["matrix"] = matrix == BraidWord.parse(INTRO_MATRIX)
        checks["rank_matrix"] = all(rank(i, j) == value for (i, j), value in INTRO_RANK_SPOTS.items())
        checks["length_formula"] = juggling_length(pair) == len(juggling)

        search = self.settings.search
        reduced, markov_trace = markov_reduce(pair)
        hop = find_equivalence(reduced, BraidWord.parse(INTRO_REDUCED), search)
        rich_chain: Optional[MoveTrace] = markov_trace.then(hop) if hop is not None else None
        checks["richardson_chain"] = rich_chain is not None and replay(rich_chain).ok
        matrix_chain = find_equivalence(juggling + half_twist(juggling.strands), matrix, search)
        checks["matrix_chain"] = matrix_chain is not None and replay(matrix_chain).ok

        details = {
            "richardson": str(rich),
            "juggling": str(juggling),
            "matrix": str(matrix),
            "le": str(le),
            "length": juggling_length(pair),
            "rank_spots": {f"{i},{j}": rank(i, j) for i, j in INTRO_RANK_SPOTS},
            "richardson_chain": rich_chain.to_json() if rich_chain else None,
            "matrix_chain": matrix_chain.to_json() if matrix_chain else None,
        }
        return checks, details


class MainOneICheck(BaseCheck):
    """R_n(u,w) destabilizes to a k-stranded word equivalent to J_k(f) Delta_k^{-1}."""

    async def get_data(self) -> Dict[str, Any]:
        try:
            pair = pair_from_instance(self._instance())
            checks, details = await self._run_blocking(self._evaluate, pair)
            return self._report(checks, details)
        except Exception as e:
            self.logger.error(f"Error checking the Richardson reduction: {e}")
            return _error(e)

    def _evaluate(self, pair: PositroidPair) -> Tuple[Dict[str, bool], Dict[str, Any]]:
        reduced, trace = markov_reduce(pair)
        juggling = juggling_braid_diagram(pair_to_affine(pair), pair.k)
        target = juggling + half_twist(juggling.strands).inverse()
        hop = find_equivalence(reduced, target, self.settings.search)
        checks = {
            "markov_replay": replay(trace).ok,
            "certificate": hop is not None,
        }
        details = {
            "pair": pair.to_json(),
            "reduced": str(reduced),
            "target": str(target),
            "markov_moves": len(trace),
            "certificate": hop.to_json() if hop else None,
        }
        return checks, details


class MainOneIICheck(BaseCheck):
    """J_k(f) Delta_k is Delta-equivalent to the matrix braid M_k(r)."""

    async def get_data(self) -> Dict[str, Any]:
        try:
            pair = pair_from_instance(self._instance())
            checks, details = await self._run_blocking(self._evaluate, pair)
            return self._report(checks, details)
        except Exception as e:
            self.logger.error(f"Error checking the matrix braid: {e}")
            return _error(e)

    def _evaluate(self, pair: PositroidPair) -> Tuple[Dict[str, bool], Dict[str, Any]]:
        f = pair_to_affine(pair)
        juggling = juggling_braid_diagram(f, pair.k)
        matrix = matrix_braid(affine_to_rank(f, pair.k))
        start = juggling + half_twist(juggling.strands)
        trace = find_equivalence(start, matrix, self.settings.search)
        checks = {
            "certificate": trace is not None,
            "replay": trace is not None and replay(trace).ok,
        }
        details = {
            "pair": pair.to_json(),
            "start": str(start),
            "matrix": str(matrix),
            "certificate": trace.to_json() if trace else None,
        }
        return checks, details


class RichardsonVsJugglingCheck(BaseCheck):
    """Point counts of the Richardson and juggling braid varieties over F_q."""

    async def get_data(self) -> Dict[str, Any]:
        try:
            instance = PAIR_OR_SIZE_SCHEMA(self._instance())
            if "u" in instance:
                pairs = [pair_from_instance(instance)]
            else:
                pairs = all_positroid_pairs(instance["k"], instance["n"])
            checks, details = await self._run_blocking(self._evaluate, pairs, self._primes())
            return self._report(checks, details)
        except Exception as e:
            self.logger.error(f"Error comparing point counts: {e}")
            return _error(e)

    def _evaluate(self, pairs: List[PositroidPair], primes: List[int]) -> Tuple[Dict[str, bool], Dict[str, Any]]:
        max_assignments = self.settings.count.max_assignments
        checks: Dict[str, bool] = {}
        comparisons = []
        for pair in pairs:
            for q in primes:
                comparison = positroid_count_check(pair, q, max_assignments)
                checks[f"{comparison.details['f']} q={q}"] = comparison.ok
                comparisons.append(comparison.to_json())
        return checks, {"comparisons": comparisons}


class BrickStrataCheck(BaseCheck):
    """Brick counts assembled from strata, stable under enlarging to w0."""

    async def get_data(self) -> Dict[str, Any]:
        try:
            instance = BRICK_SCHEMA(self._instance())
            checks, details = await self._run_blocking(self._evaluate, instance, self._primes())
            return self._report(checks, details)
        except Exception as e:
            self.logger.error(f"Error checking the brick stratification: {e}")
            return _error(e)

    def _evaluate(self, instance: Dict[str, Any], primes: List[int]) -> Tuple[Dict[str, bool], Dict[str, Any]]:
        max_assignments = self.settings.count.max_assignments
        word = BraidWord.parse(instance["word"])
        stratification = brick_stratify(word)
        enlarged = brick_stratify(enlarge_to_w0(word))
        expected = None
        if "expected" in instance:
            try:
                expected = sympy.sympify(instance["expected"])
            except sympy.SympifyError as err:
                raise InvalidDatumError([f"bad expected count {instance['expected']!r}: {err}"]) from err
        checks: Dict[str, bool] = {}
        counts = []
        for q in primes:
            result = stratification.count(q, max_assignments)
            counts.append(result.to_json())
            checks[f"enlarge_to_w0 q={q}"] = enlarged.count(q, max_assignments).total == result.total
            if expected is not None:
                checks[f"expected q={q}"] = int(expected.subs(sympy.Symbol("q"), q)) == result.total
        return checks, {"stratification": stratification.to_json(), "counts": counts}


class TraceReplayCheck(BaseCheck):
    """A stored move trace replays from its start word to its end word."""

    async def get_data(self) -> Dict[str, Any]:
        try:
            instance = TRACE_INSTANCE_SCHEMA(self._instance())
            if "path" in instance:
                with open(instance["path"], "r") as f:
                    data = json.load(f)
            else:
                data = instance["trace"]
            trace = MoveTrace.from_json(data)
            result = await self._run_blocking(replay, trace)
            return self._report(
                {"replay": result.ok},
                {"start": str(trace.start), "end": str(trace.end), "moves": len(trace), **result.to_json()},
            )
        except Exception as e:
            self.logger.error(f"Error replaying trace: {e}")
            return _error(e)
