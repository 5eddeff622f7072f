"""Positroid braids: KLS data, braid constructions, rewriting certificates,
braid varieties and their DG-algebras."""

from __future__ import annotations

from .braid_core import AffinePermutation, BraidWord, Permutation, demazure_product, half_twist, w0
from .config import Config
from .constructions import juggling_braid_diagram, le_braid, matrix_braid, richardson_braid
from .dg_algebra import build_dga, slice_eliminate
from .exceptions import (
    BoundExceededError,
    BraidParseError,
    EvaluationError,
    InapplicableMoveError,
    InvalidDatumError,
    PositroidBraidsError,
    ReplayError,
    SliceNotFoundError,
)
from .poly_core import Polynomial, Variable
from .positroid_data import CyclicRankMatrix, LeDiagram, PositroidPair, convert, validate
from .rewriting import MoveTrace, find_equivalence, markov_reduce, replay
from .varieties import brick_stratify, count_points, richardson_variety

__version__ = "0.1.0"

__all__ = [
    "AffinePermutation",
    "BoundExceededError",
    "BraidParseError",
    "BraidWord",
    "Config",
    "CyclicRankMatrix",
    "EvaluationError",
    "InapplicableMoveError",
    "InvalidDatumError",
    "LeDiagram",
    "MoveTrace",
    "Permutation",
    "Polynomial",
    "PositroidBraidsError",
    "PositroidPair",
    "ReplayError",
    "SliceNotFoundError",
    "Variable",
    "brick_stratify",
    "build_dga",
    "convert",
    "count_points",
    "demazure_product",
    "find_equivalence",
    "half_twist",
    "juggling_braid_diagram",
    "le_braid",
    "markov_reduce",
    "matrix_braid",
    "replay",
    "richardson_braid",
    "richardson_variety",
    "slice_eliminate",
    "validate",
    "w0",
]
