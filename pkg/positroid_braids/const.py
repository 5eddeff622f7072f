"""Constants for the positroid braids toolkit."""

from __future__ import annotations

DOMAIN = "positroid_braids"

# Configuration keys
CONF_THREADS = "threads"
CONF_MAX_ASSIGNMENTS = "max_assignments"
CONF_MAX_STATES = "max_states"
CONF_MAX_EXTRA_LENGTH = "max_extra_length"
CONF_PRIMES = "primes"
CONF_SET_T = "set_t"
CONF_LOG_LEVEL = "log_level"

# Environment overrides
ENV_PREFIX = "POSITROID_"
ENV_THREADS = "POSITROID_THREADS"
ENV_MAX_ASSIGNMENTS = "POSITROID_MAX_ASSIGNMENTS"
ENV_MAX_STATES = "POSITROID_MAX_STATES"
ENV_LOG_LEVEL = "POSITROID_LOG_LEVEL"

# Default values
DEFAULT_THREADS = 1
DEFAULT_MAX_ASSIGNMENTS = 10**8
DEFAULT_MAX_STATES = 10**6
DEFAULT_MAX_EXTRA_LENGTH = 4
DEFAULT_PRIMES = [2, 3, 5]
SET_T_SYMBOLIC = "symbolic"
SET_T_PM1 = "pm1"
SET_T_MODES = [SET_T_SYMBOLIC, SET_T_PM1]

DEFAULT_SET_T = SET_T_SYMBOLIC
T_MODE_PM1 = "pm1"
T_MODE_RANGE = "range"
T_MODES = [T_MODE_PM1, T_MODE_RANGE]
DEFAULT_T_MODE = T_MODE_PM1
DEFAULT_ORACLE_MAX_STRANDS = 4
DEFAULT_LOG_LEVEL = "WARNING"

# Exit codes
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2

# Check statuses
STATUS_PASSED = "passed"
STATUS_FAILED = "failed"
STATUS_ERROR = "error"
STATUS_DISABLED = "disabled"

# Data kinds accepted by `convert` and `braid --from`
DATUM_KINDS = {
    "pair": "Positroid pair (u, w) with k",
    "affine": "k-bounded affine permutation f",
    "rank": "Cyclic rank matrix r",
    "le": "Le diagram",
}

# Braid kinds emitted by `braid --kind`
BRAID_KINDS = {
    "richardson": {"name": "Richardson braid R_n(u,w)", "strands": "n"},
    "juggling": {"name": "Juggling braid J_k(f)", "strands": "k"},
    "juggling-algorithm": {"name": "Juggling braid by interval prepending", "strands": "k"},
    "juggling-delta": {"name": "Juggling braid times half twist", "strands": "k"},
    "juggling-action": {"name": "Juggling braid by the braid group action", "strands": "k"},
    "matrix": {"name": "Matrix braid M_k(r)", "strands": "k"},
    "le": {"name": "Le braid D_k(L)", "strands": "k"},
    "script-j": {"name": "Split juggling braid J1 Delta^-1 J2", "strands": "k"},
}

# Checks run by `reproduce-intro` and `verify`
CHECK_TYPES = {
    "intro": {
        "name": "Worked example reproduction",
        "description": "All four braids, both simplification chains, rank matrix and length formula",
    },
    "main1-i": {
        "name": "Richardson and juggling braids equivalent",
        "description": "Markov reduction certificate from R_n(u,w) to a k-stranded word",
    },
    "main1-ii": {
        "name": "Juggling and matrix braids equivalent",
        "description": "Certificate from J_k(f) Delta_k to M_k(r)",
    },
    "rich-vs-juggling": {
        "name": "Richardson and juggling point counts",
        "description": "Point counts agree up to the (q-1)^(n-s-k) torus factor",
    },
    "brick-strata": {
        "name": "Brick stratification",
        "description": "Stratum counts assemble into the brick count",
    },
    "trace": {
        "name": "Trace replay",
        "description": "A stored move trace replays from its start word to its end word",
    },
}

THEOREM_CHECKS = ["main1-i", "main1-ii", "rich-vs-juggling", "brick-strata"]

# Worked example data (the Gr(3,7) stratum used throughout the docs)
INTRO_K = 3
INTRO_N = 7
INTRO_U = [1, 3, 4, 2, 5, 6, 7]
INTRO_W = [4, 5, 1, 6, 7, 2, 3]
INTRO_F = [3, 5, 8, 6, 7, 11, 9]
INTRO_RICHARDSON = "n=7: s3 s2 s1 s4 s3 s2 s5 s4 s6 s5 s3^-1 s2^-1"
INTRO_JUGGLING = "n=3: s2 s1 s2 s2 s2 s1 s1"
INTRO_MATRIX = "n=3: s1 s2 s1 s1 s1 s2 s1 s2 s1 s1"
INTRO_REDUCED = "n=3: s2 s2 s1 s1"
INTRO_RANK_SPOTS = {(1, 1): 1, (1, 3): 2, (4, 6): 2, (3, 5): 3}
