"""
Configuration file for the operad workbench
Contains arity limits, sampling seeds, check points and output settings
"""

# ============================================
# ARITY LIMITS
# ============================================

MAX_ARITY = 5  # Largest arity any command accepts
DEFAULT_ARITY = 4  # Used when --arity is not given
BIG_ARITY = 5  # Arities at or above this need --allow-big

# ============================================
# SAMPLING
# ============================================

# Seed of the random parameter point used to pick independent ideal elements
SAMPLE_SEED = 1729

# ============================================
# VERIFICATION POINTS
# ============================================

# Values of t at which the Livernet-Loday certificate is checked
LL_CHECK_POINTS = (0, 1, -1, 2, 7)

# (t, v) points for the graded dimension check of the deformed family
RIGIDITY_POINTS = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 3))

# (t, u) points at s = v = 0 for the Poisson family flatness check
POISSON_SAMPLE_POINTS = ((0, 0), (1, 0), (0, 1), (2, -1), (1, 1))

# Nonzero v at s = t = u = 0; flatness must fail at each
POISSON_V_POINTS = (1, -1, 2)

# ============================================
# REWRITING
# ============================================

REWRITE_STEP_LIMIT = 10000  # Guard against non-terminating rule sets
FILTRATION_CUTOFF = 3  # Terms of this bracket weight go to the remainder

# ============================================
# OUTPUT AND LOGGING
# ============================================

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVEL = "WARNING"  # -v lowers this to DEBUG

OUTPUT_FORMATS = ["text", "records"]

# ============================================
# COMMANDS
# ============================================

# Available commands of the command line front end
AVAILABLE_COMMANDS = [
    "dim",          # Quotient dimension at one arity
    "grdim",        # Per-weight associated graded dimensions
    "ideal-rank",   # Rank of the ideal component
    "member",       # Ideal membership of an element
    "classify",     # Arity reports for arities 1..N
    "map-check",    # Generator map relations and low-arity isomorphism
    "verify",       # Named verifications
    "parse",        # Syntax check of a presentation file
]
