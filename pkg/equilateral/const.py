"""Constants for the equilateral set toolkit."""
import math

# Distance tolerance used when certifying equilateral sets
DEFAULT_TOLERANCE = 1e-10

# Residual targets for the scalar and parameter solvers
ROOT_TOLERANCE = 1e-12
FIXED_POINT_TOLERANCE = 1e-12

# Slack allowed on the strict sign pattern of the near-lp fixed point
SIGN_PATTERN_SLACK = 1e-9

# Snap tolerance when reading 0/1 coordinates in the l_inf extension algorithm
SNAP_TOLERANCE = 1e-9

# Equidistant-point search
DEFAULT_SEARCH_STARTS = 100
WITNESS_OBJECTIVE = 1e-18
WITNESS_SEPARATION = 1e-6
SPHERE_TOLERANCE = 1e-9
EXTENSION_TOLERANCE = 1e-9

# Effort caps for the l_inf equidistant search, where the objective is piecewise linear in high dimension
LINF_SEARCH_ROUNDS = 1
LINF_SIMPLEX_ITERATIONS = 400
LINF_POLISH_EVALUATIONS = 50

# Exhaustive l_inf maximality check is attempted when d * k stays below this
EXHAUSTIVE_LINF_LIMIT = 24

# Fixed-point solver
DAMPING = 0.5
FIXED_POINT_BUDGET = 100000
FIXED_POINT_RESTARTS = 20
ORACLE_SAMPLES = 1000
LINF_BOUND_LIMIT = 1.5

# Hadamard order search limit for the auto method
HADAMARD_ORDER_LIMIT = 1000

# Exponent boundaries of the tabulated regimes, written exactly as log(a/b)/log 2
LOG2 = math.log(2)
P_FIVE_HALVES = math.log(5 / 2) / LOG2
P_THREE = math.log(3) / LOG2
P_THIRTEEN_QUARTERS = math.log(13 / 4) / LOG2
P_SEVEN_HALVES = math.log(7 / 2) / LOG2
P_TWENTY_NINE_EIGHTHS = math.log(29 / 8) / LOG2
P_FIFTEEN_QUARTERS = math.log(15 / 4) / LOG2
P_NINETY_ONE_24THS = math.log(91 / 24) / LOG2
P_TWENTY_THREE_SIXTHS = math.log(23 / 6) / LOG2

# Exponents closer than this to the boundary of the five-point family count as the boundary
BOUNDARY_EXPONENT_TOLERANCE = 1e-12

# Tag written into JSON for the l_inf exponent
INF_TAG = "inf"

# Construction families exposed on the command line
FAMILY_PETTY = "petty"
FAMILY_LINF = "linf"
FAMILY_LP_BASIS = "lp-basis"
FAMILY_PROP17 = "prop17"
FAMILY_PROP20 = "prop20"
FAMILY_FIXED_LINF = "fixed-linf"
FAMILY_FIXED_LP = "fixed-lp"

FAMILIES = (
    FAMILY_PETTY,
    FAMILY_LINF,
    FAMILY_LP_BASIS,
    FAMILY_PROP17,
    FAMILY_PROP20,
    FAMILY_FIXED_LINF,
    FAMILY_FIXED_LP,
)

# Maximality hints accepted by check_maximal
HINT_BASIS = "basis"
HINT_PROP20 = "prop20"
HINT_PROP17 = "prop17"
HINT_LINF = "linf"
HINTS = (HINT_BASIS, HINT_PROP20, HINT_PROP17, HINT_LINF)

# Maximality verdicts
STATUS_EXTENSION_FOUND = "extension_found"
STATUS_NO_EXTENSION_FOUND = "no_extension_found"
STATUS_PROVEN_MAXIMAL = "proven_maximal"

METHOD_STRUCTURAL = "structural"
METHOD_NUMERIC = "numeric"
METHOD_COMBINATORIAL = "combinatorial"

# CLI exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_IO_ERROR = 3
