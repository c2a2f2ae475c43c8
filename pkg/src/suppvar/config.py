"""Size caps shared across the package.

The caps bound enumeration cost only; they are not correctness limits.
Callers that know what they are paying for can pass explicit budgets.
"""

MAX_PRIME = 13

# Largest field order p**k accepted by Field.
MAX_FIELD_ORDER = 169

# Upper bound on the number of candidates an exhaustive enumeration may visit.
DEFAULT_BUDGET = 2_000_000

# Default number of seeded random conjugations in stability checks.
CONJUGATION_SAMPLES = 100
