"""Package-wide numeric defaults, kept in one place."""

# Tolerance for floating-point property checks (symmetry, periodicity,
# boundary vanishing, fold consistency).
PROPERTY_TOL = 1e-9

# Per-inequality slack when testing membership in the fundamental simplex.
MEMBERSHIP_EPS = 1e-12

# Refuse to enumerate Weyl groups larger than this; orbit-based code paths
# never need full enumeration.
ENUMERATION_CAP = 2_000_000

# Safety cap for the fold iteration (generous; folding a point at distance d
# needs O(d) reflections).
FOLD_MAX_ITER = 10_000

# Monte Carlo defaults.  Sampling is chunked so that results are identical
# regardless of how chunks are distributed over workers.
MC_CHUNK = 250_000
MC_DEFAULT_SAMPLES = 1_000_000
MC_DEFAULT_SEED = 42
