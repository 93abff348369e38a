# Single graph of type (1, 2): weight 1/2
ORDER_ONE_WEIGHT = 0.5
ORDER_ONE_TOLERANCE = 0.01

# Logarithmic weights that must vanish: |w| <= max(tolerance, SIGMA_FACTOR * stderr)
LOG_TRIVIAL_TOLERANCE = 0.01     # two-cycle of type (2, 0)
VANISHING_TOLERANCE = 0.02       # graphs with a type-1 sink
SIGMA_FACTOR = 3.0

# Graph-side vs symbolic star product coefficients
CONSISTENCY_SIGMA_FACTOR = 5.0

# Four-colored propagator limits
BOUNDARY_OFFSET = 1e-5
BOUNDARY_TOLERANCE = 1e-4
BOUNDARY_CONFIGURATIONS = 50

# Discrete exterior derivative
CLOSEDNESS_STEP = 1e-5
CLOSEDNESS_TOLERANCE = 1e-6
