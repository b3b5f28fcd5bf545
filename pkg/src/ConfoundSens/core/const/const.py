# Relative cutoffs used by the linear algebra helpers
PD_REL_TOL = 1e-10
PINV_RCOND = 1e-10

# Compatibility tolerance for estimated negative control effects
STAT_TOL = 0.05

# Sampler defaults
SLAB_SCALE = 2.0
NONNULL_FRACTION = 0.1
WARMUP_FRACTION = 0.5

RNG_ALGORITHM = 'PCG64'
