from .sphere import sample_sphere
from .beta_law import BiasSample, bias_prior_draws, beta_bias_cdf, ks_beta_law, worst_case_direction
from .constrained import sample_gamma_nc, minimal_gamma
