from .dataset import Dataset
from .regime import PriorRegime, RegimeKind
from .draws import PosteriorDraws, DrawsSummary, ParameterSummary
from .diagnostics import split_rhat
from .regression import NaiveRegression
from .conjugate import sample_transparent, sample_flat_gamma
from .negative_control import sample_negative_control
from .horseshoe import sample_horseshoe, HorseshoeSampler
from .loglik import pointwise_loglik, total_loglik
from .chains import sample, run_chains
