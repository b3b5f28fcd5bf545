from .factor_model import FactorModel, ConfounderPosterior, confounder_posterior, adjustment_matrix
from .contrast import Contrast, mu_delta, bias_of, naive_effect
from .outcome import OutcomeModel, ObservedOutcomeParams, observed_params, true_effects
from .sensitivity import SensitivitySpec, gamma_from_spec
