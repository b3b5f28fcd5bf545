# 1. Static stuff
from .__version__ import __version__

# 2. Setup used libraries
import ConfoundSens.__do_setup__

# 3. User configuration
import ConfoundSens.config

# 4. Core features
import ConfoundSens.core

# Import the rest
import ConfoundSens.model
import ConfoundSens.factor
import ConfoundSens.bounds
import ConfoundSens.prior
import ConfoundSens.mcmc
import ConfoundSens.sim

from ConfoundSens.model import FactorModel, ConfounderPosterior, OutcomeModel, ObservedOutcomeParams, \
    SensitivitySpec, Contrast
from ConfoundSens.config import CONFIG
