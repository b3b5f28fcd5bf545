from .contrasts import ContrastSet, coordinate_contrast
from .geometry import NCGeometry, nc_geometry, nc_compatible, r2_min, project_row_space, scaled_mu_delta, \
    as_nc_effects
from .intervals import BiasInterval, worst_case_interval, worst_case_gamma, nc_interval, width_reduction, \
    robustness_value
from .report import BoundsRecord, BoundsEvaluator, BoundsReport, RobustnessSummary, NCDiagnostics
