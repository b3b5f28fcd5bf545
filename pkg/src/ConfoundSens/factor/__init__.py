from .treatments import TreatmentMatrix
from .ppca import fit_ppca, fit_ppca_from_cov, scree, ScreeResult
