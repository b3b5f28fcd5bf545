from .models import random_factor_model, random_orthogonal, random_contrast, random_instance, Instance
from .oracles import nc_interval_oracle, worst_case_oracle
