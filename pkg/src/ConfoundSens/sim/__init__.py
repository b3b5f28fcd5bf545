from .dgp import DGPConfig, GroundTruth, LoadingPattern, Variant, generate, population_params, ground_truth, \
    simulate_arrays, sweep_configs, treatment_blocks
