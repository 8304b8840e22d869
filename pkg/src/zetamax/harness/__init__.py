"""Configuration, persistence, experiments and the command-line interface."""
from .config import ExperimentConfig, config_from_dict, load_config, write_config
from .experiments import (run_brw, run_covariance, run_fhk_sample, run_large_dev, run_max_scan, run_moments,
                          run_mollifier_check, run_partition, run_proxy_comparison, run_upper_bound_check,
                          run_zeta_eval)
from .io import RunManifest, find_orphans, read_manifests

__all__ = [
    "ExperimentConfig", "RunManifest", "config_from_dict", "find_orphans", "load_config", "read_manifests",
    "run_brw", "run_covariance", "run_fhk_sample", "run_large_dev", "run_max_scan", "run_moments",
    "run_mollifier_check", "run_partition", "run_proxy_comparison", "run_upper_bound_check", "run_zeta_eval",
    "write_config",
]
