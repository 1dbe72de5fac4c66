"""Geometric set cover through epsilon-nets of configuration systems."""

from .config_core import Configuration, ConfigurationSystem, WeightedFamily, make_rng, weighted_sample
from .cover import CoverInstance, CoverResult, InfeasibleError, bg_cover, exact_cover, greedy_cover
from .nets import NetConstructionError, likely_net, two_level_net, verify_net

__all__ = [
    "Configuration",
    "ConfigurationSystem",
    "CoverInstance",
    "CoverResult",
    "InfeasibleError",
    "NetConstructionError",
    "WeightedFamily",
    "bg_cover",
    "exact_cover",
    "greedy_cover",
    "likely_net",
    "make_rng",
    "two_level_net",
    "verify_net",
    "weighted_sample",
]
__version__ = "0.1.0"
