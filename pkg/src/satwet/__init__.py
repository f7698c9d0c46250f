"""Space-to-ground wireless energy transfer from LEO satellite grids."""

__version__ = "0.1.0"

from satwet.channel import FadingParams, GammaApprox, gamma_params, mean_channel_power
from satwet.config import Scenario
from satwet.energy import ArrayConfig, LinkBudget, PassResult, compute_pass
from satwet.geometry import OrbitGeometry

__all__ = [
    "ArrayConfig",
    "FadingParams",
    "GammaApprox",
    "LinkBudget",
    "OrbitGeometry",
    "PassResult",
    "Scenario",
    "compute_pass",
    "gamma_params",
    "mean_channel_power",
]
