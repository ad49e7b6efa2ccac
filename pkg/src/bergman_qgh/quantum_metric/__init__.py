"""Lip-norms, the bridge seminorm and state-distance estimates."""

from .bridge import BridgeConfig, bridge_N, combined_lip
from .lipnorm import LemmaCheckResult, LipCompactOperator, LipElement, lemma_bound_check, lip_compact_norm, lip_norm
from .lp import (
    DistanceModel,
    HausdorffResult,
    LPResult,
    StateFamily,
    default_nets,
    hausdorff_estimate,
    rho_distance_lp,
)
from .states import BoundaryState, DensityState, PointState, PullbackState, evaluate_state, parse_state
from .zeta import gamma, qgh_upper_bound

__all__ = [
    "BridgeConfig",
    "bridge_N",
    "combined_lip",
    "LemmaCheckResult",
    "LipCompactOperator",
    "LipElement",
    "lemma_bound_check",
    "lip_compact_norm",
    "lip_norm",
    "DistanceModel",
    "HausdorffResult",
    "LPResult",
    "StateFamily",
    "default_nets",
    "hausdorff_estimate",
    "rho_distance_lp",
    "BoundaryState",
    "DensityState",
    "PointState",
    "PullbackState",
    "evaluate_state",
    "parse_state",
    "gamma",
    "qgh_upper_bound",
]
