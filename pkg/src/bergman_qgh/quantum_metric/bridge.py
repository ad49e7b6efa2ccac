"""The bridge ``N(T, f) = ||pi(T) - f||_inf / gamma(n0)`` and the glued Lip-norm."""

from __future__ import annotations

from dataclasses import dataclass

from ..bergman import BergmanWeight
from ..errors import InputError
from ..harmonic import pi_of
from ..intervals import Interval
from ..sphere import SphereSampler
from ..symbols import PolynomialSymbol, lipschitz_constant, sup_norm_on_sphere
from .lipnorm import LipElement, lip_norm
from .zeta import gamma

__all__ = ["BridgeConfig", "bridge_N", "combined_lip"]


@dataclass(frozen=True)
class BridgeConfig:
    weight: BergmanWeight
    n0: float
    gamma_n0: Interval
    sampler: SphereSampler

    def __post_init__(self):
        if self.sampler.d != self.weight.d:
            raise InputError("sampler and weight dimensions differ")
        if not self.sampler.mesh > 0:
            raise InputError("sampler mesh must be positive")

    @classmethod
    def make(cls, d: int, alpha, n0=None, tol: float = 1e-12, n_points: int = 2000,
             seed: int = 0) -> "BridgeConfig":
        """Anchor ``n0`` defaults to ``alpha``, which gives the tightest bound ``2 gamma(alpha)``."""
        w = BergmanWeight(d, alpha)
        n0 = w.alpha if n0 is None else n0
        if float(n0) < d:
            raise InputError(f"n0 must be >= d = {d}")
        # gamma(n0) >= 2**-(n0+2); keep the enclosure relatively tight
        g = gamma(n0, tol=min(tol, 1e-9 * 2.0 ** -(float(n0) + 2)))
        return cls(weight=w, n0=n0, gamma_n0=g, sampler=SphereSampler(d, n_points, seed))

    @property
    def d(self) -> int:
        return self.weight.d


def bridge_N(T: LipElement, f: PolynomialSymbol, cfg: BridgeConfig) -> Interval:
    """Enclosure of ``gamma(n0)^-1 * sup_S |pi(T) - f|``."""
    if f.d != cfg.d:
        raise InputError("symbol dimension does not match the bridge configuration")
    if not f.is_hermitian():
        raise InputError("f must be real-valued")
    sup = sup_norm_on_sphere(pi_of(T) - f, cfg.sampler)
    return Interval(sup.lo / cfg.gamma_n0.hi, sup.hi / cfg.gamma_n0.lo)


def combined_lip(T: LipElement, f: PolynomialSymbol, cfg: BridgeConfig) -> float:
    """``max(L_n(T), L(f), N(T, f))`` using the certified upper value of each."""
    return max(
        lip_norm(T, cfg.sampler).hi,
        lipschitz_constant(f, cfg.sampler).hi,
        bridge_N(T, f, cfg).hi,
    )
