import json

import numpy as np
import pytest

from bergman_qgh.bergman import BergmanWeight
from bergman_qgh.errors import InputError
from bergman_qgh.quantum_metric.bridge import BridgeConfig, bridge_N, combined_lip
from bergman_qgh.quantum_metric.lipnorm import LipCompactOperator, LipElement, lip_norm
from bergman_qgh.quantum_metric.states import (
    BoundaryState,
    DensityState,
    PointState,
    PullbackState,
    evaluate_state,
    parse_state,
)
from bergman_qgh.symbols import PolynomialSymbol as P, lipschitz_constant

W = BergmanWeight(1, 1)
Z, ZB = P.z(1, 1), P.zbar(1, 1)


def test_state_examples():
    T = LipElement.sigma(P.constant(1), W, 4)
    assert evaluate_state(PointState([np.exp(0.3j)]), T, P.constant(1)) == 1
    T = LipElement.sigma(Z * ZB, W, 4)
    assert evaluate_state(DensityState.vector(1, 5), T, Z * ZB) == pytest.approx(1, abs=1e-15)
    K = LipElement.compact(LipCompactOperator({(1, 1): 0.1}, 3), W, 4)
    assert evaluate_state(DensityState.vector(1, 5), K, P.zero(1)) == pytest.approx(0.1)


def test_pullback_and_boundary_states():
    f = Z + ZB
    T = LipElement.sigma(f, W, 6)
    rho = DensityState.rank_one(np.arange(1, 8))
    assert evaluate_state(PullbackState.of(rho), T, f) == pytest.approx(evaluate_state(rho, T, f))
    x = np.exp(0.4j)
    assert evaluate_state(BoundaryState([x]), T, P.zero(1)) == pytest.approx(2 * np.cos(0.4))


def test_density_validation():
    with pytest.raises(InputError):
        DensityState(np.diag([0.5, 0.6]))
    with pytest.raises(InputError):
        DensityState(np.diag([1.5, -0.5]))
    with pytest.raises(InputError):
        PointState([0.5])


def test_parse_state(tmp_path):
    assert isinstance(parse_state("point:0.6,0.8", 1, 5), PointState)
    assert parse_state("vector:2", 1, 5).rho[1, 1] == 1
    f = tmp_path / "rho.json"
    f.write_text(json.dumps({"re": [[0.5, 0], [0, 0.5]]}))
    assert parse_state(f"density:{f}", 1, 5).M == 2
    for bad in ("point:1", "vector:9", "nope:1", "vector"):
        with pytest.raises(InputError):
            parse_state(bad, 1, 5)


def test_bridge_examples():
    cfg = BridgeConfig.make(1, 1)
    f = Z + ZB
    assert bridge_N(LipElement.sigma(f, W, 5), f, cfg).hi <= cfg.sampler.mesh * 2 / cfg.gamma_n0.lo
    iv = bridge_N(LipElement.sigma(f, W, 5), P.zero(1), cfg)
    assert iv.lo <= 2 / cfg.gamma_n0.mid <= iv.hi
    assert iv.lo == pytest.approx(9.898, abs=1e-3)
    c = bridge_N(LipElement.sigma(Z * ZB, W, 5), P.constant(1, 0.25), cfg)
    assert c.lo <= 0.75 / cfg.gamma_n0.mid <= c.hi


def test_combined_lip_anchor_identities():
    cfg = BridgeConfig.make(1, 1)
    f = Z + ZB + (Z**2 + ZB**2).scale(0.25)
    assert combined_lip(LipElement.sigma(f, W, 6), f, cfg) == lipschitz_constant(f, cfg.sampler).hi
    T = LipElement(f, LipCompactOperator({(1, 2): 0.01, (2, 1): 0.01}, 3), W, 6)
    assert combined_lip(T, T.f, cfg) == lip_norm(T, cfg.sampler).hi
    assert combined_lip(LipElement.sigma(P.constant(1), W, 4), P.constant(1), cfg) == 0
