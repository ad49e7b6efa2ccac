import numpy as np
import pytest

from bergman_qgh.quantum_metric.bridge import BridgeConfig
from bergman_qgh.quantum_metric.lp import (
    DistanceModel,
    StateFamily,
    default_nets,
    hausdorff_estimate,
    rho_distance_lp,
    sphere_basis,
)
from bergman_qgh.quantum_metric.states import BoundaryState, DensityState, PointState, PullbackState
from bergman_qgh.harmonic import splitting_sigma
from bergman_qgh.sphere import SphereSampler
from bergman_qgh.symbols import sup_norm_on_sphere
from bergman_qgh.toeplitz import spectral_norm

import oracles

FAMILY = StateFamily(degree=2, cutoff=8, pairs=512)


@pytest.fixture(scope="module")
def cfg1():
    return BridgeConfig.make(1, 1)


def test_basis_is_real_and_independent_on_sphere():
    for d, deg in ((1, 3), (2, 2)):
        basis = sphere_basis(d, deg)
        assert all(p.is_hermitian() for p in basis)
        pts = SphereSampler(d, 400, seed=1).points
        B = np.column_stack([p.evaluate(pts).real for p in basis])
        assert np.linalg.matrix_rank(B) == len(basis)


def test_same_state_is_zero(cfg1):
    x = PointState([np.exp(0.9j)])
    assert abs(rho_distance_lp(x, x, FAMILY, cfg1).value) < 1e-8
    rho = DensityState.vector(2, 9)
    assert abs(rho_distance_lp(rho, rho, FAMILY, cfg1).value) < 1e-8


def test_antipodal_point_masses(cfg1):
    assert rho_distance_lp(PointState([1]), PointState([-1]), FAMILY, cfg1).value == pytest.approx(2, rel=1e-8)


def test_point_masses_match_grid_oracle(cfg1):
    rng = np.random.default_rng(7)
    for _ in range(6):
        x, y = np.exp(2j * np.pi * rng.random(2))
        lp = rho_distance_lp(PointState([x]), PointState([y]), FAMILY, cfg1).value
        ref = oracles.grid_kantorovich(x, y)
        assert abs(ref - abs(x - y)) < 1e-9
        assert abs(lp - ref) <= 0.02 * ref


def test_symmetry(cfg1):
    model = DistanceModel(cfg1, FAMILY, anchors=[np.array([np.exp(0.2j)])])
    states = [PointState([np.exp(0.2j)]), DensityState.vector(3, 9), PullbackState.of(DensityState.vector(1, 9)),
              DensityState.rank_one(np.linspace(1, 2, 9))]
    for a in states:
        for b in states:
            assert model.distance(a, b).value == pytest.approx(model.distance(b, a).value, abs=1e-8)


@pytest.mark.parametrize("alpha", [1, 3])
def test_bound_chain_term_by_term(alpha):
    cfg = BridgeConfig.make(1, alpha)
    g_hi = cfg.gamma_n0.hi
    fam = StateFamily(degree=2, cutoff=10, pairs=512)
    rng = np.random.default_rng(alpha)
    M = 11
    rhos = [DensityState.vector(j, M) for j in (1, 2, 4)]
    rhos.append(DensityState.rank_one(rng.standard_normal(M) + 1j * rng.standard_normal(M)))
    dense = SphereSampler(1, 20000, seed=9)
    for rho in rhos:
        res = rho_distance_lp(rho, PullbackState.of(rho), fam, cfg)
        K = res.K.to_dense(M)
        sig = splitting_sigma(res.g - res.f, cfg.weight, fam.cutoff).entries
        pairing = np.real(np.trace(rho.rho @ (K + sig)))
        assert res.value == pytest.approx(pairing, abs=1e-9)
        normK, normS = spectral_norm(K), spectral_norm(sig)
        sup = sup_norm_on_sphere(res.g - res.f, dense)
        assert res.value <= normK + normS + 1e-9
        assert normS <= sup.hi + 1e-9
        assert normK <= g_hi * res.u + 1e-9 <= g_hi + 1e-9
        # constraints are sampled, so allow a little overshoot between samples
        assert sup.lo <= g_hi * 1.05
        assert res.value <= 2 * g_hi * 1.05


def test_large_alpha_pairs_almost_coincide():
    cfg = BridgeConfig.make(1, 20)
    rho = DensityState.vector(1, 9)
    h = hausdorff_estimate([rho], [PullbackState.of(rho)], FAMILY, cfg)
    assert h.value < 0.01
    assert h.witness == [(0, 0)]


def test_identical_nets_give_zero(cfg1):
    nets = [PointState([1]), PointState([1j])]
    assert hausdorff_estimate(nets, nets, FAMILY, cfg1).value == pytest.approx(0, abs=1e-8)


def test_boundary_state_to_point_mass_is_at_most_gamma(cfg1):
    x = np.exp(1.1j)
    v = rho_distance_lp(BoundaryState([x]), PointState([x]), FAMILY, cfg1).value
    assert v == pytest.approx(cfg1.gamma_n0.hi, rel=1e-7)


def test_hausdorff_trend_and_bound():
    vals = {}
    for alpha in (1, 4):
        cfg = BridgeConfig.make(1, alpha)
        A, B = default_nets(cfg.weight, 8, n_vectors=5, n_random=2, n_points=3, seed=0)
        h = hausdorff_estimate(A, B, FAMILY, cfg)
        assert h.value <= h.witness_max + 1e-12
        assert h.value <= h.upper_bound_2gamma.hi + 0.05
        vals[alpha] = h.value
    assert vals[4] < vals[1]
