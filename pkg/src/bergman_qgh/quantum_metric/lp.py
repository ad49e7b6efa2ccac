"""Linear-programming estimates of the state distance ``rho_L`` for the glued Lip-norm.

``rho(mu, nu) = sup { mu(a) - nu(a) : L(a) <= 1 }`` is maximized over the finite
family ``a = (T_{sigma(g)} + K, f)`` with ``g, f`` real polynomials of bounded
degree on the sphere and ``K`` real-symmetric on a top-left block.  The
constraint ``L(a) <= 1`` becomes

    (i + j)**s |K_ij| <= u                       (Lip-norm of the compact part)
    |g(x) - g(y)| <= v |x - y|                   (Lipschitz part of g, sampled pairs)
    u + v <= 1                                   (L_n(T) <= 1)
    |f(x) - f(y)| <= |x - y|                     (L(f) <= 1)
    |g(x) - f(x)| <= gamma(n0)                   (bridge N <= 1, sampled points)

All quantities are real, so each modulus is two linear inequalities.  The
objective is invariant under ``(g, f) -> (g + c, f + c)``; ``g`` is pinned to
zero at the first constraint point to keep the LP bounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.optimize import linprog
from scipy.spatial import cKDTree

from ..bergman import BergmanWeight
from ..errors import InputError, InvariantViolation
from ..exact import GaussianRational
from ..harmonic import splitting_sigma
from ..intervals import Interval
from ..multiindex import count_up_to_degree, index_of, multi_indices_up_to
from ..sphere import SphereSampler
from ..symbols import PolynomialSymbol
from .bridge import BridgeConfig
from .lipnorm import LipCompactOperator
from .states import BoundaryState, DensityState, PointState, PullbackState
from .zeta import qgh_upper_bound

__all__ = [
    "StateFamily",
    "LPResult",
    "DistanceModel",
    "rho_distance_lp",
    "HausdorffResult",
    "hausdorff_estimate",
    "default_nets",
    "sphere_basis",
]

LP_TOL = 1e-8
_I = GaussianRational(0, 1)


@dataclass(frozen=True)
class StateFamily:
    """Search family and constraint sampling for the distance LP."""

    degree: int = 2
    cutoff: int = 8
    support: int | None = None
    n_points: int = 48
    pairs: int = 512
    seed: int = 0

    def __post_init__(self):
        if self.degree < 0:
            raise InputError("family degree must be >= 0")
        if self.cutoff < 0:
            raise InputError("cutoff must be >= 0")
        if self.support is not None and self.support < 0:
            raise InputError("support must be >= 0")
        if self.pairs < 1:
            raise InputError("pairs must be >= 1")


def sphere_basis(d: int, degree: int) -> list[PolynomialSymbol]:
    """Real basis of polynomials of degree ``<= degree`` restricted to S^{2d-1}.

    Uses the monomials not divisible by ``z_1 zbar_1`` (the normal forms modulo
    ``|z|^2 - 1``), paired into real and imaginary parts.
    """
    mis = multi_indices_up_to(degree, d)
    out = []
    for a in mis:
        for b in mis:
            if a.degree + b.degree > degree or min(a[0], b[0]) > 0:
                continue
            ia, ib = index_of(a), index_of(b)
            if ia == ib:
                out.append(PolynomialSymbol(d, {(a, a): 1}))
            elif ia < ib:
                out.append(PolynomialSymbol(d, {(a, b): 1, (b, a): 1}))
                out.append(PolynomialSymbol(d, {(a, b): _I, (b, a): -_I}))
    return out


@dataclass
class LPResult:
    value: float
    g: PolynomialSymbol
    f: PolynomialSymbol
    K: LipCompactOperator
    u: float
    v: float
    status: str = "optimal"


def _select_pairs(points_r: np.ndarray, n_anchor: int, max_pairs: int, seed: int) -> np.ndarray:
    n = len(points_r)
    total = n * (n - 1) // 2
    if total <= max_pairs:
        i, j = np.triu_indices(n, k=1)
        return np.stack([i, j], axis=1)
    chosen: set[tuple[int, int]] = set()
    for a in range(n_anchor):
        for b in range(n):
            if a != b:
                chosen.add((min(a, b), max(a, b)))
    k = min(4, n)
    _, nbr = cKDTree(points_r).query(points_r, k=k)
    for a in range(n):
        for b in nbr[a, 1:]:
            chosen.add((min(a, int(b)), max(a, int(b))))
    rng = np.random.default_rng(seed)
    while len(chosen) < max_pairs:
        a, b = rng.integers(0, n, size=2)
        if a != b:
            chosen.add((int(min(a, b)), int(max(a, b))))
    return np.array(sorted(chosen))


class DistanceModel:
    """Constraint system shared by every state pair; only the objective varies."""

    def __init__(self, cfg: BridgeConfig, family: StateFamily, anchors=()):
        self.cfg = cfg
        self.family = family
        w: BergmanWeight = cfg.weight
        d = w.d
        self.M = count_up_to_degree(family.cutoff, d)
        self.S = self.M if family.support is None else min(family.support, self.M)
        s = float(w.lip_exponent)

        anchors = [np.asarray(x, dtype=complex) for x in anchors]
        sampler = SphereSampler(d, family.n_points, family.seed, include_axes=True,
                                extra_points=np.array(anchors) if anchors else None)
        self.points = sampler.points
        self.n_anchor = len(anchors)
        pts_r = sampler.real_points

        self.basis = sphere_basis(d, family.degree)
        nb = len(self.basis)
        self.nb = nb
        self.B = np.column_stack([p.evaluate(self.points).real for p in self.basis])
        self.sigma = [splitting_sigma(p, w, family.cutoff).entries for p in self.basis]

        iu, ju = np.triu_indices(self.S)
        self.k_pairs = np.stack([iu + 1, ju + 1], axis=1)
        self.k_weights = (iu + ju + 2.0) ** -s
        nk = len(iu)

        self.ig = np.arange(nb)
        self.if_ = nb + np.arange(nb)
        self.ik = 2 * nb + np.arange(nk)
        self.iu = 2 * nb + nk
        self.iv = self.iu + 1
        self.nvar = self.iv + 1

        pairs = _select_pairs(pts_r, self.n_anchor, family.pairs, family.seed)
        self.pairs = pairs
        dist = np.linalg.norm(pts_r[pairs[:, 0]] - pts_r[pairs[:, 1]], axis=1)
        keep = dist > 1e-12
        pairs, dist = pairs[keep], dist[keep]
        diff = (self.B[pairs[:, 0]] - self.B[pairs[:, 1]]) / dist[:, None]
        npair = len(pairs)
        gamma_hi = cfg.gamma_n0.hi
        npts = len(self.points)

        blocks = []
        rhs = []
        # compact part: +-kappa - u <= 0
        eye_k = sparse.identity(nk, format="csr")
        col_u = sparse.csr_matrix(np.ones((nk, 1)))
        for sign in (1, -1):
            blocks.append(self._place([(self.ik, sign * eye_k), ([self.iu], -col_u)], nk))
            rhs.append(np.zeros(nk))
        # Lipschitz of g: +-diff.g - v <= 0
        col_v = sparse.csr_matrix(np.ones((npair, 1)))
        for sign in (1, -1):
            blocks.append(self._place([(self.ig, sparse.csr_matrix(sign * diff)), ([self.iv], -col_v)], npair))
            rhs.append(np.zeros(npair))
        # Lipschitz of f: +-diff.f <= 1
        for sign in (1, -1):
            blocks.append(self._place([(self.if_, sparse.csr_matrix(sign * diff))], npair))
            rhs.append(np.ones(npair))
        # u + v <= 1
        blocks.append(self._place([([self.iu, self.iv], sparse.csr_matrix(np.ones((1, 2))))], 1))
        rhs.append(np.ones(1))
        # bridge: +-(g - f)(x) <= gamma
        Bs = sparse.csr_matrix(self.B)
        for sign in (1, -1):
            blocks.append(self._place([(self.ig, sign * Bs), (self.if_, -sign * Bs)], npts))
            rhs.append(np.full(npts, gamma_hi))
        self.A_ub = sparse.vstack(blocks, format="csr")
        self.b_ub = np.concatenate(rhs)
        self.A_eq = self._place([(self.ig, sparse.csr_matrix(self.B[:1]))], 1)
        self.b_eq = np.zeros(1)
        self.bounds = [(None, None)] * (2 * nb + nk) + [(0, None), (0, None)]

    def _place(self, parts, nrows: int) -> sparse.csr_matrix:
        rows, cols, vals = [], [], []
        for idx, blk in parts:
            coo = sparse.coo_matrix(blk)
            rows.append(coo.row)
            cols.append(np.asarray(idx)[coo.col])
            vals.append(coo.data)
        return sparse.csr_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(nrows, self.nvar)
        )

    # -- functionals --------------------------------------------------------

    def _trace_vector(self, rho: np.ndarray) -> np.ndarray:
        m = rho.shape[0]
        if m > self.M:
            raise InputError(f"density matrix of size {m} exceeds the {self.M}-dimensional truncation")
        return np.array([np.real(np.sum(rho * S[:m, :m].T)) for S in self.sigma])

    def functional(self, state) -> np.ndarray:
        """Coefficient vector of ``a -> state(a)`` in the LP variables."""
        c = np.zeros(self.nvar)
        if isinstance(state, (PointState, BoundaryState)):
            if state.d != self.cfg.d:
                raise InputError("state dimension does not match")
            vals = np.array([p.evaluate(state.x).real for p in self.basis])
            c[self.if_ if isinstance(state, PointState) else self.ig] = vals
        elif isinstance(state, PullbackState):
            c[self.if_] = self._trace_vector(state.rho)
        elif isinstance(state, DensityState):
            rho = state.rho
            c[self.ig] = self._trace_vector(rho)
            m = rho.shape[0]
            i = self.k_pairs[:, 0] - 1
            j = self.k_pairs[:, 1] - 1
            inside = (i < m) & (j < m)
            coef = np.zeros(len(i))
            ii, jj = i[inside], j[inside]
            coef[inside] = np.where(ii == jj, rho[ii, jj].real, 2 * rho[ii, jj].real)
            c[self.ik] = coef * self.k_weights
        else:
            raise InputError(f"unknown state type {type(state).__name__}")
        return c

    def distance(self, mu, nu) -> LPResult:
        c = self.functional(mu) - self.functional(nu)
        res = linprog(
            -c, A_ub=self.A_ub, b_ub=self.b_ub, A_eq=self.A_eq, b_eq=self.b_eq, bounds=self.bounds,
            method="highs",
            options={"primal_feasibility_tolerance": LP_TOL, "dual_feasibility_tolerance": LP_TOL},
        )
        if res.status == 2:
            raise InvariantViolation("distance LP infeasible; the zero element is always feasible")
        if res.status == 3:
            raise InvariantViolation("distance LP unbounded")
        if res.status != 0:
            raise InvariantViolation(f"distance LP failed: {res.message}")
        x = res.x
        return LPResult(
            value=float(c @ x),
            g=self._poly(x[self.ig]),
            f=self._poly(x[self.if_]),
            K=self._compact(x[self.ik]),
            u=float(x[self.iu]),
            v=float(x[self.iv]),
            status="optimal",
        )

    def _poly(self, coef: np.ndarray) -> PolynomialSymbol:
        out = PolynomialSymbol.zero(self.cfg.d).to_float()
        for c, p in zip(coef, self.basis):
            if c != 0:
                out = out + p.scale(float(c))
        return out

    def _compact(self, kappa: np.ndarray) -> LipCompactOperator:
        entries = {}
        for (i, j), k, w in zip(self.k_pairs, kappa, self.k_weights):
            if k != 0:
                entries[(int(i), int(j))] = float(k * w)
                entries[(int(j), int(i))] = float(k * w)
        return LipCompactOperator(entries, self.cfg.weight.lip_exponent)


def _anchors_of(states) -> list[np.ndarray]:
    out = []
    for st in states:
        if isinstance(st, (PointState, BoundaryState)):
            if not any(np.allclose(st.x, a, atol=0, rtol=0) for a in out):
                out.append(st.x)
    return out


def rho_distance_lp(mu, nu, family: StateFamily, cfg: BridgeConfig) -> LPResult:
    """LP estimate of ``rho_L(mu, nu)``; the optimizer ``(g, K, f)`` is returned too."""
    model = DistanceModel(cfg, family, anchors=_anchors_of([mu, nu]))
    return model.distance(mu, nu)


@dataclass
class HausdorffResult:
    value: float
    upper_bound_2gamma: Interval
    distances: np.ndarray
    witness: list[tuple[int, int]] = field(default_factory=list)
    witness_max: float = float("nan")

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "upper_bound_2gamma": self.upper_bound_2gamma.to_dict(),
            "witness": [list(p) for p in self.witness],
            "witness_max": self.witness_max,
            "distances": self.distances.tolist(),
        }


def _witness_pairs(netA, netB) -> list[tuple[int, int]]:
    """The matching ``nu -> nu o sigma`` (and ``delta_x o pi -> delta_x``) between the nets."""
    pairs = []
    for i, a in enumerate(netA):
        for j, b in enumerate(netB):
            if isinstance(a, DensityState) and isinstance(b, PullbackState):
                if a.rho.shape == b.rho.shape and np.array_equal(a.rho, b.rho):
                    pairs.append((i, j))
                    break
            if isinstance(a, BoundaryState) and isinstance(b, PointState):
                if np.array_equal(a.x, b.x):
                    pairs.append((i, j))
                    break
    return pairs


def hausdorff_estimate(netA, netB, family: StateFamily, cfg: BridgeConfig) -> HausdorffResult:
    """Hausdorff distance between two finite state nets under the LP distance.

    ``netA`` holds states of the Toeplitz side, ``netB`` states of C(S); the
    result is reported next to the certified bound ``2 gamma(alpha)``.
    """
    netA, netB = list(netA), list(netB)
    if not netA or not netB:
        raise InputError("state nets must be nonempty")
    model = DistanceModel(cfg, family, anchors=_anchors_of(netA + netB))
    D = np.zeros((len(netA), len(netB)))
    for i, a in enumerate(netA):
        for j, b in enumerate(netB):
            D[i, j] = model.distance(a, b).value
    value = float(max(D.min(axis=1).max(), D.min(axis=0).max()))
    witness = _witness_pairs(netA, netB)
    wmax = float(max((D[i, j] for i, j in witness), default=float("nan")))
    bound = qgh_upper_bound(cfg.weight.alpha, d=cfg.d)
    return HausdorffResult(value=value, upper_bound_2gamma=bound, distances=D, witness=witness, witness_max=wmax)


def default_nets(weight: BergmanWeight, cutoff: int, n_vectors: int = 5, n_random: int = 5,
                 n_points: int = 3, seed: int = 0):
    """Nets on both sides built around the witness matching.

    Toeplitz side: vector states ``e_j e_j*``, seeded random rank-one states and
    boundary states ``delta_x o pi``.  C(S) side: their images ``nu o sigma`` and
    the point masses ``delta_x``.
    """
    M = count_up_to_degree(cutoff, weight.d)
    rng = np.random.default_rng(seed)
    dens = [DensityState.vector(j, M) for j in range(1, min(n_vectors, M) + 1)]
    for _ in range(n_random):
        psi = rng.standard_normal(M) + 1j * rng.standard_normal(M)
        dens.append(DensityState.rank_one(psi))
    pts = rng.standard_normal((n_points, 2 * weight.d))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    xs = [p[0::2] + 1j * p[1::2] for p in pts]
    xs = [x / np.linalg.norm(x) for x in xs]
    netA = dens + [BoundaryState(x) for x in xs]
    netB = [PullbackState.of(s) for s in dens] + [PointState(x) for x in xs]
    return netA, netB
