"""States on the direct sum T_alpha (+) C(S^{2d-1}).

Each state lives on one summand and ignores the other:

* :class:`PointState` -- evaluation ``f -> f(x)`` on C(S).
* :class:`PullbackState` -- ``f -> tr(rho sigma(f))``, the state ``nu o sigma`` on C(S).
* :class:`DensityState` -- ``T -> tr(rho T)`` on the truncated Toeplitz algebra.
* :class:`BoundaryState` -- ``T -> pi(T)(x)``, the state ``delta_x o pi`` that kills the compacts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import InputError
from ..harmonic import splitting_sigma
from ..sphere import from_real
from ..symbols import PolynomialSymbol

__all__ = [
    "PointState",
    "BoundaryState",
    "DensityState",
    "PullbackState",
    "evaluate_state",
    "parse_state",
]

_TOL = 1e-12


def _sphere_point(x, d: int | None = None) -> np.ndarray:
    x = np.asarray(x, dtype=complex).reshape(-1)
    if d is not None and x.shape[0] != d:
        raise InputError(f"point must have {d} complex coordinates")
    if abs(np.linalg.norm(x) - 1) > _TOL:
        raise InputError(f"point {x} is not on the unit sphere (|x| = {np.linalg.norm(x)!r})")
    return x


def _density(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InputError("density matrix must be square")
    if not np.allclose(rho, rho.conj().T, atol=_TOL, rtol=0):
        raise InputError("density matrix must be Hermitian")
    if abs(np.trace(rho).real - 1) > _TOL or abs(np.trace(rho).imag) > _TOL:
        raise InputError(f"density matrix must have trace 1, got {np.trace(rho)}")
    if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < -_TOL:
        raise InputError("density matrix must be positive semidefinite")
    return rho


@dataclass(frozen=True, eq=False)
class PointState:
    x: np.ndarray
    side = "C"

    def __post_init__(self):
        object.__setattr__(self, "x", _sphere_point(self.x))

    @classmethod
    def from_real(cls, coords) -> "PointState":
        return cls(from_real(np.asarray(coords, dtype=float))[0])

    @property
    def d(self) -> int:
        return self.x.shape[0]

    def __repr__(self):
        return f"PointState({np.round(self.x, 6).tolist()})"


@dataclass(frozen=True, eq=False)
class BoundaryState:
    x: np.ndarray
    side = "T"

    def __post_init__(self):
        object.__setattr__(self, "x", _sphere_point(self.x))

    @property
    def d(self) -> int:
        return self.x.shape[0]

    def __repr__(self):
        return f"BoundaryState({np.round(self.x, 6).tolist()})"


@dataclass(frozen=True, eq=False)
class DensityState:
    rho: np.ndarray
    side = "T"

    def __post_init__(self):
        object.__setattr__(self, "rho", _density(self.rho))

    @classmethod
    def vector(cls, j: int, M: int) -> "DensityState":
        """Vector state ``e_j e_j*`` (1-based) on an ``M``-dimensional truncation."""
        if not 1 <= j <= M:
            raise InputError(f"vector index {j} outside 1..{M}")
        rho = np.zeros((M, M), dtype=complex)
        rho[j - 1, j - 1] = 1
        return cls(rho)

    @classmethod
    def rank_one(cls, psi) -> "DensityState":
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @property
    def M(self) -> int:
        return self.rho.shape[0]

    def __repr__(self):
        return f"DensityState(M={self.M})"


@dataclass(frozen=True, eq=False)
class PullbackState:
    """``rho o sigma``: a state on C(S) induced by a density matrix."""

    rho: np.ndarray
    side = "C"

    def __post_init__(self):
        object.__setattr__(self, "rho", _density(self.rho))

    @classmethod
    def of(cls, state: DensityState) -> "PullbackState":
        return cls(state.rho)

    @property
    def M(self) -> int:
        return self.rho.shape[0]

    def __repr__(self):
        return f"PullbackState(M={self.M})"


def _trace_against(rho: np.ndarray, A: np.ndarray) -> complex:
    M = rho.shape[0]
    if M > A.shape[0]:
        raise InputError(f"density matrix of size {M} exceeds the {A.shape[0]}-dimensional truncation")
    return complex(np.sum(rho * A[:M, :M].T))


def evaluate_state(state, T, f: PolynomialSymbol) -> float:
    """Value of ``state`` on the pair ``(T, f)``; ``T`` is a :class:`LipElement`."""
    if isinstance(state, PointState):
        if state.d != f.d:
            raise InputError("state and symbol dimensions differ")
        val = f.evaluate(state.x)
    elif isinstance(state, PullbackState):
        val = _trace_against(state.rho, splitting_sigma(f, T.weight, T.cutoff).entries)
    elif isinstance(state, DensityState):
        val = _trace_against(state.rho, T.matrix)
    elif isinstance(state, BoundaryState):
        val = T.f.evaluate(state.x)
    else:
        raise InputError(f"unknown state type {type(state).__name__}")
    return float(np.real(val))


def parse_state(spec: str, d: int, M: int):
    """Parse ``point:x1,y1,...``, ``boundary:...``, ``vector:j``, ``pullback:j`` or ``density:FILE.json``.

    Density files hold ``{"re": [[...]], "im": [[...]]}`` (``im`` optional).
    """
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if not arg:
        raise InputError(f"state spec {spec!r} needs a ':' argument")
    try:
        if kind in ("point", "boundary"):
            coords = [float(t) for t in arg.split(",")]
            if len(coords) != 2 * d:
                raise InputError(f"point needs {2 * d} real coordinates, got {len(coords)}")
            x = from_real(np.array(coords))[0]
            return PointState(x) if kind == "point" else BoundaryState(x)
        if kind in ("vector", "pullback"):
            st = DensityState.vector(int(arg), M)
            return st if kind == "vector" else PullbackState.of(st)
        if kind == "density":
            data = json.loads(Path(arg).read_text())
            rho = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data.get("im", 0.0), dtype=float)
            return DensityState(rho)
    except (ValueError, KeyError, OSError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad state spec {spec!r}: {exc}") from None
    raise InputError(f"unknown state kind {kind!r} in {spec!r}")
