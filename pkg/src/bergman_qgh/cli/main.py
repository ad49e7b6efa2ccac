"""Command-line front end.

Exit codes: 0 success, 2 input error (bad flag, value or symbol), 1 internal
invariant violation such as a failed lemma check.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..bergman import BergmanWeight, basis_coeff, kernel_series_check, monomial_norm_sq
from ..errors import InputError, InvariantViolation, SymbolParseError
from ..harmonic import harmonic_extension
from ..multiindex import count_up_to_degree, multi_indices_up_to
from ..quantum_metric import (
    BridgeConfig,
    StateFamily,
    default_nets,
    gamma,
    hausdorff_estimate,
    lemma_bound_check,
    parse_state,
    qgh_upper_bound,
    rho_distance_lp,
)
from ..sphere import SphereSampler
from ..toeplitz import build, commutator_decay, norm_interval, u_conjugation_difference
from .grammar import parse_symbol
from .output import canonical_json, csv_text, dumps

__all__ = ["run", "main", "RunConfig"]


def _alpha(text) -> int | float:
    """Integral values stay integers so rational mode is available."""
    try:
        x = float(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"invalid alpha {text!r}") from None
    return int(x) if x.is_integer() else x


def _alpha_list(text) -> list:
    if isinstance(text, (list, tuple)):
        return [_alpha(t) for t in text]
    parts = [t for t in str(text).split(",") if t.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("alpha list is empty")
    return [_alpha(t) for t in parts]


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    low = str(text).lower()
    if low in ("1", "true", "yes"):
        return True
    if low in ("0", "false", "no"):
        return False
    raise argparse.ArgumentTypeError(f"invalid boolean {text!r}")


# name -> (type, default, help); a default of ``...`` marks a required option
_COMMON = {"format": (str, "csv", "output format: csv or json"), "output": (str, None, "write to FILE instead of stdout")}

COMMANDS: dict[str, dict] = {
    "weights": {
        "d": (int, 1, "complex dimension"),
        "alpha": (_alpha, ..., "weight parameter alpha >= d"),
        "degree": (int, ..., "largest total degree"),
    },
    "toeplitz": {
        "symbol": (str, ..., "symbol expression, e.g. '(1/2)*z1^2*zb2'"),
        "d": (int, 1, "complex dimension"),
        "alpha": (_alpha, ..., "weight parameter"),
        "degree": (int, ..., "truncation degree D"),
        "exact": (_bool, False, "rational/surd entries (integer alpha)"),
        "format": (str, "json", "output format: json or csv"),
    },
    "harmonic-extend": {
        "symbol": (str, ..., "real boundary polynomial"),
        "d": (int, 1, "complex dimension"),
        "exact": (_bool, False, "emit rational coefficients"),
        "n_points": (int, 2000, "sphere samples for the residual"),
        "seed": (int, 0, "sampling seed"),
        "format": (str, "json", "output format (json only)"),
    },
    "gamma": {
        "alpha": (_alpha, ..., "alpha >= 1"),
        "tol": (float, 1e-12, "enclosure width"),
    },
    "lemma-check": {
        "alpha": (_alpha, ..., "alpha >= 1"),
        "trials": (int, 1000, "number of random operators"),
        "seed": (int, 0, "master seed"),
        "support": (int, 20, "support block size"),
    },
    "rho": {
        "d": (int, 1, "complex dimension"),
        "alpha": (_alpha, ..., "weight parameter"),
        "mu": (str, ..., "state spec, e.g. point:1,0 | boundary:.. | vector:j | pullback:j | density:FILE.json"),
        "nu": (str, ..., "second state spec"),
        "degree": (int, 2, "degree of the polynomial family"),
        "pairs": (int, 512, "Lipschitz constraint pairs"),
        "seed": (int, 0, "sampling seed"),
        "cutoff": (int, 8, "Toeplitz truncation degree"),
        "n_points": (int, 48, "random constraint points"),
        "n0": (_alpha, None, "bridge anchor (default alpha)"),
    },
    "qgh": {
        "d": (int, 1, "complex dimension"),
        "alpha_list": (_alpha_list, [1, 2, 4, 8], "comma-separated alphas"),
        "degree": (int, 2, "degree of the polynomial family"),
        "pairs": (int, 512, "Lipschitz constraint pairs"),
        "seed": (int, 0, "seed for nets and sampling"),
        "cutoff": (int, 12, "Toeplitz truncation degree"),
        "n_points": (int, 48, "random constraint points"),
        "n_vectors": (int, 5, "vector states in the net"),
        "n_random": (int, 5, "random rank-one states in the net"),
        "n_point_states": (int, 3, "point masses in the net"),
    },
    "kernel-check": {
        "d": (int, 1, "complex dimension"),
        "alpha": (_alpha, ..., "weight parameter"),
        "degree": (int, 40, "series truncation"),
        "n_points": (int, 20, "random interior points"),
        "seed": (int, 0, "sampling seed"),
        "radius": (float, 0.7, "points drawn from the ball of this radius"),
    },
    "commutator-decay": {
        "phi": (str, "zb1", "first symbol"),
        "psi": (str, "z1", "second symbol"),
        "d": (int, 1, "complex dimension"),
        "alpha": (_alpha, ..., "weight parameter"),
        "degree": (int, 20, "truncation degree"),
        "exact": (_bool, False, "rational mode"),
    },
    "u-diff": {
        "symbol": (str, "z1", "symbol"),
        "d": (int, 1, "complex dimension"),
        "n": (_alpha, ..., "target weight n > d_weight"),
        "d_weight": (_alpha, None, "reference weight (default d)"),
        "degree": (int, 50, "truncation degree"),
    },
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved parameters of one invocation."""

    command: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        p = self.params
        if "d" in p and p["d"] < 1:
            raise InputError(f"d must be >= 1, got {p['d']}")
        d = p.get("d", 1)
        for key in ("alpha",):
            if key in p and p[key] < d:
                raise InputError(f"alpha must be >= d = {d}, got {p[key]}")
        for a in p.get("alpha_list", []):
            if a < d:
                raise InputError(f"alpha must be >= d = {d}, got {a}")
        fmt = p.get("format")
        if fmt not in (None, "csv", "json"):
            raise InputError(f"unknown format {fmt!r}")

    def to_dict(self) -> dict:
        out = {"command": self.command}
        out.update({k: v for k, v in self.params.items() if k != "output"})
        return out

    def canonical(self) -> str:
        return canonical_json(self.to_dict())


def _options(command: str) -> dict:
    opts = dict(_COMMON)
    opts.update(COMMANDS[command])
    return opts


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bergman-qgh", description="Toeplitz algebras and quantum Gromov-Hausdorff bounds")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, argument_default=argparse.SUPPRESS)
        sp.add_argument("--config", help="JSON file of defaults; explicit flags win")
        for key, (typ, default, help_text) in _options(name).items():
            flag = "--" + key.replace("_", "-")
            shown = "required" if default is ... else f"default {default}"
            if typ is _bool:
                sp.add_argument(flag, dest=key, action="store_true", help=f"{help_text}")
            else:
                sp.add_argument(flag, dest=key, type=typ, help=f"{help_text} ({shown})")
    return parser


def _coerce(command: str, key: str, value):
    typ = _options(command)[key][0]
    if value is None:
        return None
    try:
        if typ is int:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError
            return int(value) if not isinstance(value, str) else int(value, 10)
        if typ is float:
            return float(value)
        if typ is str:
            return str(value)
        return typ(value)
    except (ValueError, TypeError, argparse.ArgumentTypeError):
        raise InputError(f"bad value for {key}: {value!r}") from None


def resolve(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    command = ns.pop("command")
    opts = _options(command)
    merged = {k: v[1] for k, v in opts.items()}
    cfg_path = ns.pop("config", None)
    if cfg_path:
        try:
            data = json.loads(Path(cfg_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {cfg_path}: {exc}") from None
        if not isinstance(data, dict):
            raise InputError("config file must hold a JSON object")
        for raw_key, value in data.items():
            key = raw_key.replace("-", "_")
            if key not in opts:
                raise InputError(f"unknown config key {raw_key!r} for {command}")
            merged[key] = _coerce(command, key, value)
    merged.update(ns)
    missing = [k for k, v in merged.items() if v is ...]
    if missing:
        raise InputError("missing required option(s): " + ", ".join("--" + k.replace("_", "-") for k in missing))
    return RunConfig(command, merged)


# -- commands ---------------------------------------------------------------


def _weights(p: dict, cfg: RunConfig) -> str:
    w = BergmanWeight(p["d"], p["alpha"])
    if p["degree"] < 0:
        raise InputError("degree must be >= 0")
    rows = []
    for j, k in enumerate(multi_indices_up_to(p["degree"], w.d), start=1):
        rows.append([j, json.dumps(list(k), separators=(",", ":")), monomial_norm_sq(w, k), basis_coeff(w, k)])
    header = ["j", "multi_index", "norm_sq", "basis_coeff"]
    if p["format"] == "json":
        return dumps({"rows": [dict(zip(header, r)) for r in rows], "config": cfg.to_dict()}) + "\n"
    return csv_text(header, rows, cfg.to_dict())


def _toeplitz(p: dict, cfg: RunConfig) -> str:
    w = BergmanWeight(p["d"], p["alpha"])
    phi = parse_symbol(p["symbol"], p["d"])
    T = build(w, phi if p["exact"] else phi.to_float(), p["degree"], exact=p["exact"])
    ni = norm_interval(T)
    if p["format"] == "csv":
        rows = []
        for r, c in zip(*np.nonzero(T.entries)):
            z = T.entries[r, c]
            row = [int(r) + 1, int(c) + 1, float(z.real), float(z.imag)]
            if T.exact_entries is not None:
                row.append(str(T.exact_entries[(int(r), int(c))]))
            rows.append(row)
        header = ["row", "col", "re", "im"] + (["exact"] if p["exact"] else [])
        return csv_text(header, rows, cfg.to_dict())
    out = T.to_dict()
    out["norm_interval"] = ni.to_dict()
    out["config"] = cfg.to_dict()
    return dumps(out) + "\n"


def _harmonic(p: dict, cfg: RunConfig) -> str:
    if p["format"] != "json":
        raise InputError("harmonic-extend only emits JSON")
    f = parse_symbol(p["symbol"], p["d"])
    sol = harmonic_extension(f)
    ext = sol.extension if p["exact"] else sol.extension.to_float()
    residual = sol.boundary_residual(SphereSampler(p["d"], p["n_points"], p["seed"]))
    out = {
        "extension": ext.to_dict(),
        "laplacian_zero": sol.laplacian_zero,
        "boundary_residual_max": residual,
        "config": cfg.to_dict(),
    }
    return dumps(out) + "\n"


def _gamma(p: dict, cfg: RunConfig) -> str:
    g = gamma(p["alpha"], p["tol"])
    if p["format"] == "json":
        return dumps({"alpha": p["alpha"], "lo": g.lo, "hi": g.hi, "width": g.width, "config": cfg.to_dict()}) + "\n"
    return csv_text(["alpha", "lo", "hi", "width"], [[p["alpha"], g.lo, g.hi, g.width]], cfg.to_dict())


def _lemma(p: dict, cfg: RunConfig) -> str:
    res = lemma_bound_check(p["alpha"], trials=p["trials"], seed=p["seed"], support_size=p["support"])
    data = res.to_dict()
    if p["format"] == "json":
        text = dumps({**data, "config": cfg.to_dict()}) + "\n"
    else:
        text = csv_text(list(data), [list(data.values())], cfg.to_dict())
    if not res.passed:
        raise _Failed(text, f"lemma check failed: {res.violations} violation(s), max ratio {res.max_ratio!r}")
    return text


def _bridge(p: dict, alpha) -> BridgeConfig:
    return BridgeConfig.make(p["d"], alpha, n0=p.get("n0"), seed=p["seed"])


def _rho(p: dict, cfg: RunConfig) -> str:
    bc = _bridge(p, p["alpha"])
    M = count_up_to_degree(p["cutoff"], p["d"])
    mu = parse_state(p["mu"], p["d"], M)
    nu = parse_state(p["nu"], p["d"], M)
    fam = StateFamily(degree=p["degree"], cutoff=p["cutoff"], n_points=p["n_points"], pairs=p["pairs"], seed=p["seed"])
    res = rho_distance_lp(mu, nu, fam, bc)
    header = ["mu", "nu", "value", "u", "v"]
    row = [p["mu"], p["nu"], res.value, res.u, res.v]
    if p["format"] == "json":
        return dumps({**dict(zip(header, row)), "g": res.g.to_dict(), "f": res.f.to_dict(), "config": cfg.to_dict()}) + "\n"
    return csv_text(header, [row], cfg.to_dict())


def _qgh(p: dict, cfg: RunConfig) -> str:
    rows = []
    for alpha in p["alpha_list"]:
        bc = _bridge({**p, "n0": None}, alpha)
        netA, netB = default_nets(bc.weight, p["cutoff"], p["n_vectors"], p["n_random"], p["n_point_states"], p["seed"])
        fam = StateFamily(degree=p["degree"], cutoff=p["cutoff"], n_points=p["n_points"], pairs=p["pairs"], seed=p["seed"])
        h = hausdorff_estimate(netA, netB, fam, bc)
        bound = qgh_upper_bound(alpha, d=p["d"])
        rows.append([alpha, h.value, bound.lo, bound.hi])
    header = ["alpha", "lp_hausdorff_estimate", "upper_bound_2gamma_lo", "upper_bound_2gamma_hi"]
    if p["format"] == "json":
        return dumps({"rows": [dict(zip(header, r)) for r in rows], "config": cfg.to_dict()}) + "\n"
    return csv_text(header, rows, cfg.to_dict())


def _ball_points(d: int, n: int, radius: float, seed: int) -> np.ndarray:
    if not 0 < radius < 1:
        raise InputError("radius must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, 2 * d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = radius * rng.random(n) ** (1 / (2 * d))
    x = g * r[:, None]
    return x[:, 0::2] + 1j * x[:, 1::2]


def _kernel(p: dict, cfg: RunConfig) -> str:
    w = BergmanWeight(p["d"], p["alpha"])
    Z = _ball_points(w.d, p["n_points"], p["radius"], p["seed"])
    V = _ball_points(w.d, p["n_points"], p["radius"], p["seed"] + 1)
    rows = []
    for i, (z, v) in enumerate(zip(Z, V), start=1):
        kc = kernel_series_check(w, z, v, p["degree"])
        rows.append([i, kc.partial_sum.real, kc.partial_sum.imag, kc.closed_form.real, kc.closed_form.imag, kc.gap])
    header = ["point", "series_re", "series_im", "closed_re", "closed_im", "gap"]
    if p["format"] == "json":
        return dumps({"rows": [dict(zip(header, r)) for r in rows], "config": cfg.to_dict()}) + "\n"
    return csv_text(header, rows, cfg.to_dict())


def _decay_rows(points, cfg: RunConfig, fmt: str) -> str:
    header = ["degree", "max_abs", "exact"]
    rows = [[pt.degree, pt.max_abs, pt.exact] for pt in points]
    if fmt == "json":
        return dumps({"rows": [pt.to_dict() for pt in points], "config": cfg.to_dict()}) + "\n"
    return csv_text(header, rows, cfg.to_dict())


def _commutator(p: dict, cfg: RunConfig) -> str:
    w = BergmanWeight(p["d"], p["alpha"])
    phi = parse_symbol(p["phi"], p["d"])
    psi = parse_symbol(p["psi"], p["d"])
    if not p["exact"]:
        phi, psi = phi.to_float(), psi.to_float()
    return _decay_rows(commutator_decay(w, phi, psi, p["degree"], exact=p["exact"]), cfg, p["format"])


def _udiff(p: dict, cfg: RunConfig) -> str:
    phi = parse_symbol(p["symbol"], p["d"]).to_float()
    pts = u_conjugation_difference(phi, p["n"], p["d_weight"], p["degree"])
    return _decay_rows(pts, cfg, p["format"])


_HANDLERS = {
    "weights": _weights,
    "toeplitz": _toeplitz,
    "harmonic-extend": _harmonic,
    "gamma": _gamma,
    "lemma-check": _lemma,
    "rho": _rho,
    "qgh": _qgh,
    "kernel-check": _kernel,
    "commutator-decay": _commutator,
    "u-diff": _udiff,
}


class _Failed(Exception):
    """Output was produced but a checked property failed."""

    def __init__(self, text: str, message: str):
        super().__init__(message)
        self.text = text


def _emit(text: str, target: str | None, stdout) -> None:
    if target:
        Path(target).write_text(text)
    else:
        stdout.write(text)


def run(argv=None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code instead of exiting."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    cfg = None
    try:
        if any(a in ("-h", "--help") for a in argv):
            build_parser().parse_args(argv)
        cfg = resolve(argv)
        text = _HANDLERS[cfg.command](cfg.params, cfg)
        _emit(text, cfg.params.get("output"), stdout)
        return 0
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except SymbolParseError as exc:
        stderr.write(f"error: malformed symbol at byte {exc.offset}: {exc}\n")
        return 2
    except InputError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except _Failed as exc:
        _emit(exc.text, cfg.params.get("output") if cfg else None, stdout)
        stderr.write(f"invariant violation: {exc}\n")
        return 1
    except InvariantViolation as exc:
        stderr.write(f"invariant violation: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
