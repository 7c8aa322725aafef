"""Command line entry point: ``modp-llc {verify,act,llc,tree,explore}``.

Exit codes: 0 success (all checks passed), 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .comparison import (
    SUITES,
    explore_kernel_image,
    flip,
    phi,
    project_V0,
    project_Vp1,
    psi_r,
    theta,
    verify_suite,
)
from .fields import GF
from .inductions import (
    T10,
    T12,
    T_spherical,
    Tm10,
    SmoothCharSymbol,
    act_g,
    element_from_json,
    element_to_json,
    iwahori_indicator,
)
from .llc import correspondence
from .padic import Mat2
from .tree import VertexKey, to_dot, tree

PRIMES_ENV = "MODP_LLC_PRIMES"
MAX_P_ENV = "MODP_LLC_MAX_P"
DEFAULT_PRIMES = (2, 3, 5)

OPERATORS = {
    "T": T_spherical,
    "T10": T10,
    "T12": T12,
    "Tm10": Tm10,
    "theta": theta,
    "phi": phi,
    "psi_r": psi_r,
    "flip": flip,
    "project_V0": project_V0,
    "project_Vp1": project_Vp1,
}

_COMMON_DEFAULTS = {"p": None, "ext_degree": 1, "seed": 0, "radius": 2, "trials": 20, "format": None}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    p: int | None
    ext_degree: int
    seed: int
    radius: int
    trials: int
    format: str

    @classmethod
    def from_args(cls, args, default_format: str) -> CliConfig:
        max_p = int(os.environ.get(MAX_P_ENV, "13"))
        if args.p is not None:
            _check_prime(args.p, max_p)
        if args.ext_degree < 1:
            raise UsageError("--ext-degree must be >= 1")
        if args.trials < 1:
            raise UsageError("--trials must be >= 1")
        if args.radius < 0:
            raise UsageError("--radius must be >= 0")
        return cls(args.p, args.ext_degree, args.seed, args.radius, args.trials, args.format or default_format)


def _check_prime(p: int, max_p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise UsageError(f"p={p} is not prime")
    if p > max_p:
        raise UsageError(f"p={p} exceeds the configured maximum {max_p}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    s = argparse.SUPPRESS
    parser.add_argument("--p", type=int, default=s, help="the prime")
    parser.add_argument("--ext-degree", type=int, default=s, help="coefficients in F_{p^k}")
    parser.add_argument("--seed", type=int, default=s)
    parser.add_argument("--radius", type=int, default=s)
    parser.add_argument("--trials", type=int, default=s)
    parser.add_argument("--format", choices=["json", "text", "dot"], default=s)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modp-llc", description=__doc__.splitlines()[0])
    _add_common(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    _add_common(v)
    v.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    v.add_argument("--with-7", action="store_true", help="add p=7 to the default prime list")

    a = sub.add_parser("act", help="apply an operator to an element given as JSON")
    _add_common(a)
    a.add_argument("--element", help="JSON file ('-' for stdin); default: the base edge indicator")
    a.add_argument("--op", choices=list(OPERATORS))
    a.add_argument("--matrix", help="translate by g first, as JSON [[a, b], [c, d]]")

    lc = sub.add_parser("llc", help="both sides of the correspondence for (r, lambda, eta)")
    _add_common(lc)
    lc.add_argument("--r", type=int, required=True)
    lc.add_argument("--lambda", dest="lam", default="0", help="integer, or comma separated F_q coefficients")
    lc.add_argument("--eta-t", default="1", help="unramified parameter of eta")
    lc.add_argument("--eta-a", type=int, default=0, help="tame exponent of eta")
    lc.add_argument("--identify-frobenius", action="store_true", help="identify c with p*c on the Galois side")

    t = sub.add_parser("tree", help="balls, neighbours and supports of the Bruhat-Tits tree")
    _add_common(t)
    t.add_argument("mode", choices=["ball", "neighbors", "support"])
    t.add_argument("--vertex", help="vertex JSON for 'neighbors' (default: base vertex)")
    t.add_argument("--element", help="Iwahori element JSON for 'support' (default: base edge indicator)")

    x = sub.add_parser("explore", help="truncated Ker T12 / Im Tm10 dimensions (exploratory)")
    _add_common(x)
    x.add_argument("--r", type=int, required=True)
    return parser


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from None


def _scalar(text: str, field):
    try:
        parts = [int(x) for x in str(text).split(",")]
    except ValueError:
        raise UsageError(f"bad field element {text!r}") from None
    return field(parts[0]) if len(parts) == 1 else field(parts)


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write(_text(obj) + "\n")


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in obj)
    return f"{pad}{obj}"


def _primes(cfg: CliConfig, with_7: bool) -> list[int]:
    if cfg.p is not None:
        return [cfg.p]
    env = os.environ.get(PRIMES_ENV)
    if env:
        try:
            primes = [int(x) for x in env.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"{PRIMES_ENV} must be a comma separated list of primes") from None
        max_p = int(os.environ.get(MAX_P_ENV, "13"))
        for p in primes:
            _check_prime(p, max_p)
    else:
        primes = list(DEFAULT_PRIMES)
    if with_7 and 7 not in primes:
        primes.append(7)
    return primes


def cmd_verify(cfg: CliConfig, suite: str, with_7: bool, out) -> int:
    reports = [verify_suite(p, cfg.radius, cfg.trials, cfg.seed, suite) for p in _primes(cfg, with_7)]
    ok = all(r.ok for r in reports)
    if cfg.format == "json":
        doc = {"schema": 1, "ok": ok, "reports": [r.to_json() for r in reports]}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for r in reports:
            out.write(r.to_tap())
    return 0 if ok else 1


def _load_element(path: str | None, cfg: CliConfig):
    if path is None:
        p = cfg.p or 2
        return iwahori_indicator(p, field=GF(p, cfg.ext_degree))
    try:
        x = element_from_json(_read_json(path))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.p is not None and x.p != cfg.p:
        raise UsageError(f"element is over p={x.p} but --p {cfg.p} was given")
    return x


def cmd_act(cfg: CliConfig, element: str | None, op: str | None, matrix: str | None, out) -> int:
    x = _load_element(element, cfg)
    try:
        if matrix is not None:
            g = Mat2.from_json(json.loads(matrix), x.p)
            if g.det() == 0:
                raise UsageError("the matrix is singular")
            x = act_g(g, x)
        if op is not None:
            x = OPERATORS[op](x)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"{op or 'act'}: {exc}") from None
    _emit(element_to_json(x), "json" if cfg.format == "dot" else cfg.format, out)
    return 0


def cmd_llc(cfg: CliConfig, r: int, lam: str, eta_t: str, eta_a: int, identify: bool, out) -> int:
    p = cfg.p or 3
    if not 0 <= r <= p - 1:
        raise UsageError(f"--r must lie in 0..{p - 1}")
    field = GF(p, cfg.ext_degree)
    t = _scalar(eta_t, field)
    if not t:
        raise UsageError("--eta-t must be nonzero")
    doc = correspondence(p, r, _scalar(lam, field), SmoothCharSymbol(t, eta_a), identify)
    _emit(doc, "json" if cfg.format == "dot" else cfg.format, out)
    return 0


def cmd_tree(cfg: CliConfig, mode: str, vertex: str | None, element: str | None, out) -> int:
    p = cfg.p or 2
    T = tree(p)
    if mode == "ball":
        verts = T.ball(cfg.radius)
        edges = T.edge_ball(cfg.radius)
        if cfg.format == "dot":
            out.write(to_dot(verts, edges, name=f"ball_p{p}_r{cfg.radius}"))
        else:
            _emit({"p": p, "radius": cfg.radius, "vertices": [v.to_json() for v in verts],
                   "edges": [e.to_json() for e in edges]}, cfg.format, out)
        return 0
    if mode == "neighbors":
        try:
            v = VertexKey.from_json(json.loads(vertex), p) if vertex else T.base
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            raise UsageError(f"bad vertex: {exc}") from None
        nbrs = T.neighbors(v)
        if cfg.format == "dot":
            out.write(to_dot([v] + nbrs, [e for e in T.out_edges(v)], name="neighbors", highlight={v: "red"}))
        else:
            _emit({"p": p, "vertex": v.to_json(), "neighbors": [u.to_json() for u in nbrs]}, cfg.format, out)
        return 0
    x = _load_element(element, cfg)
    if x.__class__.__name__ != "IwahoriElement" or not x.trivial_character:
        raise UsageError("support mode needs an Iwahori element with trivial character")
    y = T12(T10(x))
    colored = {e: "red" for e in x.support}
    colored.update({e: "blue" for e in y.support if e not in colored})
    radius = max([cfg.radius] + [T.distance_from_base(v) for e in colored for v in (e.origin, e.terminal)])
    if cfg.format == "dot":
        out.write(to_dot(T.ball(radius), T.edge_ball(radius), colored, name=f"support_p{x.p}"))
    else:
        _emit({"p": x.p, "red": [e.to_json() for e in x.support], "blue": [e.to_json() for e in y.support]},
              cfg.format, out)
    return 0


def cmd_explore(cfg: CliConfig, r: int, out) -> int:
    p = cfg.p or 3
    if not 0 < r < p - 1:
        raise UsageError("explore needs 0 < r < p - 1")
    _emit(explore_kernel_image(p, r, cfg.radius), "json" if cfg.format == "dot" else cfg.format, out)
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for k, v in _COMMON_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    default_format = {"verify": "text", "tree": "dot"}.get(args.command, "json")
    try:
        cfg = CliConfig.from_args(args, default_format)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, args.with_7, out)
        if args.command == "act":
            return cmd_act(cfg, args.element, args.op, args.matrix, out)
        if args.command == "llc":
            return cmd_llc(cfg, args.r, args.lam, args.eta_t, args.eta_a, args.identify_frobenius, out)
        if args.command == "tree":
            return cmd_tree(cfg, args.mode, args.vertex, args.element, out)
        return cmd_explore(cfg, args.r, out)
    except UsageError as exc:
        print(f"modp-llc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())


def main_exit() -> None:
    sys.exit(main())
