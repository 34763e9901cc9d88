"""Command-line front end reproducing the tables and verification reports.

Subcommands: mgamma, clr, lt, cdsigma, asymptotic, verify, profile, table.
Every command emits one flat list of result rows in json, csv or markdown;
all three formats carry full-precision numbers so they parse identically.
Exit codes: 0 success, 2 domain error, 3 quadrature non-convergence,
4 verification failure.
"""
from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Any

from . import constants as consts
from . import verify as verify_mod
from ._parallel import parallel_map
from .errors import DomainError, PoleHitError, SharpConstantsError
from .optimizer import blaschke
from .phase import GammaParam, im_theta, re_theta
from .quadrature import QuadSpec

__all__ = ["OutputFormat", "RunConfig", "main"]

TOL_MIN = 1e-14
TOL_MAX = 1e-4

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NO_CONVERGENCE = 3
EXIT_VERIFY_FAILED = 4

TABLE_GAMMAS = (3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0)


class OutputFormat(str, Enum):
    json = "json"
    csv = "csv"
    markdown = "markdown"


@dataclass(frozen=True)
class RunConfig:
    """Resolved run options shared by all subcommands."""

    tol: float
    gamma_list: tuple[float, ...]
    format: OutputFormat
    out_path: str | None

    def __post_init__(self):
        if not (TOL_MIN <= self.tol <= TOL_MAX):
            raise DomainError(
                f"--tol must lie in [{TOL_MIN}, {TOL_MAX}] (got {self.tol!r})")

    @property
    def spec(self) -> QuadSpec:
        return QuadSpec(abs_tol=self.tol, rel_tol=100.0 * self.tol)


def _default_format() -> OutputFormat:
    return OutputFormat.markdown if sys.stdout.isatty() else OutputFormat.json


def _parse_gammas(args) -> tuple[float, ...]:
    if getattr(args, "gamma", None) is not None:
        return (args.gamma,)
    raw = getattr(args, "gamma_list", None)
    if not raw:
        raise DomainError("provide --gamma or --gamma-list")
    try:
        return tuple(float(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise DomainError(f"bad --gamma-list {raw!r}: {exc}") from None


def _config(args) -> RunConfig:
    fmt = OutputFormat(args.format) if args.format else _default_format()
    gammas = ()
    if hasattr(args, "gamma") or hasattr(args, "gamma_list"):
        gammas = _parse_gammas(args)
    return RunConfig(tol=args.tol, gamma_list=gammas, format=fmt,
                     out_path=args.out)


# ---------------------------------------------------------------------------
# rendering

def _fmt_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _sanitize(obj: Any) -> Any:
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def render(payload: dict, fmt: OutputFormat) -> str:
    rows = payload["results"]
    if fmt is OutputFormat.json:
        return json.dumps(_sanitize(payload), indent=2, allow_nan=False) + "\n"
    columns = list(rows[0].keys()) if rows else []
    if fmt is OutputFormat.csv:
        lines = [",".join(columns)]
        lines += [",".join(_fmt_value(row.get(c)) for c in columns) for row in rows]
        return "\n".join(lines) + "\n"
    cells = [[_fmt_value(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(col), *(len(r[i]) for r in cells)) if cells else len(col)
              for i, col in enumerate(columns)]
    def line(vals):
        return "| " + " | ".join(v.ljust(w) for v, w in zip(vals, widths)) + " |"
    out = [f"# {payload['command']}", "", line(columns),
           line(["-" * w for w in widths])]
    out += [line(r) for r in cells]
    return "\n".join(out) + "\n"


def _emit(payload: dict, config: RunConfig) -> None:
    text = render(payload, config.format)
    if config.out_path:
        with open(config.out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _payload(command: str, inputs: dict, rows: list[dict]) -> dict:
    err = max((row.get("err_estimate") or 0.0 for row in rows), default=0.0)
    converged = all(row.get("converged", True) is not False for row in rows)
    return {"command": command, "inputs": inputs, "results": rows,
            "err_estimate": err, "converged": converged}


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (exit_code, payload)

def _cmd_mgamma(config: RunConfig) -> tuple[int, dict]:
    spec = config.spec

    def one(g: float) -> dict:
        res = consts.m_gamma(GammaParam(g), spec)
        return {"gamma": g, "m_gamma": res.value,
                "err_estimate": res.err_estimate, "converged": res.converged}

    rows = parallel_map(one, config.gamma_list)
    payload = _payload("mgamma", {"gamma_list": list(config.gamma_list),
                                  "tol": config.tol}, rows)
    code = EXIT_OK if payload["converged"] else EXIT_NO_CONVERGENCE
    return code, payload


def _cmd_bounds(config: RunConfig, mode: str, d: int, sigma: float) -> tuple[int, dict]:
    spec = config.spec
    query = consts.PhysicalQuery(d=d, sigma=sigma)
    if mode == "clr":
        res = consts.clr_factor(query, spec)
        gamma_used = query.ratio
    elif mode == "lt":
        res = consts.lt_factor(query, spec)
        gamma_used = 2.0 + query.ratio
    else:
        res = consts.c_d_sigma(query, spec)
        gamma_used = 2.0 + query.ratio
    m = consts.m_gamma(GammaParam(gamma_used), spec)
    rows = [{"d": d, "sigma": sigma, "gamma": gamma_used, "factor": res.value,
             "m_gamma": m.value, "err_estimate": res.err_estimate,
             "converged": res.converged}]
    payload = _payload(mode, {"d": d, "sigma": sigma, "tol": config.tol}, rows)
    code = EXIT_OK if payload["converged"] else EXIT_NO_CONVERGENCE
    return code, payload


def _cmd_asymptotic(config: RunConfig) -> tuple[int, dict]:
    spec = config.spec
    clr = consts.clr_asymptotic(spec)
    rows = [{"clr_limit": clr.value, "lt_limit": clr.value / math.e,
             "err_estimate": clr.err_estimate, "converged": clr.converged}]
    payload = _payload("asymptotic", {"tol": config.tol}, rows)
    code = EXIT_OK if clr.converged else EXIT_NO_CONVERGENCE
    return code, payload


def _cmd_verify(config: RunConfig) -> tuple[int, dict]:
    spec = config.spec

    def one(g: float) -> dict:
        rep = verify_mod.run_verification(GammaParam(g), spec)
        return {"gamma": rep.gamma, "el_residual_max": rep.el_residual_max,
                "duality_gap_rel": rep.duality_gap_rel,
                "lower_sandwich": rep.lower_sandwich,
                "upper_sandwich": rep.upper_sandwich,
                "m_gamma": rep.m_value,
                "low_gamma_value": rep.low_gamma_value,
                "pass": rep.passed,
                "warnings": "; ".join(rep.warnings)}

    rows = parallel_map(one, config.gamma_list)
    payload = _payload("verify", {"gamma_list": list(config.gamma_list),
                                  "tol": config.tol}, rows)
    code = EXIT_OK if all(r["pass"] for r in rows) else EXIT_VERIFY_FAILED
    return code, payload


def _cmd_profile(config: RunConfig, gamma: float, y: float, xmax: float,
                 n: int) -> tuple[int, dict]:
    spec = config.spec
    gp = GammaParam(gamma)
    if abs(y) > 2.0:
        raise DomainError(f"profile line must satisfy |y| <= 2 (got {y!r})")
    if n < 1 or xmax <= 0:
        raise DomainError("profile requires n >= 1 and xmax > 0")

    pole_y = -(2.0 - 2.0 / gamma)
    rows = []
    for i in range(n + 1):
        x = -xmax + 2.0 * xmax * i / n
        row: dict[str, Any] = {"x": x, "abs_h": None, "arg_h": None,
                               "re_theta": None, "im_theta": None, "flag": ""}
        try:
            rt = re_theta(gp, x, y, spec)
            it = im_theta(gp, x, y, spec)
            hv = blaschke(gp, complex(x, y)) * cmath.exp(complex(rt.value, it.value))
            row.update(abs_h=abs(hv), arg_h=cmath.phase(hv),
                       re_theta=rt.value, im_theta=it.value)
        except PoleHitError:
            row["flag"] = "pole"
        rows.append(row)
    inputs = {"gamma": gamma, "y": y, "xmax": xmax, "n": n, "tol": config.tol,
              "pole_on_line": abs(y - pole_y) < 1e-12}
    return EXIT_OK, _payload("profile", inputs, rows)


def _cmd_table(config: RunConfig) -> tuple[int, dict]:
    spec = config.spec

    def mg_row(g: float) -> dict:
        res = consts.m_gamma(GammaParam(g), spec)
        return {"table": "m_gamma", "parameter": g, "value": res.value,
                "err_estimate": res.err_estimate, "converged": res.converged}

    def clr_row(g: float) -> dict:
        res = consts.clr_factor_at(g, spec)
        return {"table": "clr", "parameter": g, "value": res.value,
                "err_estimate": res.err_estimate, "converged": res.converged}

    rows = parallel_map(mg_row, TABLE_GAMMAS) + parallel_map(clr_row, TABLE_GAMMAS)
    asym = consts.clr_asymptotic(spec)
    rows.append({"table": "clr", "parameter": math.inf, "value": asym.value,
                 "err_estimate": asym.err_estimate, "converged": asym.converged})
    payload = _payload("table", {"tol": config.tol}, rows)
    code = EXIT_OK if payload["converged"] else EXIT_NO_CONVERGENCE
    return code, payload


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-12,
                        help="absolute quadrature tolerance (rel = 100x)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat],
                        default=None, help="output format (default: markdown "
                        "on a terminal, json when redirected)")
    common.add_argument("--out", default=None, help="write output to this file")

    gamma_opts = argparse.ArgumentParser(add_help=False)
    group = gamma_opts.add_mutually_exclusive_group()
    group.add_argument("--gamma", type=float, default=None)
    group.add_argument("--gamma-list", default=None,
                       help="comma-separated gamma values")

    ds_opts = argparse.ArgumentParser(add_help=False)
    ds_opts.add_argument("--d", type=int, required=True, help="dimension")
    ds_opts.add_argument("--sigma", type=float, required=True,
                         help="operator power")

    parser = argparse.ArgumentParser(
        prog="sharp-constants",
        description="Three-lines variational problem: optimal value and "
                    "CLR/LT constant bounds")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("mgamma", parents=[common, gamma_opts],
                   help="optimal value M for each gamma")
    sub.add_parser("clr", parents=[common, ds_opts],
                   help="CLR bound factor at gamma = d/sigma")
    sub.add_parser("lt", parents=[common, ds_opts],
                   help="LT bound factor at gamma = 2 + d/sigma")
    sub.add_parser("cdsigma", parents=[common, ds_opts],
                   help="(d/sigma) * M(2 + d/sigma)")
    sub.add_parser("asymptotic", parents=[common],
                   help="large-gamma limits of both factors")
    sub.add_parser("verify", parents=[common, gamma_opts],
                   help="Euler-Lagrange, duality and sandwich checks")
    prof = sub.add_parser("profile", parents=[common, gamma_opts],
                          help="sample the optimizer along a horizontal line")
    prof.add_argument("--y", type=float, required=True)
    prof.add_argument("--xmax", type=float, default=5.0)
    prof.add_argument("--n", type=int, default=100)
    sub.add_parser("table", parents=[common],
                   help="full reproduction of both published tables")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        if args.command == "mgamma":
            code, payload = _cmd_mgamma(config)
        elif args.command in ("clr", "lt", "cdsigma"):
            code, payload = _cmd_bounds(config, args.command, args.d, args.sigma)
        elif args.command == "asymptotic":
            code, payload = _cmd_asymptotic(config)
        elif args.command == "verify":
            code, payload = _cmd_verify(config)
        elif args.command == "profile":
            if len(config.gamma_list) != 1:
                raise DomainError("profile requires exactly one --gamma")
            code, payload = _cmd_profile(config, config.gamma_list[0],
                                         args.y, args.xmax, args.n)
        else:
            code, payload = _cmd_table(config)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SharpConstantsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    _emit(payload, config)
    return code


if __name__ == "__main__":
    sys.exit(main())
