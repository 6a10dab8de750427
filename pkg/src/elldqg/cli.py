"""Command-line front end: `verify <check>` campaigns and single `eval` values.

Settings are layered: built-in defaults, then a key=value config file, then
the ELLDQG_SEED environment variable (seed only), then explicit flags.
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import sys

import numpy as np

from .campaign import SUBCOMMANDS, CampaignConfig, report, run
from .ehs import NonTerminatingError, VParams, v_series
from .elliptic_core import ModulusParams, theta
from .pairing.closed_form import pair_matrix_matrix_closed
from .pairing.matrix import t
from .rmatrix import PoleError, elliptic_R, entry, rational_R
from .sampling import CampaignAbort

SEED_ENV = "ELLDQG_SEED"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def read_config_file(path: str) -> dict:
    """Parse `key = value` lines (# comments allowed) into a dict of strings."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    parser.optionxform = str
    try:
        with open(path) as fh:
            parser.read_string("[campaign]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return dict(parser["campaign"])


def build_config(args: argparse.Namespace, environ=os.environ) -> CampaignConfig:
    values: dict = {}
    tolerances: dict = {}
    sample_counts: dict = {}
    if args.config:
        for key, raw in read_config_file(args.config).items():
            key = key.replace("-", "_")
            if key.startswith("tol."):
                tolerances[key[4:].replace("_", "-")] = float(raw)
            elif key.startswith("samples."):
                sample_counts[key[8:].replace("_", "-")] = int(raw)
            elif key in ("p", "q"):
                values[key] = float(raw)
            elif key in ("seed", "samples", "max_mn"):
                values[key] = int(raw)
            elif key in ("output", "json"):
                values["output"] = raw
            else:
                raise ConfigError(f"unknown config key {key!r}")
    if environ.get(SEED_ENV):
        try:
            values["seed"] = int(environ[SEED_ENV])
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV} must be an integer") from exc
    for key in ("p", "q", "seed", "samples", "max_mn"):
        if getattr(args, key, None) is not None:
            values[key] = getattr(args, key)
    if getattr(args, "json", None):
        values["output"] = args.json
    try:
        return CampaignConfig(tolerances=tolerances, sample_counts=sample_counts, **values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _fmt(v: complex) -> str:
    v = complex(v)
    return f"{v.real:.16g}{v.imag:+.16g}j"


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    try:
        results = run(args.check, cfg)
    except CampaignAbort as exc:
        print(f"campaign aborted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rep = report(cfg, results)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark} {r.check:34s} n={r.samples:<6d} max={r.max_residual:.3e} tol={r.tolerance:.0e} "
              f"t={r.wall_time:.2f}s resampled={r.resampled}/{r.draws}")
    print(f"status: {rep['status']}")
    if cfg.output:
        with open(cfg.output, "w") as fh:
            json.dump(rep, fh, indent=2)
    return EXIT_OK if rep["status"] == "pass" else EXIT_FAIL


def cmd_eval(args: argparse.Namespace) -> int:
    p = args.p if args.p is not None else 0.2
    q = args.q if args.q is not None else 0.5
    try:
        params = ModulusParams(p, q)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    what = args.what
    try:
        if what == "theta":
            print(_fmt(theta(args.z, p)))
        elif what == "rmatrix":
            R = rational_R(args.lam, q) if args.rational else elliptic_R(args.lam, args.z, params)
            if args.entry:
                print(_fmt(entry(R, *args.entry)))
            else:
                for row in R:
                    print(" ".join(_fmt(v) for v in row))
        elif what == "vseries":
            print(_fmt(v_series(VParams(args.a1, tuple(args.params), params))))
        elif what == "pairing":
            M, r, s = args.first
            N, k, j = args.second
            op = pair_matrix_matrix_closed(t(M, r, s, args.w), t(N, k, j, args.z), params)
            coeff = 0j if op.is_zero else complex(np.asarray(op(np.array([args.lam])))[0])
            shift = 0 if op.is_zero else op.shift
            print(f"{_fmt(coeff)} T_{shift}")
    except (PoleError, NonTerminatingError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=float, help="elliptic nome, in (0, 1); default 0.2")
    sp.add_argument("--q", type=float, help="deformation parameter, in (0, 1); default 0.5")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="elldqg", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("check", choices=SUBCOMMANDS)
    _add_common(v)
    v.add_argument("--samples", type=int, help="sample points per check (overrides built-in counts)")
    v.add_argument("--seed", type=int, help=f"RNG seed; also settable through {SEED_ENV}")
    v.add_argument("--max-mn", dest="max_mn", type=int, help="largest M, N for matrix-element checks (default 3)")
    v.add_argument("--json", help="write the JSON report to this path")
    v.add_argument("--config", help="key = value file with the same keys as the flags, "
                   "plus tol.<check> and samples.<check>")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate a single quantity")
    e.add_argument("what", choices=("theta", "rmatrix", "vseries", "pairing"))
    _add_common(e)
    e.add_argument("--z", type=complex, default=0.7 + 0.2j, help="argument / spectral parameter")
    e.add_argument("--w", type=complex, default=1.1 - 0.3j, help="first-slot spectral parameter")
    e.add_argument("--lam", type=complex, default=0.37 + 0.05j, help="dynamical variable")
    e.add_argument("--rational", action="store_true", help="rmatrix: use the rational limit")
    e.add_argument("--entry", type=int, nargs=4, metavar=("A", "B", "X", "Y"),
                   help="rmatrix: print R^{ab}_{xy}, the e_x e_y coefficient of R(e_a e_b) (indices +-1)")
    e.add_argument("--a1", type=complex, default=0.3 + 0.1j, help="vseries: leading parameter")
    e.add_argument("--params", type=complex, nargs="*", default=(), help="vseries: trailing parameters")
    e.add_argument("--first", type=int, nargs=3, default=(1, 1, 1), metavar=("M", "R", "S"))
    e.add_argument("--second", type=int, nargs=3, default=(1, 1, 1), metavar=("N", "K", "J"))
    e.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
