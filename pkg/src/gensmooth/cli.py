"""Command-line entry point: ``gensmooth <command> [flags]``.

Every command writes a CSV table (17 significant digits) to ``--out`` or to
standard output. Exit codes: 0 success, 1 invalid parameters or usage,
2 numerical failure.
"""
from __future__ import annotations

import argparse
import configparser
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bestapprox import best_approx
from .errors import (
    DegenerateReportError,
    DomainError,
    FunctionNotFoundError,
    InvalidParameterError,
    NonConvergenceError,
    NonFiniteSampleError,
)
from .funcspace import SpaceParams, lookup, parse_p, registry_list, weighted_norm
from .modulus import DEFAULT_T_GRID, modulus
from .translation import DEFAULT_T_MAX, translate_grid
from .verifier import verify_theorem

COMMANDS = ("translate", "norm", "bestapprox", "modulus", "verify", "sweep")
# flags each command cannot run without
REQUIRED = {
    "translate": ("function_id", "t"),
    "norm": ("function_id", "p", "alpha"),
    "bestapprox": ("function_id", "p", "alpha", "n"),
    "modulus": ("function_id", "p", "alpha", "delta"),
    "verify": ("function_id", "p", "alpha", "n_max"),
    "sweep": ("config",),
}
FLAG = {"function_id": "--function", "n_max": "--nmax"}
GATED = ("bestapprox", "modulus", "verify")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    function_id: str | None = None
    p: float | None = None
    alpha: float | None = None
    n: int | None = None
    n_max: int | None = None
    delta: float | None = None
    t: float | None = None
    x: list[float] = field(default_factory=list)
    output_path: str | None = None
    allow_out_of_hypothesis: bool = False
    t_max_override: float | None = None
    t_grid: int = DEFAULT_T_GRID
    config: str | None = None

    @property
    def t_max(self) -> float:
        return DEFAULT_T_MAX if self.t_max_override is None else self.t_max_override

    @property
    def params(self) -> SpaceParams:
        return SpaceParams(self.p, self.alpha)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _p_arg(text):
    try:
        return parse_p(text)
    except (ValueError, InvalidParameterError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _parser() -> _Parser:
    ap = _Parser(prog="gensmooth", description="Weighted moduli of smoothness and best approximation.")
    ap.add_argument("--version", action="version", version=f"gensmooth {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--function", dest="function_id")
    ap.add_argument("--p", type=_p_arg, help="1 <= p, or 'inf'")
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--n", type=int)
    ap.add_argument("--nmax", dest="n_max", type=int)
    ap.add_argument("--delta", type=float)
    ap.add_argument("--t", type=float)
    ap.add_argument("--x", type=float, action="append", default=[], help="repeatable; translate only")
    ap.add_argument("--t-grid", dest="t_grid", type=int, default=DEFAULT_T_GRID)
    ap.add_argument("--t-max", dest="t_max_override", type=float)
    ap.add_argument("--out", dest="output_path")
    ap.add_argument("--allow-out-of-hypothesis", action="store_true")
    ap.add_argument("--config", help="INI file for sweep")
    return ap


def parse_args(argv) -> RunConfig:
    """Parse and validate; raises :class:`UsageError` naming the bad flag."""
    ns = _parser().parse_args(list(argv))
    cfg = RunConfig(**vars(ns))
    for name in REQUIRED[cfg.command]:
        if getattr(cfg, name) is None:
            raise UsageError(f"{cfg.command} requires {FLAG.get(name, '--' + name)}")
    if cfg.p is not None and not cfg.p >= 1.0:
        raise UsageError(f"--p must be >= 1, got {cfg.p:g}")
    if cfg.alpha is not None and not (math.isfinite(cfg.alpha) and cfg.alpha >= 0.0):
        raise UsageError(f"--alpha must be finite and >= 0, got {cfg.alpha:g}")
    if cfg.n is not None and cfg.n < 1:
        raise UsageError(f"--n must be >= 1, got {cfg.n}")
    if cfg.n_max is not None and cfg.n_max < 2:
        raise UsageError(f"--nmax must be >= 2, got {cfg.n_max}")
    if cfg.t_max_override is not None and not 0.0 < cfg.t_max_override < math.pi:
        raise UsageError(f"--t-max must lie in (0, pi), got {cfg.t_max_override:g}")
    if cfg.delta is not None and not 0.0 <= cfg.delta <= cfg.t_max:
        raise UsageError(f"--delta must lie in [0, {cfg.t_max:g}], got {cfg.delta:g}")
    if cfg.t is not None and not abs(cfg.t) <= cfg.t_max:
        raise UsageError(f"--t must satisfy |t| <= {cfg.t_max:g}, got {cfg.t:g}")
    if any(not abs(x) < 1.0 for x in cfg.x):
        raise UsageError("--x values must lie in (-1, 1)")
    if cfg.command in GATED and not cfg.params.theorem_valid and not cfg.allow_out_of_hypothesis:
        raise UsageError(
            f"(p, alpha) = ({cfg.params.p_label}, {cfg.alpha:g}) lies outside the region where the "
            "two-sided estimate holds; pass --allow-out-of-hypothesis to run anyway"
        )
    return cfg


# --- output -------------------------------------------------------------------

def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return "%.17g" % v
    return str(v)


def csv_text(header: list[str], columns: list[str], rows) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(",".join(columns))
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory and rename over ``path``."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".gensmooth-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def thread_count() -> int:
    raw = os.environ.get("GENSMOOTH_THREADS", "").strip()
    if not raw:
        return 1
    try:
        k = int(raw)
    except ValueError as exc:
        raise InvalidParameterError(f"GENSMOOTH_THREADS must be a positive integer, got {raw!r}") from exc
    if k < 1:
        raise InvalidParameterError(f"GENSMOOTH_THREADS must be a positive integer, got {raw!r}")
    return k


def _header(cfg: RunConfig, **extra) -> list[str]:
    items = {"command": cfg.command, "function": cfg.function_id}
    if cfg.p is not None:
        items["p"] = fmt(cfg.p)
        items["alpha"] = fmt(cfg.alpha)
    items.update(extra)
    items["version"] = __version__
    head = [" ".join(f"{k}={v}" for k, v in items.items())]
    if cfg.allow_out_of_hypothesis and cfg.p is not None and not cfg.params.theorem_valid:
        head.append("OUT-OF-HYPOTHESIS: (p, alpha) violates the validity conditions")
    return head


# --- commands -----------------------------------------------------------------

def _translate(cfg):
    f = lookup(cfg.function_id)
    if cfg.x:
        xs = np.asarray(cfg.x)
    else:
        k = np.arange(21)
        xs = np.sort(np.cos((k + 0.5) * np.pi / 21))
    tau = translate_grid(f, cfg.t, xs, t_max=cfg.t_max)
    fx = f(xs)
    return csv_text(_header(cfg, t=fmt(cfg.t)), ["x", "tau", "f", "difference"],
                    zip(xs, tau, fx, tau - fx))


def _norm(cfg):
    f = lookup(cfg.function_id)
    res = weighted_norm(f, cfg.params, f.breakpoints)
    return csv_text(_header(cfg), ["norm", "converged"], [(res.value, res.converged)])


def _bestapprox(cfg):
    f = lookup(cfg.function_id)
    res = best_approx(f, cfg.n, cfg.params)
    row = (cfg.n, cfg.p, cfg.alpha, res.error, res.converged, res.iterations)
    return csv_text(_header(cfg), ["n", "p", "alpha", "error", "converged", "iterations"], [row])


def _modulus(cfg):
    f = lookup(cfg.function_id)
    res = modulus(f, cfg.delta, cfg.params, cfg.t_grid, t_max=cfg.t_max)
    return csv_text(_header(cfg, t_grid=cfg.t_grid), ["delta", "omega", "argmax_t", "refined"],
                    [(cfg.delta, res.value, res.argmax_t, res.refined)])


VERIFY_COLUMNS = ["n", "E_n", "omega", "lower_ratio", "upper_denominator", "upper_ratio", "degenerate"]


def _verify(cfg):
    f = lookup(cfg.function_id)
    rep = verify_theorem(
        f, cfg.params, cfg.n_max, allow_out_of_hypothesis=cfg.allow_out_of_hypothesis,
        t_grid=cfg.t_grid, workers=thread_count(), t_max=cfg.t_max,
    )
    head = _header(cfg, n_max=cfg.n_max)
    head.append(f"c1_hat={fmt(rep.c1_hat)} c2_hat={fmt(rep.c2_hat)} degenerate={fmt(rep.degenerate)}")
    rows = [(r.n, r.E_n, r.omega, r.lower_ratio, r.upper_denominator, r.upper_ratio, r.degenerate)
            for r in rep.rows]
    return csv_text(head, VERIFY_COLUMNS, rows)


SWEEP_COLUMNS = ["function", "p", "alpha", "n_max", "c1_hat", "c2_hat", "degenerate", "out_of_hypothesis"]


def read_sweep_config(path):
    """INI with a ``[sweep]`` section:

    functions = absx, step_smooth      (default: whole registry)
    params    = 1:0.75, 2:1, inf:1.2   (p:alpha pairs)
    nmax      = 32
    allow_out_of_hypothesis = false
    """
    cp = configparser.ConfigParser()
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise InvalidParameterError(f"cannot read sweep config {path!r}: {exc}") from exc
    if "sweep" not in cp:
        raise InvalidParameterError(f"{path!r} has no [sweep] section")
    sec = cp["sweep"]
    functions = [s.strip() for s in sec.get("functions", "").split(",") if s.strip()] or registry_list()
    pairs = []
    for item in sec.get("params", "").split(","):
        if not item.strip():
            continue
        try:
            p, a = item.split(":")
            pairs.append(SpaceParams(parse_p(p.strip()), float(a)))
        except ValueError as exc:
            raise InvalidParameterError(f"bad p:alpha pair {item.strip()!r} in {path!r}") from exc
    if not pairs:
        raise InvalidParameterError(f"{path!r} lists no p:alpha pairs")
    try:
        n_max = sec.getint("nmax", 32)
        allow = sec.getboolean("allow_out_of_hypothesis", False)
    except ValueError as exc:
        raise InvalidParameterError(f"bad value in {path!r}: {exc}") from exc
    for fid in functions:
        lookup(fid)
    for params in pairs:
        if not params.theorem_valid and not allow:
            raise InvalidParameterError(
                f"(p, alpha) = ({params.p_label}, {params.alpha:g}) is outside the validity region; "
                "set allow_out_of_hypothesis = true"
            )
    return functions, pairs, n_max, allow


def _sweep(cfg):
    functions, pairs, n_max, allow = read_sweep_config(cfg.config)
    jobs = [(fid, params) for fid in functions for params in pairs]

    def run_one(job):
        fid, params = job
        rep = verify_theorem(lookup(fid), params, n_max, allow_out_of_hypothesis=allow, t_max=cfg.t_max)
        return (fid, params.p, params.alpha, n_max, rep.c1_hat, rep.c2_hat, rep.degenerate, rep.out_of_hypothesis)

    workers = thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_one, jobs))  # declaration order
    else:
        rows = [run_one(j) for j in jobs]
    head = [f"command=sweep config={os.path.basename(cfg.config)} n_max={n_max} version={__version__}"]
    return csv_text(head, SWEEP_COLUMNS, rows)


HANDLERS = {
    "translate": _translate,
    "norm": _norm,
    "bestapprox": _bestapprox,
    "modulus": _modulus,
    "verify": _verify,
    "sweep": _sweep,
}


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        text = HANDLERS[cfg.command](cfg)
    except (InvalidParameterError, DomainError, FunctionNotFoundError, DegenerateReportError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"gensmooth: error: {msg}", file=stderr)
        return 1
    except (NonConvergenceError, NonFiniteSampleError) as exc:
        print(f"gensmooth: numerical failure: {exc}", file=stderr)
        return 2
    if cfg.output_path:
        write_atomic(cfg.output_path, text)
    else:
        stdout.write(text)
    return 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"gensmooth: usage error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
