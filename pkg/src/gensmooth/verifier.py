"""Empirical check of the two-sided estimate

    C1 E_n(f) <= omega(f, 1/n) <= C2 n^-2 sum_{v=1}^{n} v E_v(f)

and estimates of the constants C1, C2 from the computed tables.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as C

from .bestapprox import BestApproxResult, best_approx_sweep
from .errors import DegenerateReportError, InvalidParameterError
from .funcspace import SpaceParams, TestFunction, cheb
from .modulus import DEFAULT_T_GRID, ModulusResult, _Distance, _modulus
from .translation import DEFAULT_PHI_ORDER, DEFAULT_T_MAX, translate_grid

E_TOL = 1e-12
DENOM_TOL = 1e-14


@dataclass
class Row:
    n: int
    E_n: float
    omega: float
    lower_ratio: float
    upper_denominator: float
    upper_ratio: float
    degenerate: bool


@dataclass
class TheoremReport:
    function_id: str
    params: SpaceParams
    rows: list[Row]
    c1_hat: float
    c2_hat: float
    degenerate: bool
    out_of_hypothesis: bool = False
    best: list[BestApproxResult] = field(default_factory=list, repr=False)
    moduli: list[ModulusResult] = field(default_factory=list, repr=False)
    raw_omega: list[float] = field(default_factory=list, repr=False)

    @property
    def n_max(self) -> int:
        return self.rows[-1].n if self.rows else 0

    def truncated(self, n_max: int) -> "TheoremReport":
        """The report a run with this smaller n_max would have produced."""
        return build_report(
            self.function_id, self.params, [r.E_n for r in self.rows[:n_max]],
            self.raw_omega[:n_max], self.out_of_hypothesis,
            self.best[:n_max], self.moduli[:n_max],
        )


def build_report(function_id, params, E, omega, out_of_hypothesis=False, best=(), moduli=()) -> TheoremReport:
    """Assemble rows and constant estimates from E_1..E_N and omega(f, 1/n).

    ``omega`` holds the raw estimates; each is lifted to the max over larger
    n, since the sup over |t| <= 1/n covers every t sampled for 1/(n+1).
    """
    raw = [float(w) for w in omega]
    omega = list(raw)
    for i in range(len(omega) - 2, -1, -1):
        omega[i] = max(omega[i], omega[i + 1])
    rows = []
    partial = 0.0
    for n, (e, w) in enumerate(zip(E, omega), start=1):
        partial += n * e  # S_n = S_{n-1} + n E_n
        denom = partial / n**2
        degenerate = e < E_TOL
        rows.append(Row(
            n=n,
            E_n=e,
            omega=w,
            lower_ratio=w / e if not degenerate else math.nan,
            upper_denominator=denom,
            upper_ratio=w / denom if denom >= DENOM_TOL else math.nan,
            degenerate=degenerate,
        ))
    lowers = [r.lower_ratio for r in rows if not r.degenerate]
    uppers = [r.upper_ratio for r in rows if r.upper_denominator >= DENOM_TOL]
    return TheoremReport(
        function_id=function_id,
        params=params,
        rows=rows,
        c1_hat=min(lowers) if lowers else math.nan,
        c2_hat=max(uppers) if uppers else math.nan,
        degenerate=all(r.degenerate for r in rows),
        out_of_hypothesis=out_of_hypothesis,
        best=list(best),
        moduli=list(moduli),
        raw_omega=raw,
    )


def _moduli_at_inverse_n(f, params, n_max, t_grid, workers, t_max, phi_order):
    deltas = [1.0 / n for n in range(1, n_max + 1)]

    def one(delta):
        return _modulus(_Distance(f, params, t_max, phi_order), delta, t_grid, True)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            raw = list(pool.map(one, deltas))
    else:
        dist = _Distance(f, params, t_max, phi_order)
        raw = [_modulus(dist, d, t_grid, True) for d in deltas]
    return raw


def verify_theorem(
    f: TestFunction,
    params: SpaceParams,
    n_max: int,
    *,
    allow_out_of_hypothesis: bool = False,
    t_grid: int = DEFAULT_T_GRID,
    workers: int | None = None,
    t_max: float = DEFAULT_T_MAX,
    phi_order: int = DEFAULT_PHI_ORDER,
) -> TheoremReport:
    """Tabulate E_n, omega(f, 1/n) and both ratios for n = 1..n_max.

    Raises :class:`InvalidParameterError` for (p, alpha) outside the region of
    validity unless ``allow_out_of_hypothesis`` is set; such reports carry
    ``out_of_hypothesis=True``.
    """
    if int(n_max) != n_max or n_max < 2:
        raise InvalidParameterError(f"n_max must be an integer >= 2, got {n_max}")
    n_max = int(n_max)
    valid = params.theorem_valid
    if not valid and not allow_out_of_hypothesis:
        raise InvalidParameterError(
            f"(p, alpha) = ({params.p_label}, {params.alpha:g}) is outside the region where the estimate holds"
        )
    best = best_approx_sweep(f, n_max, params)
    moduli = _moduli_at_inverse_n(f, params, n_max, t_grid, workers, t_max, phi_order)
    fid = getattr(f, "id", getattr(f, "__name__", "f"))
    return build_report(
        fid, params, [b.error for b in best], [m.value for m in moduli], not valid, best, moduli
    )


def empirical_constants(report: TheoremReport) -> tuple[float, float]:
    if report.degenerate or math.isnan(report.c1_hat) or math.isnan(report.c2_hat):
        raise DegenerateReportError(f"report for {report.function_id!r} has no usable rows")
    return report.c1_hat, report.c2_hat


@dataclass
class StabilitySummary:
    min_c1: float
    max_c2: float
    c1_spread: float
    c2_spread: float
    reports: int


def stability_probe(reports) -> StabilitySummary:
    """Spread of the constant estimates across a family of functions."""
    usable = [r for r in reports if not r.degenerate]
    if len(usable) < 2:
        raise InvalidParameterError("stability_probe needs at least two non-degenerate reports")
    c1 = [empirical_constants(r)[0] for r in usable]
    c2 = [empirical_constants(r)[1] for r in usable]
    return StabilitySummary(min(c1), max(c2), max(c1) - min(c1), max(c2) - min(c2), len(usable))


def loglog_slope(ns, values) -> float:
    """Least-squares slope of log(values) against log(ns)."""
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    return float(np.polyfit(np.log(ns), np.log(values), 1)[0])


def degree_probe(k: int, t: float, samples: int = 64) -> float:
    """Max deviation of tau_t T_k from its best degree-k Chebyshev fit.

    Near rounding level means tau_t maps T_k into polynomials of degree <= k.
    Reported as data only.
    """
    x = np.cos(np.pi * (np.arange(samples) + 0.5) / samples)
    y = translate_grid(cheb(k), t, x)
    coef = C.chebfit(x, y, k)
    return float(np.max(np.abs(C.chebval(x, coef) - y)))
