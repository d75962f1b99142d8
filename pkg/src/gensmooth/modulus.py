"""Generalized modulus of smoothness

    omega(f, delta)_{p,alpha} = sup_{|t| <= delta} || tau_t(f, .) - f ||_{p,alpha}.

The sup is a max over a symmetric t-grid (both signs of t, zero and the
endpoints included) followed by golden-section refinement around the grid
maximizer. The inner norm evaluates tau_t f directly on the norm's own nodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._search import golden_section_max
from .errors import GensmoothError, InvalidParameterError
from .funcspace import SpaceParams, as_evaluator, breakpoints_of, weighted_norm
from .translation import DEFAULT_PHI_ORDER, DEFAULT_T_MAX, translate_grid, translated_breakpoints

DEFAULT_T_GRID = 33
# inner-norm tolerance; every modulus check downstream is at 1e-8 or looser
NORM_RTOL = 1e-9


@dataclass
class ModulusResult:
    value: float
    argmax_t: float
    t_grid_size: int
    refined: bool


class _Distance:
    """t -> ||tau_t f - f||_{p,alpha}, memoized on t."""

    def __init__(self, f, params: SpaceParams, t_max: float, phi_order: int):
        self.f = f
        self.ev = as_evaluator(f)
        self.bps = breakpoints_of(f)
        self.params = params
        self.t_max = t_max
        self.phi_order = phi_order
        self.cache: dict[float, float] = {}

    def __call__(self, t: float) -> float:
        t = float(t)
        if t in self.cache:
            return self.cache[t]
        if t == 0.0:
            val = 0.0
        else:
            f, ev = self.f, self.ev

            def diff(x):
                return translate_grid(f, t, x, self.phi_order, self.t_max) - ev(x)

            try:
                val = weighted_norm(
                    diff, self.params, translated_breakpoints(self.bps, t), interior=True, rtol=NORM_RTOL
                ).value
            except GensmoothError as exc:
                raise type(exc)(f"at t={t!r}: {exc}") from exc
        self.cache[t] = val
        return val


def _t_grid(delta: float, size: int) -> np.ndarray:
    half = (size - 1) // 2
    # delta * j / half keeps grids for nested dyadic deltas bit-identical
    return np.array([delta * j / half for j in range(-half, half + 1)])


def _modulus(dist: _Distance, delta: float, t_grid: int, refine: bool) -> ModulusResult:
    if not 0.0 <= delta <= dist.t_max:
        raise InvalidParameterError(f"delta must lie in [0, {dist.t_max}], got {delta}")
    if t_grid < 3 or t_grid % 2 == 0:
        raise InvalidParameterError(f"t_grid must be odd and >= 3 so that 0 and +-delta are sampled, got {t_grid}")
    if delta == 0.0:
        return ModulusResult(0.0, 0.0, 1, False)
    ts = _t_grid(delta, t_grid)
    vals = np.array([dist(t) for t in ts])
    k = int(np.argmax(vals))  # leftmost on ties
    best_t, best = float(ts[k]), float(vals[k])
    refined = False
    if refine and best > 0.0:
        lo, hi = ts[max(k - 1, 0)], ts[min(k + 1, ts.size - 1)]
        t_ref, v_ref = golden_section_max(dist, lo, hi, xtol=1e-4 * delta)
        if v_ref > best:
            best_t, best = float(t_ref), float(v_ref)
            refined = True
    return ModulusResult(best, best_t, t_grid, refined)


def modulus(
    f,
    delta: float,
    params: SpaceParams,
    t_grid: int = DEFAULT_T_GRID,
    *,
    refine: bool = True,
    t_max: float = DEFAULT_T_MAX,
    phi_order: int = DEFAULT_PHI_ORDER,
) -> ModulusResult:
    """omega(f, delta)_{p,alpha}; ``t_grid`` must be odd."""
    return _modulus(_Distance(f, params, t_max, phi_order), float(delta), t_grid, refine)


def modulus_curve(
    f,
    deltas: Sequence[float],
    params: SpaceParams,
    t_grid: int = DEFAULT_T_GRID,
    *,
    refine: bool = True,
    t_max: float = DEFAULT_T_MAX,
    phi_order: int = DEFAULT_PHI_ORDER,
) -> list[ModulusResult]:
    """Modulus at nondecreasing ``deltas``.

    Norm evaluations are shared across deltas, and every t sampled for a
    smaller delta also lies in |t| <= the larger one, so each result is
    lifted to at least the previous one.
    """
    deltas = [float(d) for d in deltas]
    if any(b < a for a, b in zip(deltas, deltas[1:])):
        raise InvalidParameterError("deltas must be nondecreasing")
    dist = _Distance(f, params, t_max, phi_order)
    out: list[ModulusResult] = []
    for d in deltas:
        res = _modulus(dist, d, t_grid, refine)
        if out and out[-1].value > res.value:
            prev = out[-1]
            res = ModulusResult(prev.value, prev.argmax_t, res.t_grid_size, prev.refined)
        out.append(res)
    return out
