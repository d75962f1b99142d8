"""Asymmetric generalized translation operator.

    tau_t(f, x) = 1 / (pi (1 - x^2) cos^4(t/2))
                  * int_0^pi {2 A^2 - 1 + B^2} f(B) dphi

with s = sqrt(1 - x^2),

    A = s cos t + x sin t cos phi + s (1 - cos t) sin^2 phi
    B = x cos t - s sin t cos phi.

The phi-integral is done with Gauss-Legendre on (0, pi), cut at every phi
where B crosses a breakpoint of f, with order doubling until the relative
change drops below 1e-10 of the integrand's absolute mass (or 1e-13 of
max |f| on the result scale, for x where f vanishes on the whole B-range).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, InvalidParameterError, NearEndpointError, NonConvergenceError, NonFiniteSampleError
from .funcspace import as_evaluator, breakpoints_of
from .quadrature import gauss_legendre

DEFAULT_T_MAX = 1.0
DEFAULT_PHI_ORDER = 64
MAX_PHI_ORDER = 512
PHI_RTOL = 1e-10
# absolute floor on tau_t f itself, relative to max |f| on [-1, 1]
PHI_ATOL = 1e-13
_SCALE_PROBE = np.cos(np.pi * (np.arange(33) + 0.5) / 33)
ENDPOINT_GAP = 1e-13
_B_OVERSHOOT = 1e-14


@dataclass(frozen=True)
class TranslationParams:
    t: float
    phi_order: int = DEFAULT_PHI_ORDER
    t_max: float = DEFAULT_T_MAX

    def __post_init__(self):
        if not 0.0 < self.t_max < math.pi:
            raise InvalidParameterError(f"t_max must lie in (0, pi), got {self.t_max}")
        if not abs(self.t) <= self.t_max:
            raise InvalidParameterError(f"|t| = {abs(self.t)} exceeds t_max = {self.t_max}")
        if int(self.phi_order) != self.phi_order or self.phi_order < 4:
            raise InvalidParameterError(f"phi_order must be an integer >= 4, got {self.phi_order}")


@dataclass(frozen=True)
class KernelSample:
    argument_B: float
    weight_A: float
    kernel_value: float


def _parts(x, t, phi):
    s = np.sqrt(1.0 - x * x)
    ct, st = math.cos(t), math.sin(t)
    one_minus_ct = 2.0 * math.sin(0.5 * t) ** 2
    cp = np.cos(phi)
    # per-x coefficients first, so the (x, phi) arrays see few operations
    A = (s * ct + s * one_minus_ct) + cp * (x * st) - (s * one_minus_ct) * (cp * cp)
    B = x * ct - (s * st) * cp
    over = np.max(np.abs(B)) - 1.0 if np.size(B) else 0.0
    assert over <= _B_OVERSHOOT, f"B left [-1, 1] by {over}"
    if over > 0.0:
        B = np.clip(B, -1.0, 1.0)
    K = 2.0 * A * A - 1.0 + B * B
    return A, B, K


def kernel_parts(x: float, t: float, phi: float) -> KernelSample:
    """The two inner expressions A, B and the bracket 2A^2 - 1 + B^2."""
    if not abs(x) < 1.0:
        raise DomainError(f"kernel needs |x| < 1, got x={x}")
    A, B, K = _parts(np.float64(x), float(t), np.float64(phi))
    return KernelSample(float(B), float(A), float(K))


def _phi_cuts(xs: np.ndarray, t: float, bps: Sequence[float]) -> np.ndarray:
    """Piece edges in phi, shape (m, len(bps) + 2); unused cuts collapse onto pi."""
    m = xs.size
    edges = np.empty((m, len(bps) + 2))
    edges[:, 0] = 0.0
    edges[:, -1] = math.pi
    if not bps:
        return edges
    s = np.sqrt(1.0 - xs * xs)
    st, ct = math.sin(t), math.cos(t)
    cuts = np.full((m, len(bps)), math.pi)
    if st != 0.0:
        for j, b in enumerate(bps):
            with np.errstate(over="ignore"):  # huge |c| just means no crossing
                c = (xs * ct - b) / (s * st)
            ok = np.abs(c) < 1.0
            cuts[ok, j] = np.arccos(c[ok])
    cuts.sort(axis=1)
    edges[:, 1:-1] = cuts
    return edges


def _phi_integral(f, xs, t, edges, order):
    r = gauss_legendre(order)
    lo, hi = edges[:, :-1, None], edges[:, 1:, None]
    half = 0.5 * (hi - lo)
    phi = lo + half * (r.nodes + 1.0)
    w = half * r.weights
    _, B, K = _parts(xs[:, None, None], t, phi)
    fb = f(B)
    if not np.all(np.isfinite(fb)):
        raise NonFiniteSampleError(f"f is not finite at B={B[~np.isfinite(fb)][0]!r}")
    integrand = w * K * fb
    return integrand.sum(axis=(1, 2)), np.abs(integrand).sum(axis=(1, 2)), float(np.max(np.abs(fb), initial=0.0))


def translate_grid(f, t: float, xs, phi_order: int = DEFAULT_PHI_ORDER, t_max: float = DEFAULT_T_MAX) -> np.ndarray:
    """tau_t(f, x) for every x in ``xs`` (all must satisfy 1 - x^2 >= 1e-13)."""
    TranslationParams(t, phi_order, t_max)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ev = as_evaluator(f)
    gap = 1.0 - xs * xs
    bad = np.nonzero(~(gap >= ENDPOINT_GAP))[0]
    if bad.size:
        i = int(bad[0])
        raise NearEndpointError(f"x[{i}] = {xs[i]!r} is too close to +-1 (1 - x^2 < {ENDPOINT_GAP:g})")
    if t == 0.0:
        return np.asarray(ev(xs), dtype=float).copy()

    edges = _phi_cuts(xs, t, breakpoints_of(f))
    out = np.empty_like(xs)
    todo = np.arange(xs.size)
    order = max(int(phi_order) // 2, 2)
    scale = math.pi * gap * math.cos(0.5 * t) ** 4
    prev, _, fmax = _phi_integral(ev, xs, t, edges, order)
    fscale = max(fmax, float(np.max(np.abs(ev(_SCALE_PROBE)))))
    floor = PHI_ATOL * fscale * scale
    while True:
        order *= 2
        cur, mass, _ = _phi_integral(ev, xs[todo], t, edges[todo], order)
        done = np.abs(cur - prev) <= PHI_RTOL * mass + floor[todo]
        out[todo[done]] = cur[done]
        todo, prev = todo[~done], cur[~done]
        if not todo.size:
            break
        if order >= MAX_PHI_ORDER:
            i = int(todo[0])
            raise NonConvergenceError(
                f"phi-quadrature did not reach rtol {PHI_RTOL:g} at x[{i}] = {xs[i]!r}, t = {t!r} "
                f"with order {order}"
            )
    return out / scale


def translate(f, t: float, x: float, phi_order: int = DEFAULT_PHI_ORDER, t_max: float = DEFAULT_T_MAX) -> float:
    if not abs(x) < 1.0:
        raise DomainError(f"translate needs |x| < 1, got x={x}")
    return float(translate_grid(f, t, [x], phi_order, t_max)[0])


def translated_breakpoints(bps: Sequence[float], t: float) -> tuple[float, ...]:
    """Points in (-1, 1) where tau_t f - f may lose smoothness.

    These are the breakpoints b themselves and the x = cos(theta) at which an
    end of the B-range [cos(theta + |t|), cos(theta - |t|)] passes through b.
    """
    out = set()
    for b in bps:
        if not -1.0 < b < 1.0:
            continue
        out.add(float(b))
        if t == 0.0:
            continue
        ab = math.acos(b)
        for base in (ab, -ab):
            for shift in (t, -t):
                for k in (-1, 0, 1):
                    theta = base + shift + 2.0 * math.pi * k
                    if 0.0 < theta < math.pi:
                        out.add(math.cos(theta))
    return tuple(sorted(out))
