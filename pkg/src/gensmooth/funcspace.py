"""The weighted space L_{p,alpha} on [-1, 1], its norm, and the test-function registry.

The norm is ``||f||_{p,alpha} = || f(x) (1 - x^2)^alpha ||_p``. Functions are
plain vectorized callables; :class:`TestFunction` adds an id, a smoothness tag
and the list of interior breakpoints where the function is not smooth, which
the quadrature uses to cut panels.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from ._search import golden_section_max
from .errors import FunctionNotFoundError, InvalidParameterError, NonFiniteSampleError
from .quadrature import adaptive_weighted_integral, chebyshev_extrema

Evaluator = Callable[[np.ndarray], np.ndarray]

SUP_GRID_SIZE = 2049
ZERO_SCAN_SIZE = 513
# grid peaks this close (relative) to the grid max are all polished; near-
# equioscillating errors have many peaks and the grid can rank them wrongly
SUP_REFINE_MARGIN = 1e-3
SUP_REFINE_MAX = 16


def parse_p(p) -> float:
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "∞"):
            return math.inf
        p = float(p)
    return float(p)


def validate_params(p, alpha) -> bool:
    """True iff (p, alpha) lies in the region where the two-sided estimate holds.

    p = 1:        1/2 < alpha <= 1
    1 < p < inf:  1 - 1/(2p) < alpha < 3/2 - 1/(2p)
    p = inf:      1 <= alpha < 3/2
    """
    p = parse_p(p)
    alpha = float(alpha)
    if math.isnan(p) or p < 1.0:
        raise InvalidParameterError(f"p must satisfy p >= 1, got {p}")
    if math.isnan(alpha):
        return False
    if p == 1.0:
        return 0.5 < alpha <= 1.0
    if math.isinf(p):
        return 1.0 <= alpha < 1.5
    return 1.0 - 1.0 / (2.0 * p) < alpha < 1.5 - 1.0 / (2.0 * p)


@dataclass(frozen=True)
class SpaceParams:
    p: float
    alpha: float

    def __post_init__(self):
        p = parse_p(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "alpha", float(self.alpha))
        if math.isnan(p) or p < 1.0:
            raise InvalidParameterError(f"p must satisfy p >= 1, got {p}")
        if not self.alpha >= 0.0 or math.isinf(self.alpha):
            raise InvalidParameterError(f"alpha must be a finite number >= 0, got {self.alpha}")

    @property
    def theorem_valid(self) -> bool:
        return validate_params(self.p, self.alpha)

    @property
    def p_label(self) -> str:
        return "inf" if math.isinf(self.p) else f"{self.p:g}"


@dataclass(frozen=True)
class TestFunction:
    """A named, vectorized function on [-1, 1]."""

    __test__ = False  # keep pytest from collecting this class

    id: str
    evaluator: Evaluator = field(repr=False, compare=False)
    smoothness_tag: str | None = None
    breakpoints: tuple[float, ...] = ()

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        out = np.asarray(self.evaluator(arr), dtype=float)
        if out.shape != arr.shape:
            out = np.broadcast_to(out, arr.shape).copy()
        return out if arr.ndim else float(out)

    # Linear combinations keep breakpoint metadata so the quadrature still
    # splits at the right places.
    def __add__(self, other):
        if isinstance(other, TestFunction):
            bps = tuple(sorted(set(self.breakpoints) | set(other.breakpoints)))
            return TestFunction(
                f"({self.id}+{other.id})", lambda x, a=self, b=other: a(x) + b(x), None, bps
            )
        c = float(other)
        return TestFunction(f"({self.id}+{c:g})", lambda x, a=self: a(x) + c, self.smoothness_tag, self.breakpoints)

    __radd__ = __add__

    def __mul__(self, other):
        c = float(other)
        return TestFunction(f"{c:g}*{self.id}", lambda x, a=self: c * a(x), self.smoothness_tag, self.breakpoints)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        if isinstance(other, TestFunction):
            return self + (-other)
        return self + (-float(other))


def breakpoints_of(f) -> tuple[float, ...]:
    return tuple(getattr(f, "breakpoints", ()) or ())


def as_evaluator(f) -> Evaluator:
    """Wrap ``f`` so it maps an array to a float array of the same shape."""
    if isinstance(f, TestFunction):
        return f

    def ev(x):
        arr = np.asarray(x, dtype=float)
        out = np.asarray(f(arr), dtype=float)
        if out.shape != arr.shape:
            out = np.broadcast_to(out, arr.shape).copy()
        return out

    return ev


# --- registry --------------------------------------------------------------

def _smoothstep(x):
    u = np.clip(x + 0.5, 0.0, 1.0)
    return u * u * (3.0 - 2.0 * u)


def absx_pow(beta: float) -> TestFunction:
    beta = float(beta)
    if not beta > 0:
        raise InvalidParameterError(f"absx_pow needs beta > 0, got {beta}")
    return TestFunction(f"absx_pow({beta:g})", lambda x: np.abs(x) ** beta, f"holder({beta:g})", (0.0,))


def cheb(k: int) -> TestFunction:
    k = int(k)
    if k < 0:
        raise InvalidParameterError("Chebyshev index must be >= 0")
    return TestFunction(
        f"cheb_{k}", lambda x: np.cos(k * np.arccos(np.clip(x, -1.0, 1.0))), "analytic"
    )


_FIXED: dict[str, TestFunction] = {
    f.id: f
    for f in (
        TestFunction("one", lambda x: np.ones_like(x), "analytic"),
        TestFunction("x", lambda x: x, "analytic"),
        TestFunction("x2", lambda x: x * x, "analytic"),
        TestFunction("x3", lambda x: x * x * x, "analytic"),
        TestFunction("absx", np.abs, "lipschitz", (0.0,)),
        TestFunction("step_smooth", _smoothstep, "piecewise", (-0.5, 0.5)),
        TestFunction("expx", np.exp, "analytic"),
        TestFunction("runge", lambda x: 1.0 / (1.0 + 25.0 * x * x), "analytic"),
    )
}

_REGISTRY_IDS = (
    "one", "x", "x2", "x3", "absx", "absx_pow(1.5)", "step_smooth", "expx", "runge", "cheb_3",
)

_ABSX_POW = re.compile(r"^absx_pow\(\s*([0-9.eE+-]+)\s*\)$")
_CHEB = re.compile(r"^cheb_(\d+)$")


def registry_list() -> list[str]:
    return list(_REGISTRY_IDS)


def lookup(function_id: str) -> TestFunction:
    """Resolve a registry id; ``absx_pow(b)`` and ``cheb_k`` take any parameter."""
    key = function_id.strip()
    if key in _FIXED:
        return _FIXED[key]
    m = _ABSX_POW.match(key)
    if m:
        return absx_pow(float(m.group(1)))
    m = _CHEB.match(key)
    if m:
        return cheb(int(m.group(1)))
    raise FunctionNotFoundError(f"unknown test function {function_id!r}; known: {', '.join(_REGISTRY_IDS)}")


# --- norm -------------------------------------------------------------------

@dataclass
class WeightedNormResult:
    value: float
    grid_size_used: int
    converged: bool


def _check_finite(x, vals):
    if not np.all(np.isfinite(vals)):
        raise NonFiniteSampleError(f"function is not finite at x={x[~np.isfinite(vals)][0]!r}")


def sign_change_zeros(g: Evaluator, breakpoints: Sequence[float] = (), size: int = ZERO_SCAN_SIZE) -> list[float]:
    """Locate simple zeros of ``g`` in (-1, 1) from sign changes on a Chebyshev scan."""
    xs = np.union1d(chebyshev_extrema(size)[1:-1], np.asarray(breakpoints, dtype=float))
    vals = np.asarray(g(xs), dtype=float)
    _check_finite(xs, vals)
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    if scale == 0.0:
        return []
    # g can vanish identically on whole intervals (tau_t f = f where f is
    # locally constant); only samples clearly above rounding noise count
    sig = np.nonzero(np.abs(vals) > 1e-9 * scale)[0]
    zeros = []

    def scalar(z):
        return float(g(np.array([z]))[0])

    for i, j in zip(sig[:-1], sig[1:]):
        if vals[i] * vals[j] < 0:
            zeros.append(brentq(scalar, xs[i], xs[j], xtol=1e-15, rtol=1e-15))
    return zeros


def _peaks(vals: np.ndarray, margin: float, limit: int) -> list[int]:
    """Indices of local maxima within ``margin`` of the global max, best first."""
    top = float(np.max(vals))
    left = np.concatenate(([-np.inf], vals[:-1]))
    right = np.concatenate((vals[1:], [-np.inf]))
    idx = np.nonzero((vals >= left) & (vals >= right) & (vals >= top - margin))[0]
    order = np.argsort(-vals[idx], kind="stable")
    return [int(i) for i in idx[order][:limit]]


def weighted_norm(
    f,
    params: SpaceParams,
    breakpoints: Sequence[float] = (),
    *,
    interior: bool = False,
    split_zeros: bool = True,
    rtol: float = 1e-10,
    start: int = 32,
    cap: int = 512,
) -> WeightedNormResult:
    """Weighted norm ``|| f(x) (1 - x^2)^alpha ||_p`` on [-1, 1].

    For finite p the integral of ``|f|^p (1 - x^2)^(alpha p)`` is taken with
    Gauss-Jacobi rules, cut at the breakpoints of ``f`` (plus any passed in
    ``breakpoints``) and, for p not an even integer, at the sign changes of
    ``f``. Order doubles per panel until successive values agree to ``rtol``.

    For p = inf the weighted modulus is maximized over a 2049-point
    Chebyshev-extrema grid; every grid peak within 0.1% of the grid maximum
    is then refined by golden section between its neighbours. ``interior=True`` keeps the evaluation
    away from x = +-1 (needed when ``f`` cannot be evaluated there).
    """
    g = as_evaluator(f)
    bps = tuple(breakpoints_of(f)) + tuple(breakpoints)
    p, alpha = params.p, params.alpha

    if math.isinf(p):
        grid = chebyshev_extrema(SUP_GRID_SIZE)
        if interior or alpha > 0.0:
            grid = grid[1:-1]
        grid = np.union1d(grid, np.asarray([b for b in bps if -1.0 < b < 1.0], dtype=float))
        vals = np.asarray(g(grid), dtype=float)
        _check_finite(grid, vals)
        weighted = np.abs(vals) * (1.0 - grid * grid) ** alpha
        best = float(np.max(weighted))
        if best > 0.0:

            def h(x):
                v = float(g(np.array([x]))[0])
                if not math.isfinite(v):
                    raise NonFiniteSampleError(f"function is not finite at x={x!r}")
                return abs(v) * (1.0 - x * x) ** alpha

            for k in _peaks(weighted, SUP_REFINE_MARGIN * best, SUP_REFINE_MAX):
                lo = grid[max(k - 1, 0)]
                hi = grid[min(k + 1, grid.size - 1)]
                _, fx = golden_section_max(h, lo, hi, xtol=1e-11)
                best = max(best, fx)
        return WeightedNormResult(float(best), int(grid.size), True)

    if split_zeros and not (p == round(p) and int(p) % 2 == 0):
        bps = bps + tuple(sign_change_zeros(g, bps))

    def integrand(x):
        return np.abs(g(x)) ** p

    res = adaptive_weighted_integral(
        integrand, alpha * p, bps, start=start, cap=cap, rtol=rtol, atol=1e-300
    )
    return WeightedNormResult(res.value ** (1.0 / p), res.nodes_used, res.converged)
