"""Best weighted approximation E_n(f)_{p,alpha} by polynomials of degree <= n - 1.

Three solvers share the Chebyshev-basis :class:`Polynomial`:

* p = 2: orthogonal projection in the orthonormal basis for the weight
  (1 - x^2)^(2 alpha), with Gauss-Jacobi quadrature;
* p = inf: weighted Remez exchange, reference points located on a dense
  Chebyshev-extrema grid and polished by golden-section search;
* 1 <= p < inf: iteratively reweighted least squares on a Gauss-Jacobi node
  set, started from the p = 2 solution.

Whatever the solver, ``error`` is re-measured with :func:`weighted_norm` on
the continuous definition; ``discrete_error`` keeps the solver's own value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as C

from ._search import golden_section_max
from .errors import InvalidParameterError, NonConvergenceError
from .funcspace import SpaceParams, as_evaluator, breakpoints_of, sign_change_zeros, weighted_norm
from .quadrature import chebyshev_extrema, jacobi_recurrence, weighted_rule

ZERO_TOL = 1e-14


@dataclass(frozen=True)
class Polynomial:
    cheb_coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.cheb_coeffs, dtype=float)).copy()
        c.setflags(write=False)
        object.__setattr__(self, "cheb_coeffs", c)

    @property
    def degree_bound(self) -> int:
        return self.cheb_coeffs.size - 1

    def __call__(self, x):
        return C.chebval(np.asarray(x, dtype=float), self.cheb_coeffs)

    def padded(self, degree_bound: int) -> "Polynomial":
        c = np.zeros(max(degree_bound, self.degree_bound) + 1)
        c[: self.cheb_coeffs.size] = self.cheb_coeffs
        return Polynomial(c)

    @classmethod
    def zero(cls, degree_bound: int = 0) -> "Polynomial":
        return cls(np.zeros(degree_bound + 1))


@dataclass
class BestApproxResult:
    poly: Polynomial
    error: float
    iterations: int
    converged: bool
    discrete_error: float = math.nan
    reference: np.ndarray | None = field(default=None, repr=False)
    reference_errors: np.ndarray | None = field(default=None, repr=False)


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InvalidParameterError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _residual(f, poly: Polynomial):
    ev = as_evaluator(f)
    bps = breakpoints_of(f)

    def r(x):
        return ev(x) - poly(x)

    r.breakpoints = bps
    return r


def _measure(f, poly, params: SpaceParams) -> float:
    r = _residual(f, poly)
    return weighted_norm(r, params, breakpoints_of(f)).value


def orthonormal_jacobi(x, n: int, a: float, b: float) -> np.ndarray:
    """Columns 0..n-1: orthonormal polynomials for the weight (1-x)^a (1+x)^b."""
    x = np.asarray(x, dtype=float)
    alpha, beta = jacobi_recurrence(max(n, 1), a, b)
    out = np.empty(x.shape + (n,))
    prev = np.zeros_like(x)
    cur = np.full_like(x, 1.0 / math.sqrt(beta[0]))
    for k in range(n):
        out[..., k] = cur
        if k + 1 < n:
            nxt = ((x - alpha[k]) * cur - (math.sqrt(beta[k]) if k else 0.0) * prev) / math.sqrt(beta[k + 1])
            prev, cur = cur, nxt
    return out


def _to_chebyshev(values_at, n: int) -> Polynomial:
    # interpolation at n Chebyshev points is exact for degree n - 1
    return Polynomial(C.chebinterpolate(values_at, n - 1) if n > 1 else np.array([float(values_at(np.zeros(1))[0])]))


# --- p = 2 --------------------------------------------------------------------

def best_l2(f, n: int, alpha: float, *, start: int = 32, cap: int = 1024, rtol: float = 1e-13) -> BestApproxResult:
    """Weighted least-squares projection onto degree <= n - 1."""
    n = _check_n(n)
    params = SpaceParams(2.0, alpha)
    ev = as_evaluator(f)
    bps = breakpoints_of(f)
    e = 2.0 * params.alpha
    order = max(start, n + 1)
    prev = None
    iterations = 0
    converged = False
    while True:
        iterations += 1
        x, w = weighted_rule(e, order, bps)
        coef = orthonormal_jacobi(x, n, e, e).T @ (w * ev(x))
        if prev is not None and np.max(np.abs(coef - prev)) <= rtol * max(np.max(np.abs(coef)), 1e-300):
            converged = True
            break
        if order >= cap:
            break
        prev = coef
        order = min(2 * order, cap)
    poly = _to_chebyshev(lambda z: orthonormal_jacobi(z, n, e, e) @ coef, n)
    err = _measure(f, poly, params)
    return BestApproxResult(poly, err, iterations, converged, discrete_error=err)


# --- p = inf -----------------------------------------------------------------

def _sign_runs(e: np.ndarray) -> list[int]:
    """Index of the largest |e| in each maximal run of constant sign (leftmost on ties)."""
    s = np.sign(e)
    # zeros join the run on their left
    for i in range(1, s.size):
        if s[i] == 0:
            s[i] = s[i - 1]
    picks = []
    start = 0
    for i in range(1, s.size + 1):
        if i == s.size or s[i] != s[start]:
            seg = np.abs(e[start:i])
            picks.append(start + int(np.argmax(seg)))
            start = i
    return picks


def _trim(xs, es, keep):
    """Drop end points until ``keep`` alternating extrema remain, never the global max."""
    xs, es = list(xs), list(es)
    while len(xs) > keep:
        g = int(np.argmax(np.abs(es)))
        if g == 0:
            drop = -1
        elif g == len(xs) - 1:
            drop = 0
        else:
            drop = 0 if abs(es[0]) < abs(es[-1]) else -1
        xs.pop(drop)
        es.pop(drop)
    return np.array(xs), np.array(es)


def best_linf(
    f,
    n: int,
    alpha: float,
    *,
    grid_size: int | None = None,
    tol: float = 1e-8,
    max_iter: int = 100,
) -> BestApproxResult:
    """Weighted minimax approximation by Remez exchange.

    Minimizes ``max |f - P| (1 - x^2)^alpha`` over deg P <= n - 1. The
    reference is located on a Chebyshev-extrema grid (endpoints dropped for
    alpha > 0, breakpoints of f added) and each reference point is polished by
    golden-section search between its grid neighbours. Stops when the largest
    weighted error exceeds the levelled error by less than ``tol`` relative.
    After ``max_iter`` iterations without reaching that, the best polynomial
    seen is returned with ``converged=False``.
    """
    n = _check_n(n)
    params = SpaceParams(math.inf, alpha)
    alpha = params.alpha
    ev = as_evaluator(f)
    bps = breakpoints_of(f)
    size = grid_size or max(16 * n + 1, 4097)
    grid = chebyshev_extrema(size)
    if alpha > 0:
        grid = grid[1:-1]
    grid = np.union1d(grid, np.asarray([b for b in bps if -1 < b < 1], dtype=float))
    wgrid = (1.0 - grid * grid) ** alpha
    fgrid = ev(grid)
    Vgrid = C.chebvander(grid, n - 1)
    fscale = float(np.max(np.abs(fgrid) * wgrid))
    # rounding floor for the levelled-error test when E_n itself is tiny
    noise = 1e-14 * max(fscale, 1.0)

    def weight(x):
        return (1.0 - x * x) ** alpha

    def werr(poly_c, x):
        xa = np.atleast_1d(x)
        return (ev(xa) - C.chebval(xa, poly_c)) * weight(xa)

    # start from Chebyshev points of the first kind: interior, so alpha > 0 is fine
    k = np.arange(n + 1)
    ref = np.sort(np.cos((k + 0.5) * np.pi / (n + 1)))
    signs = (-1.0) ** np.arange(n + 1)

    best = None  # (max_err, coeffs, ref, ref_err)
    since_improve = 0
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        M = np.hstack([C.chebvander(ref, n - 1), (signs / weight(ref))[:, None]])
        sol, *_ = np.linalg.lstsq(M, ev(ref), rcond=None)
        coeffs, level = sol[:n], abs(sol[n])
        e = (fgrid - Vgrid @ coeffs) * wgrid
        max_err = float(np.max(np.abs(e)))
        if max_err <= ZERO_TOL * max(fscale, 1.0):
            best = (max_err, coeffs, ref, werr(coeffs, ref))
            converged = True
            break

        picks = _sign_runs(e)
        cand_x, cand_e = [], []
        for i in picks:
            lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
            sgn = np.sign(e[i])
            xr, _ = golden_section_max(lambda z: sgn * float(werr(coeffs, z)[0]), lo, hi, xtol=1e-14)
            er = float(werr(coeffs, xr)[0])
            if abs(er) < abs(e[i]):
                xr, er = grid[i], float(e[i])
            cand_x.append(xr)
            cand_e.append(er)
        max_err = max(max_err, float(np.max(np.abs(cand_e))))

        if best is None or max_err < best[0] * (1.0 - 1e-15):
            best = (max_err, coeffs, ref, werr(coeffs, ref))
            since_improve = 0
        else:
            since_improve += 1

        if max_err - level <= tol * max_err + noise:
            converged = True
            break
        if len(cand_x) < n + 1 or since_improve >= max_iter:
            break
        new_ref, _ = _trim(cand_x, cand_e, n + 1)
        signs = np.sign(_trim(cand_x, cand_e, n + 1)[1])
        ref = new_ref

    max_err, coeffs, ref_used, ref_err = best
    poly = Polynomial(coeffs)
    err = _measure(f, poly, params)
    return BestApproxResult(
        poly, err, it, converged, discrete_error=max_err, reference=np.asarray(ref_used), reference_errors=ref_err
    )


# --- 1 <= p < inf ------------------------------------------------------------

def best_lp(
    f,
    n: int,
    params: SpaceParams,
    *,
    order: int | None = None,
    tol: float = 1e-9,
    max_iter: int = 2000,
    eps: float = 1e-12,
    polish: bool = True,
) -> BestApproxResult:
    """IRLS for the discretized weighted L_p problem, 1 <= p < inf.

    The node set is a Gauss-Jacobi(alpha p, alpha p) rule (cut at the
    breakpoints of f) with ``order`` nodes per panel, default ``max(512, 8n)``.
    Each step solves a weighted least-squares problem with weights
    ``w_i |r_i|^(p-2)`` (residuals floored at ``eps``); steps that do not lower
    the objective are damped by halving. The IRLS solution is then polished
    by Newton steps on the continuous objective (``polish=False`` skips
    that and returns the discrete solution as is).
    """
    n = _check_n(n)
    p = params.p
    if not 1.0 <= p < math.inf:
        raise InvalidParameterError(f"best_lp needs 1 <= p < inf, got p={p}")
    ev = as_evaluator(f)
    bps = breakpoints_of(f)
    order = order or max(512, 8 * n)
    x, w = weighted_rule(params.alpha * p, order, bps)
    fx = ev(x)
    V = C.chebvander(x, n - 1)

    def objective(c):
        return float(np.dot(w, np.abs(fx - V @ c) ** p))

    def wls(q):
        sq = np.sqrt(q)
        c, *_ = np.linalg.lstsq(sq[:, None] * V, sq * fx, rcond=None)
        return c

    c = wls(w)
    obj = objective(c)
    converged = p == 2.0 or obj == 0.0
    it = 0
    if not converged:
        damped_exp = p - 2.0
        for it in range(1, max_iter + 1):
            r = np.abs(fx - V @ c)
            q = w * np.maximum(r, eps) ** damped_exp
            cand = wls(q)
            step = cand - c
            if p > 2.0:
                step /= p - 1.0
            theta = 1.0
            new_obj = objective(c + step)
            while new_obj > obj and theta > 1e-4:
                theta *= 0.5
                new_obj = objective(c + theta * step)
            if new_obj > obj:
                converged = True  # no descent direction left at this resolution
                break
            c = c + theta * step
            change = obj - new_obj
            obj = new_obj
            if change <= tol * obj or obj == 0.0:
                converged = True
                break
    discrete = obj ** (1.0 / p)
    if p != 2.0 and obj > 0.0 and polish:
        c, extra = _polish_lp(f, c, params)
        it += extra
    poly = Polynomial(c)
    err = _measure(f, poly, params)
    return BestApproxResult(poly, err, it, converged, discrete_error=discrete)


def _polish_lp(f, c, params: SpaceParams, max_iter: int = 30, rtol: float = 1e-13):
    """Damped Newton on the continuous objective int |f - P|^p (1-x^2)^(alpha p).

    Integrals are cut at the breakpoints of f and at the zeros of the
    residual, so the gradient is accurate even for p = 1. For p = 1 the
    Hessian comes from the zeros z of the residual r:
    sum_z 2 w(z) T_j(z) T_k(z) / |r'(z)|.
    """
    p, e = params.p, params.alpha * params.p
    ev = as_evaluator(f)
    bps = breakpoints_of(f)
    n = c.size

    def resid(cc):
        def r(x):
            return ev(x) - C.chebval(x, cc)
        return r

    def objective(cc):
        return weighted_norm(resid(cc), params, bps).value ** p

    obj = objective(c)
    for it in range(1, max_iter + 1):
        r = resid(c)
        zeros = sign_change_zeros(r, bps)
        cuts = tuple(bps) + tuple(zeros)
        grad = None
        for order in (64, 128, 256, 512):
            x, w = weighted_rule(e, order, cuts)
            rx = r(x)
            V = C.chebvander(x, n - 1)
            g = -p * V.T @ (w * np.abs(rx) ** (p - 1.0) * np.sign(rx))
            if grad is not None and np.max(np.abs(g - grad)) <= 1e-12 * max(np.max(np.abs(g)), 1e-300):
                grad = g
                break
            grad = g
        if p == 1.0:
            z = np.asarray(zeros)
            if z.size == 0:
                break
            h = 1e-6
            slope = np.abs((r(z + h) - r(z - h)) / (2 * h))
            Vz = C.chebvander(z, n - 1)
            wz = 2.0 * (1.0 - z * z) ** e / np.maximum(slope, 1e-300)
            H = Vz.T @ (wz[:, None] * Vz)
        else:
            q = w * np.maximum(np.abs(rx), 1e-300) ** (p - 2.0)
            H = p * (p - 1.0) * V.T @ (q[:, None] * V)
        step, *_ = np.linalg.lstsq(H, -grad, rcond=None)
        theta = 1.0
        new_obj = objective(c + step)
        while new_obj > obj and theta > 1e-6:
            theta *= 0.5
            new_obj = objective(c + theta * step)
        if new_obj > obj:
            break
        c = c + theta * step
        done = obj - new_obj <= rtol * obj
        obj = new_obj
        if done:
            break
    return c, it


# --- dispatch ------------------------------------------------------------------

def best_approx(f, n: int, params: SpaceParams) -> BestApproxResult:
    """E_n(f)_{p,alpha}: dispatch on p, never worse than the zero polynomial."""
    n = _check_n(n)
    if params.p == 2.0:
        res = best_l2(f, n, params.alpha)
    elif math.isinf(params.p):
        res = best_linf(f, n, params.alpha)
    else:
        res = best_lp(f, n, params)
    baseline = weighted_norm(f, params).value
    if res.error > baseline:
        res = BestApproxResult(Polynomial.zero(n - 1), baseline, res.iterations, res.converged, res.discrete_error)
    return res


def best_approx_sweep(f, n_max: int, params: SpaceParams) -> list[BestApproxResult]:
    """E_1, ..., E_{n_max}. A degree-(n-2) polynomial is admissible for E_n, so
    each entry is at most the previous one; when the solver at n does worse
    than the carried-over polynomial, the carried-over one is kept."""
    out: list[BestApproxResult] = []
    for n in range(1, _check_n(n_max) + 1):
        res = best_approx(f, n, params)
        if out and res.error > out[-1].error:
            prev = out[-1]
            res = BestApproxResult(
                prev.poly.padded(n - 1), prev.error, res.iterations, prev.converged, prev.discrete_error
            )
        out.append(res)
    return out
