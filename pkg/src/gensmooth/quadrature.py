"""Gaussian quadrature rules built with the Golub-Welsch eigenvalue method.

Every integral in the package goes through this module: the phi-integral of
the translation operator (Gauss-Legendre shifted onto (0, pi)) and the
weighted x-integrals of the norms (Gauss-Jacobi with a = b = alpha * p, or a
composite of Jacobi end panels and Legendre interior panels when the
integrand has known breakpoints).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import betaln

from .errors import InvalidParameterError, NonFiniteSampleError


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    order: int
    interval: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return self.order


def jacobi_recurrence(order: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Recurrence coefficients of the monic Jacobi polynomials.

    Returns ``(alpha, beta)`` with ``len == order`` each, such that
    ``p_{k+1}(x) = (x - alpha_k) p_k(x) - beta_k p_{k-1}(x)``. ``beta[0]`` is
    the total mass ``2**(a+b+1) B(a+1, b+1)`` of the weight.
    """
    k = np.arange(order, dtype=float)
    ab = a + b
    alpha = np.empty(order)
    beta = np.empty(order)
    alpha[0] = (b - a) / (ab + 2.0)
    beta[0] = math.exp((ab + 1.0) * math.log(2.0) + betaln(a + 1.0, b + 1.0))
    if order > 1:
        kk = k[1:]
        two = 2.0 * kk + ab
        alpha[1:] = (b * b - a * a) / (two * (two + 2.0))
        beta[1] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) ** 2 * (3.0 + ab))
        if order > 2:
            kk = k[2:]
            two = 2.0 * kk + ab
            beta[2:] = (
                4.0 * kk * (kk + a) * (kk + b) * (kk + ab)
                / (two**2 * (two + 1.0) * (two - 1.0))
            )
    return alpha, beta


def _golub_welsch(order: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    alpha, beta = jacobi_recurrence(order, a, b)
    if order == 1:
        return alpha.copy(), beta[:1].copy()
    x, v = eigh_tridiagonal(alpha, np.sqrt(beta[1:]))
    w = beta[0] * v[0, :] ** 2
    if a == b:
        # exact symmetry of the rule keeps even/odd integrands clean
        x = 0.5 * (x - x[::-1])
        w = 0.5 * (w + w[::-1])
        if order % 2:
            x[order // 2] = 0.0
    return x, w


def _check_order(order) -> int:
    if isinstance(order, bool) or int(order) != order or order < 1:
        raise InvalidParameterError(f"quadrature order must be a positive integer, got {order!r}")
    return int(order)


@lru_cache(maxsize=256)
def gauss_legendre(order: int) -> QuadratureRule:
    order = _check_order(order)
    x, w = _golub_welsch(order, 0.0, 0.0)
    return QuadratureRule(x, w, "legendre", order)


@lru_cache(maxsize=512)
def gauss_jacobi(order: int, a: float, b: float) -> QuadratureRule:
    """Gauss rule for the weight ``(1 - x)**a * (1 + x)**b`` on [-1, 1]."""
    order = _check_order(order)
    if not (a > -1.0 and b > -1.0):
        raise InvalidParameterError(f"Jacobi exponents must exceed -1, got a={a}, b={b}")
    a, b = float(a), float(b)
    if a == 0.0 and b == 0.0:
        rule = gauss_legendre(order)
        return rule
    x, w = _golub_welsch(order, a, b)
    return QuadratureRule(x, w, f"jacobi({a:g},{b:g})", order)


def shift_to_phi(rule: QuadratureRule) -> QuadratureRule:
    """Affine image of a [-1, 1] rule on (0, pi)."""
    if rule.interval != (-1.0, 1.0):
        raise InvalidParameterError("shift_to_phi expects a rule on [-1, 1]")
    half = 0.5 * math.pi
    return QuadratureRule(
        half * (rule.nodes + 1.0),
        half * rule.weights,
        f"shifted({rule.kind})",
        rule.order,
        (0.0, math.pi),
    )


def integrate(rule: QuadratureRule, g: Callable[[np.ndarray], np.ndarray]) -> float:
    """Return ``sum(weights * g(nodes))``; ``g`` is called once on the node array."""
    vals = np.asarray(g(rule.nodes), dtype=float)
    if vals.shape != rule.nodes.shape:
        vals = np.broadcast_to(vals, rule.nodes.shape)
    if not np.all(np.isfinite(vals)):
        bad = rule.nodes[~np.isfinite(vals)][0]
        raise NonFiniteSampleError(f"integrand is not finite at node {bad!r}")
    return float(np.dot(rule.weights, vals))


@lru_cache(maxsize=256)
def _composite(exponent: float, breakpoints: tuple[float, ...], order: int):
    if not breakpoints:
        r = gauss_jacobi(order, exponent, exponent)
        return r.nodes, r.weights
    edges = (-1.0,) + breakpoints + (1.0,)
    xs, ws = [], []
    last = len(edges) - 2
    for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        half = 0.5 * (hi - lo)
        if i == 0:
            # (1 + x)**e is singular-ish at -1: carry it in the rule
            r = gauss_jacobi(order, 0.0, exponent)
            x = lo + half * (r.nodes + 1.0)
            w = r.weights * half ** (exponent + 1.0) * (1.0 - x) ** exponent
        elif i == last:
            r = gauss_jacobi(order, exponent, 0.0)
            x = lo + half * (r.nodes + 1.0)
            w = r.weights * half ** (exponent + 1.0) * (1.0 + x) ** exponent
        else:
            r = gauss_legendre(order)
            x = lo + half * (r.nodes + 1.0)
            w = r.weights * half * (1.0 - x * x) ** exponent
        xs.append(x)
        ws.append(w)
    x, w = np.concatenate(xs), np.concatenate(ws)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _clean_breakpoints(breakpoints: Sequence[float] | None, min_gap: float = 1e-12) -> tuple[float, ...]:
    if not breakpoints:
        return ()
    pts = sorted(float(b) for b in breakpoints if -1.0 + min_gap < b < 1.0 - min_gap)
    out: list[float] = []
    for b in pts:
        if not out or b - out[-1] > min_gap:
            out.append(b)
    return tuple(out)


def weighted_rule(
    exponent: float, order: int, breakpoints: Sequence[float] | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ``int_{-1}^{1} g(x) (1 - x^2)**exponent dx``.

    Without breakpoints this is plain Gauss-Jacobi(exponent, exponent). With
    breakpoints the interval is cut there and every panel gets ``order``
    nodes, so integrands that are smooth between breakpoints converge
    spectrally.
    """
    if exponent <= -1.0:
        raise InvalidParameterError(f"weight exponent must exceed -1, got {exponent}")
    return _composite(float(exponent), _clean_breakpoints(breakpoints), _check_order(order))


@dataclass
class AdaptiveResult:
    value: float
    nodes_used: int
    converged: bool


def adaptive_weighted_integral(
    g: Callable[[np.ndarray], np.ndarray],
    exponent: float,
    breakpoints: Sequence[float] | None = None,
    start: int = 32,
    cap: int = 512,
    rtol: float = 1e-10,
    atol: float = 0.0,
) -> AdaptiveResult:
    """Integrate ``g * (1 - x^2)**exponent`` with per-panel order doubling.

    Stops when two successive orders agree to ``rtol`` (relative) or ``atol``.
    Exhausting ``cap`` returns the last estimate with ``converged=False``.
    """
    bps = _clean_breakpoints(breakpoints)
    order = start
    prev = None
    while True:
        x, w = _composite(float(exponent), bps, order)
        vals = np.asarray(g(x), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise NonFiniteSampleError(f"integrand is not finite at x={x[~np.isfinite(vals)][0]!r}")
        cur = float(np.dot(w, vals))
        if prev is not None and abs(cur - prev) <= rtol * abs(cur) + atol:
            return AdaptiveResult(cur, x.size, True)
        if order >= cap:
            return AdaptiveResult(cur, x.size, False)
        prev = cur
        order = min(2 * order, cap)


def chebyshev_extrema(size: int) -> np.ndarray:
    """``size`` Chebyshev-extrema points in increasing order, endpoints included."""
    if size < 2:
        raise InvalidParameterError("need at least two Chebyshev extrema")
    n = size - 1
    # sin form keeps the grid exactly antisymmetric
    x = np.sin(np.pi * np.arange(-n, n + 1, 2) / (2 * n))
    return x
