"""Independent reference computations used to freeze golden values.

Nothing here touches the package's solvers or quadrature: grids are plain
numpy, optimization goes through scipy's HiGHS linear-programming backend,
integrals through mpmath or scipy.integrate.quad.
"""
import math

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.optimize import linprog


def linf_lp(f, n, alpha, size=4097):
    """min_P max_grid |f - P| (1-x^2)^alpha on a Chebyshev-extrema grid, as an LP.

    4096 intervals; the odd point count puts x = 0 on the grid.
    """
    x = np.cos(np.pi * np.arange(size) / (size - 1))[::-1]
    w = (1.0 - x * x) ** alpha
    V = C.chebvander(x, n - 1)
    fx = f(x)
    # variables: c_0..c_{n-1}, s ; minimize s
    A = np.vstack([np.hstack([-V * w[:, None], -np.ones((size, 1))]),
                   np.hstack([V * w[:, None], -np.ones((size, 1))])])
    b = np.concatenate([-fx * w, fx * w])
    cost = np.zeros(n + 1)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=A, b_ub=b, bounds=[(None, None)] * n + [(0, None)], method="highs",
                  options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
    assert res.status == 0, res.message
    return res.x[:n], res.x[-1]


def l1_lp(f, n, alpha, size=4097):
    """min_P sum_i h_i |f - P|(x_i) (1-x_i^2)^alpha, uniform grid with trapezoid weights."""
    x = np.linspace(-1.0, 1.0, size)
    h = np.full(size, 2.0 / (size - 1))
    h[[0, -1]] *= 0.5
    q = h * (1.0 - x * x) ** alpha
    V = C.chebvander(x, n - 1)
    fx = f(x)
    # variables: c (n, free), u (size, >= 0); |f - Vc| <= u
    I = np.eye(size)
    A = np.vstack([np.hstack([-V, -I]), np.hstack([V, -I])])
    b = np.concatenate([-fx, fx])
    cost = np.concatenate([np.zeros(n), q])
    res = linprog(cost, A_ub=A, b_ub=b, bounds=[(None, None)] * n + [(0, None)] * size, method="highs",
                  options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
    assert res.status == 0, res.message
    return res.x[:n], res.fun


def dense_least_squares(f, n, alpha, size=10_000):
    """Discrete weighted least squares on a uniform grid with trapezoid weights."""
    x = np.linspace(-1.0, 1.0, size)
    h = np.full(size, 2.0 / (size - 1))
    h[[0, -1]] *= 0.5
    q = h * (1.0 - x * x) ** (2 * alpha)
    sq = np.sqrt(q)
    V = C.chebvander(x, n - 1)
    c, *_ = np.linalg.lstsq(sq[:, None] * V, sq * f(x), rcond=None)
    err = math.sqrt(float(np.dot(q, (f(x) - V @ c) ** 2)))
    return c, err


def quad_weighted_norm(g, p, alpha, points=()):
    """(int |g|^p (1-x^2)^(alpha p))^(1/p) by QUADPACK, with breakpoints."""
    from scipy.integrate import quad

    pts = sorted(set(float(z) for z in points if -1 < z < 1))
    val, _ = quad(lambda z: abs(g(z)) ** p * (1 - z * z) ** (alpha * p), -1, 1,
                  points=pts or None, limit=400, epsabs=1e-14, epsrel=1e-12)
    return val ** (1.0 / p)
