"""Recompute the frozen reference values used by the test suite.

Uses only tests/oracles.py, mpmath and scipy; none of the package's solvers
or quadrature rules are involved. Run from the repository root:

    python3 scripts/compute_golden.py
"""
import math
import warnings
import sys
from pathlib import Path

import mpmath as mp
import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
import oracles  # noqa: E402


def kernel_mp(x, t, phi):
    mp.mp.dps = 40
    x, t, phi = mp.mpf(x), mp.mpf(t), mp.mpf(phi)
    s = mp.sqrt(1 - x**2)
    A = s * mp.cos(t) + x * mp.sin(t) * mp.cos(phi) + s * (1 - mp.cos(t)) * mp.sin(phi) ** 2
    B = x * mp.cos(t) - s * mp.sin(t) * mp.cos(phi)
    return A, B, 2 * A**2 - 1 + B**2


def tau_quad(f, t, x, kinks=(0.0,)):
    """tau_t f(x) with QUADPACK in phi, split where B crosses a kink of f."""
    s = math.sqrt(1 - x * x)
    ct, st = math.cos(t), math.sin(t)

    def g(phi):
        A = s * ct + x * st * math.cos(phi) + s * (1 - ct) * math.sin(phi) ** 2
        B = x * ct - s * st * math.cos(phi)
        return (2 * A * A - 1 + B * B) * f(B)

    pts = []
    for b in kinks:
        c = (x * ct - b) / (s * st) if st else 2.0
        if abs(c) < 1:
            pts.append(math.acos(c))
    val, _ = quad(g, 0, math.pi, points=pts or None, limit=200, epsabs=1e-15, epsrel=1e-13)
    return val / (math.pi * (1 - x * x) * math.cos(t / 2) ** 4)


def absx_distance(t, p=2.0, alpha=1.0):
    """|| tau_t |x| - |x| ||_{p, alpha} with nested QUADPACK."""
    def h(x):
        return tau_quad(abs, t, x) - abs(x)

    pts = {0.0}
    for base in (math.pi / 2,):
        for sh in (t, -t):
            th = base + sh
            if 0 < th < math.pi:
                pts.add(math.cos(th))
    return oracles.quad_weighted_norm(h, p, alpha, sorted(pts))


def absx_modulus(delta, size=33):
    half = (size - 1) // 2
    # tau_{-t} = tau_t, so t >= 0 suffices
    ts = [delta * j / half for j in range(0, half + 1)]
    vals = [absx_distance(t) if t else 0.0 for t in ts]
    k = int(np.argmax(vals))
    lo, hi = ts[max(k - 1, 0)], ts[min(k + 1, half)]
    res = minimize_scalar(lambda t: -absx_distance(t), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-7 * delta})
    return max(vals[k], -res.fun)


def main():
    warnings.simplefilter("ignore")
    _, e = oracles.linf_lp(np.abs, 6, 1.0)
    print(f"LINF_ABSX_N6_A1 = {float(e)!r}")
    _, e = oracles.l1_lp(np.exp, 5, 0.75)
    print(f"L1_EXPX_N5_A075 = {e!r}")
    _, e = oracles.dense_least_squares(np.abs, 8, 1.0)
    print(f"L2_ABSX_N8_A1 = {e!r}")
    A, B, K = kernel_mp(0.6, 0.3, 1.1)
    print(f"KERNEL_06_03_11 = ({mp.nstr(B, 20)}, {mp.nstr(A, 20)}, {mp.nstr(K, 20)})  # (B, A, K)")
    print(f"OMEGA_X_QUARTER = {3 * (1 - math.cos(0.25)) * math.sqrt(16 / 105)!r}")
    for d in (1 / 32, 1 / 16, 1 / 8, 1 / 4):
        print(f"OMEGA_ABSX_P2_A1[{d!r}] = {absx_modulus(d)!r}", flush=True)


if __name__ == "__main__":
    main()
