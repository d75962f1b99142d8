"""Does tau_t map polynomials of degree k to degree <= k?

Prints the residual of a degree-k Chebyshev fit to tau_t T_k on 64 points.
Residuals at rounding level mean yes (for the sampled t).
"""
from gensmooth.verifier import degree_probe

if __name__ == "__main__":
    print("k  " + " ".join(f"t={t:<9g}" for t in (-1.0, -0.3, 0.2, 0.7, 1.0)))
    for k in range(11):
        print(f"{k:<3d}" + " ".join(f"{degree_probe(k, t):<11.2e}" for t in (-1.0, -0.3, 0.2, 0.7, 1.0)))
