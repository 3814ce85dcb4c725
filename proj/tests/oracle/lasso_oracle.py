#!/usr/bin/env python3
"""Independent optimum for the L1-regularized logistic objective on the
small frozen dataset used by test_linear.cpp.

Objective (matching the C++ trainer):
    J(w, b) = (1/n) * sum_i [softplus(m_i) - y_i * m_i] + (1/C) * ||w||_1
with m_i = w . z_i + b over column-standardized features z (mean 0, population
std 1, zero-variance columns left at std 1). The intercept is unpenalized.

The L1 term is handled exactly via the split w = u - v with u, v >= 0, which
turns the problem into a smooth bound-constrained one solved by L-BFGS-B.
KKT conditions are verified before printing. The printed J* values are
frozen into the C++ test as upper/lower brackets for the trainer's final
objective.

Run:  python3 tests/oracle/lasso_oracle.py
"""

import math

import numpy as np
from scipy.optimize import minimize

X_RAW = np.array([
    [0.2, 1.5, -0.3],
    [1.1, 0.3, 0.8],
    [-0.7, 2.2, 0.1],
    [2.0, -0.5, 1.2],
    [0.0, 1.0, -1.0],
    [1.5, 0.2, 0.5],
    [-1.2, 1.8, -0.4],
    [2.3, -1.0, 0.9],
    [0.4, 0.9, 0.05],
    [1.8, -0.2, 1.5],
    [-0.3, 1.4, -0.8],
    [0.9, 0.1, 0.3],
])
Y = np.array([0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1], dtype=float)


def standardize(X):
    """Population-moment standardization, sequential accumulation order."""
    Z = X.copy()
    for j in range(X.shape[1]):
        col = X[:, j]
        s = 0.0
        ss = 0.0
        for v in col:
            s += float(v)
            ss += float(v) * float(v)
        mean = s / len(col)
        var = ss / len(col) - mean * mean
        sd = math.sqrt(var if var > 0.0 else 0.0)
        if sd < 1e-12 * (abs(mean) + 1.0):
            sd = 1.0
        Z[:, j] = (col - mean) / sd
    return Z


def softplus(m):
    return np.logaddexp(0.0, m)


def objective_split(theta, Z, y, C):
    d = Z.shape[1]
    u, v, b = theta[:d], theta[d:2 * d], theta[2 * d]
    w = u - v
    m = Z @ w + b
    loss = np.mean(softplus(m) - y * m)
    return loss + np.sum(u + v) / C


def grad_split(theta, Z, y, C):
    d = Z.shape[1]
    u, v, b = theta[:d], theta[d:2 * d], theta[2 * d]
    w = u - v
    m = Z @ w + b
    resid = 1.0 / (1.0 + np.exp(-m)) - y
    gw = Z.T @ resid / len(y)
    g = np.empty(2 * d + 1)
    g[:d] = gw + 1.0 / C
    g[d:2 * d] = -gw + 1.0 / C
    g[2 * d] = np.mean(resid)
    return g


def solve(C):
    Z = standardize(X_RAW)
    d = Z.shape[1]
    best = None
    for init_scale in (0.0, 0.1, 1.0):
        x0 = np.full(2 * d + 1, init_scale)
        x0[2 * d] = 0.0
        bounds = [(0.0, None)] * (2 * d) + [(None, None)]
        res = minimize(objective_split, x0, args=(Z, Y, C), jac=grad_split,
                       method="L-BFGS-B", bounds=bounds,
                       options=dict(maxiter=20000, ftol=1e-18, gtol=1e-14))
        if best is None or res.fun < best.fun:
            best = res
    u, v, b = best.x[:d], best.x[d:2 * d], best.x[2 * d]
    w = u - v
    # KKT check on the original nonsmooth problem.
    m = Z @ w + b
    resid = 1.0 / (1.0 + np.exp(-m)) - Y
    gw = Z.T @ resid / len(Y)
    for j in range(d):
        if abs(w[j]) > 1e-10:
            assert abs(gw[j] + math.copysign(1.0 / C, w[j])) < 1e-6, (C, j, gw[j], w[j])
        else:
            assert abs(gw[j]) <= 1.0 / C + 1e-6, (C, j, gw[j])
    assert abs(np.mean(resid)) < 1e-8, (C, np.mean(resid))
    return best.fun, w, b


def main():
    for C in (1.0, 2.0, 10.0, 100.0):
        j_star, w, b = solve(C)
        print(f"C = {C}: J* = {float(j_star)!r}")
        print(f"    w = {[round(float(x), 10) for x in w]}, b = {round(float(b), 10)}")


if __name__ == "__main__":
    main()
