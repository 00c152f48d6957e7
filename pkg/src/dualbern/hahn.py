"""Hahn polynomials on finite integer grids.

Everything here works with the monic-free "h" normalization fixed by
h_0 = 1 and the three-term recurrence returned by :func:`hahn_rec_coeffs`.
The bivariate family lives on the triangular grid and is what the dual
Bernstein machinery expands against; its squared orthogonality norm is
:func:`hahn_biv_norm_sq`.

Recurrence denominators are kept in cancelled form so that parameters
``a, b > -1`` never divide by zero (the raw rational forms have removable
singularities at the first step).
"""

from __future__ import annotations

import math

import numpy as np

from .domains import as_alpha
from .errors import ParameterError


def pochhammer(x: float, m: int) -> float:
    """Rising factorial x (x+1) ... (x+m-1); equals 1 when m == 0."""
    if m < 0:
        raise ParameterError(f"pochhammer order m={m} must be >= 0")
    out = 1.0
    for j in range(m):
        out *= x + j
    return out


def log_pochhammer(x: float, m: int) -> tuple[float, float]:
    """Signed log of the rising factorial: returns (sign, log|value|).

    Stays exact about zeros (sign 0.0, log -inf) so callers can multiply
    long chains of factors without overflow.
    """
    if m < 0:
        raise ParameterError(f"pochhammer order m={m} must be >= 0")
    sign = 1.0
    logabs = 0.0
    for j in range(m):
        f = x + j
        if f == 0.0:
            return 0.0, -math.inf
        if f < 0.0:
            sign = -sign
        logabs += math.log(abs(f))
    return sign, logabs


def _check_ab(a: float, b: float) -> None:
    if a <= -1.0 or b <= -1.0:
        raise ParameterError(f"grid polynomial parameters a={a}, b={b} must both exceed -1")


def hahn_rec_coeffs(l: int, a: float, b: float, M: float) -> tuple[float, float, float]:
    """Coefficients (P, Q, B) with h_{l+1}(t) = (P*t + Q) h_l(t) + B h_{l-1}(t).

    The l = 0 step is returned in its cancelled form (B = 0), matching
    h_1(t) = (a+b+2) t - (a+1) M exactly.  For l >= 1 all denominators are
    strictly positive whenever a, b > -1.
    """
    if l < 0:
        raise ParameterError(f"recurrence step l={l} must be >= 0")
    if l == 0:
        return a + b + 2.0, -(a + 1.0) * M, 0.0
    s = a + b + 1.0
    P = (2 * l + s + 1.0) * (2 * l + s) / (l + s)
    D = (2 * l + s + 1.0) * l * (l + M + s) * (l + b) / ((l + s) * (2 * l + s - 1.0))
    E = (l + a + 1.0) * (M - l)
    B = -D * (l + a) * (M - l + 1.0)
    return P, -D - E, B


def hahn_eval(lmax: int, t: float, a: float, b: float, M: float) -> np.ndarray:
    """Values h_0(t), ..., h_lmax(t) by forward recurrence.

    Parameters
    ----------
    lmax : highest degree wanted (>= 0).
    t : evaluation point (any real; the natural grid is 0..M).
    a, b : weight parameters, each > -1.
    M : grid length parameter.

    Notes
    -----
    Degrees above M are still well-defined polynomials, but on the integer
    grid 0..M they vanish identically in exact arithmetic; forward
    recurrence then returns rounding noise, so callers that work on-grid
    should zero those entries themselves.
    """
    _check_ab(a, b)
    if lmax < 0:
        raise ParameterError(f"lmax={lmax} must be >= 0")
    out = np.empty(lmax + 1)
    out[0] = 1.0
    if lmax == 0:
        return out
    prev = 1.0
    P, Q, _ = hahn_rec_coeffs(0, a, b, M)
    cur = P * t + Q
    out[1] = cur
    for l in range(1, lmax):
        P, Q, B = hahn_rec_coeffs(l, a, b, M)
        cur, prev = (P * t + Q) * cur + B * prev, cur
        out[l + 1] = cur
    return out


def hahn_single(l: int, t: float, a: float, b: float, M: float) -> float:
    """h_l(t) alone; convenience wrapper around the forward recurrence."""
    return float(hahn_eval(l, t, a, b, M)[l])


def hahn_clenshaw(coeffs, t: float, a: float, b: float, M: float) -> float:
    """Sum_{i=0}^{N} coeffs[i] * h_i(t) via backward (Clenshaw) recurrence."""
    _check_ab(a, b)
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.ndim != 1 or coeffs.size == 0:
        raise ParameterError("coefficient array must be one-dimensional and non-empty")
    N = coeffs.size - 1
    v1 = 0.0  # V_{i+1}
    v2 = 0.0  # V_{i+2}
    for i in range(N, -1, -1):
        P, Q, _ = hahn_rec_coeffs(i, a, b, M)
        _, _, Bnext = hahn_rec_coeffs(i + 1, a, b, M)
        v1, v2 = coeffs[i] + (P * t + Q) * v1 + Bnext * v2, v1
    return float(v1)


def hahn_difference_apply(values, a: float, b: float) -> np.ndarray:
    """Apply the grid second-difference operator to samples over t = 0..M.

    ``values[t]`` holds F(t) for t = 0..M (M inferred from the length).
    The returned array holds

        (D F)(t) = U(t) F(t+1) - (U(t) + W(t)) F(t) + W(t) F(t-1),
        U(t) = (t - M)(t + a + 1),   W(t) = t (t - b - M - 1),

    for which h_j is an eigenvector with eigenvalue j (j + a + b + 1).
    U vanishes at t = M and W at t = 0, so no out-of-grid samples are read.
    """
    _check_ab(a, b)
    F = np.asarray(values, dtype=np.float64)
    if F.ndim != 1 or F.size == 0:
        raise ParameterError("sample array must be one-dimensional and non-empty")
    M = F.size - 1
    out = np.empty_like(F)
    for t in range(M + 1):
        U = (t - M) * (t + a + 1.0)
        W = t * (t - b - M - 1.0)
        acc = -(U + W) * F[t]
        if t < M:
            acc += U * F[t + 1]
        if t > 0:
            acc += W * F[t - 1]
        out[t] = acc
    return out


def hahn_biv_eval(q: int, i: int, t1: float, t2: float, alpha, n: int) -> float:
    """Bivariate grid polynomial of total degree q, split index i, at (t1, t2).

    Built as a product of two univariate factors: the first runs in t1 with
    a grid length that itself depends on t1 + t2, the second runs in the
    "radial" variable t1 + t2 - i.
    """
    al = as_alpha(alpha)
    if not 0 <= i <= q <= n:
        raise ParameterError(f"need 0 <= i <= q <= n, got q={q}, i={i}, n={n}")
    f1 = hahn_single(i, t1, al.a2, al.a3, t1 + t2)
    eta = al.a2 + al.a3 + 1.0
    f2 = hahn_single(q - i, t1 + t2 - i, eta + 2.0 * i, al.a1, n - i)
    return f1 * f2


def hahn_biv_norm_sq(q: int, i: int, alpha) -> float:
    """Squared orthogonality norm of the (q, i) bivariate grid polynomial.

    Assembled from rising factorials of strictly positive arguments only,
    so the result is positive for every admissible alpha (each entry > -1);
    the naive closed form has factor pairs whose signs cancel, and this is
    the cancelled arrangement.
    """
    al = as_alpha(alpha)
    if not 0 <= i <= q:
        raise ParameterError(f"need 0 <= i <= q, got q={q}, i={i}")
    eta = al.a2 + al.a3 + 1.0
    sigma = al.total + 2.0
    base = (
        pochhammer(al.a1 + 1.0, q - i)
        * pochhammer(al.a2 + 1.0, i)
        * pochhammer(al.a3 + 1.0, i)
    )
    if i == 0:
        hook = pochhammer(eta + 1.0, q)
    else:
        hook = pochhammer(i + eta, q + 1) / (2.0 * i + eta)
    if q + i == 0:
        tail = 1.0
    else:
        tail = 1.0 / ((2.0 * q + sigma) * pochhammer(sigma + 1.0, q + i - 1))
    return base * hook * tail / (math.factorial(i) * math.factorial(q - i))
