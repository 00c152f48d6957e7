"""Gauss product rules for weighted integrals over the unit triangle.

The triangle is collapsed to the unit square (x1 = u, x2 = v(1-u)); the
Jacobian and the weight's three power factors then split into independent
one-dimensional Jacobi-type weights in u and v, each handled by a standard
Golub-Welsch eigenvalue rule.  A q-point-per-axis rule integrates every
polynomial of total degree <= 2q - 1 exactly against the weight.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .domains import as_alpha
from .errors import ParameterError


def jacobi_rule(q: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """q-point Gauss rule on [-1, 1] for the weight (1-x)^a (1+x)^b.

    Computed by diagonalizing the symmetrized three-term recurrence of the
    monic orthogonal polynomials.  The first off-diagonal entry is written
    in a cancelled form so that a + b = -1 (an admissible corner of the
    parameter range) does not divide zero by zero.
    """
    if q < 1:
        raise ParameterError(f"rule size q={q} must be >= 1")
    if a <= -1.0 or b <= -1.0:
        raise ParameterError(f"weight exponents a={a}, b={b} must both exceed -1")
    apb = a + b
    diag = np.empty(q)
    diag[0] = (b - a) / (apb + 2.0)
    for k in range(1, q):
        diag[k] = (b * b - a * a) / ((2.0 * k + apb) * (2.0 * k + apb + 2.0))
    sub = np.empty(q - 1)
    for k in range(1, q):
        if k == 1:
            Bk = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + apb) ** 2 * (3.0 + apb))
        else:
            Bk = (
                4.0
                * k
                * (k + a)
                * (k + b)
                * (k + apb)
                / ((2.0 * k + apb) ** 2 * (2.0 * k + apb + 1.0) * (2.0 * k + apb - 1.0))
            )
        sub[k - 1] = math.sqrt(Bk)
    nodes, vecs = eigh_tridiagonal(diag, sub)
    mu0 = math.exp(
        (apb + 1.0) * math.log(2.0)
        + math.lgamma(a + 1.0)
        + math.lgamma(b + 1.0)
        - math.lgamma(apb + 2.0)
    )
    weights = mu0 * vecs[0, :] ** 2
    return nodes, weights


@lru_cache(maxsize=64)
def _triangle_rule_cached(a1: float, a2: float, a3: float, q: int):
    xu, wu = jacobi_rule(q, a2 + a3 + 1.0, a1)
    xv, wv = jacobi_rule(q, a3, a2)
    u = 0.5 * (1.0 + xu)
    v = 0.5 * (1.0 + xv)
    su = wu * 2.0 ** (-(a1 + a2 + a3 + 2.0))
    sv = wv * 2.0 ** (-(a2 + a3 + 1.0))
    norm = math.exp(
        math.lgamma(a1 + a2 + a3 + 3.0)
        - math.lgamma(a1 + 1.0)
        - math.lgamma(a2 + 1.0)
        - math.lgamma(a3 + 1.0)
    )
    uu = np.repeat(u, q)
    vv = np.tile(v, q)
    pts = np.column_stack([uu, vv * (1.0 - uu)])
    wts = norm * np.repeat(su, q) * np.tile(sv, q)
    pts.setflags(write=False)
    wts.setflags(write=False)
    return pts, wts


def triangle_rule(alpha, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (q^2, 2) and weights (q^2,) integrating against the normalized
    triangle weight; exact for polynomials of total degree <= 2q - 1.

    The rule integrates f as  sum_j wts[j] * f(pts[j]);  the weight function
    (including its normalizing constant, which makes the measure a
    probability measure) is folded into the weights.  Results are cached per
    (alpha, q) and returned as read-only arrays.
    """
    al = as_alpha(alpha)
    if q < 1:
        raise ParameterError(f"rule size q={q} must be >= 1")
    return _triangle_rule_cached(al.a1, al.a2, al.a3, int(q))
