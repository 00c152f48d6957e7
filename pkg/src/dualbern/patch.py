"""Triangular Bezier patches: storage, evaluation, degree elevation.

A patch of degree n stores one control value per index of theta(n), in the
canonical ordering of ``domains``, plus optional positive weights that turn
it into a rational patch.  Points are given in the first two barycentric
coordinates (x1, x2); the third is 1 - x1 - x2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .domains import as_alpha, theta, theta_position, theta_size
from .errors import DomainError, ParameterError

#: slack for point-in-triangle checks, forgiving honest rounding at edges
_EDGE_TOL = 1e-12


@dataclass(eq=False)
class TriPatch:
    """Control net of a (possibly rational) triangular Bezier patch."""

    n: int
    values: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError(f"degree n={self.n} must be >= 0")
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim == 1:
            vals = vals[:, None]
        N = theta_size(self.n)
        if vals.ndim != 2 or vals.shape[0] != N:
            raise ParameterError(
                f"values must have {N} rows for degree {self.n}, got shape {vals.shape}"
            )
        self.values = vals
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=np.float64).reshape(-1)
            if w.shape != (N,):
                raise ParameterError(f"weights must have shape ({N},), got {w.shape}")
            if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
                raise ParameterError("weights must be finite and strictly positive")
            self.weights = w

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def is_rational(self) -> bool:
        return self.weights is not None


def _check_points(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    pts = np.atleast_2d(np.asarray(pts, dtype=np.float64))
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ParameterError(f"points must have shape (npts, 2), got {pts.shape}")
    x1 = pts[:, 0]
    x2 = pts[:, 1]
    x3 = 1.0 - x1 - x2
    if np.any(x1 < -_EDGE_TOL) or np.any(x2 < -_EDGE_TOL) or np.any(x3 < -_EDGE_TOL):
        bad = pts[(x1 < -_EDGE_TOL) | (x2 < -_EDGE_TOL) | (x3 < -_EDGE_TOL)][0]
        raise DomainError(
            f"point ({float(bad[0])}, {float(bad[1])}) lies outside the unit triangle"
        )
    return x1, x2, np.maximum(x3, 0.0)


@lru_cache(maxsize=256)
def _lowering_maps(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Positions in theta(level) of k+e1, k+e2, k for each k in theta(level-1)."""
    ks = theta(level - 1).array()
    m1 = np.array([theta_position(level, k1 + 1, k2) for k1, k2 in ks], dtype=np.int64)
    m2 = np.array([theta_position(level, k1, k2 + 1) for k1, k2 in ks], dtype=np.int64)
    m3 = np.array([theta_position(level, k1, k2) for k1, k2 in ks], dtype=np.int64)
    return m1, m2, m3


def patch_eval(patch: TriPatch, pts) -> np.ndarray:
    """Evaluate a patch at points inside the closed triangle; returns (npts, dim).

    Pyramid (de Casteljau) scheme, vectorized over all points at once.
    Rational patches run the same pyramid on homogeneous controls and divide
    at the end; positive weights keep the denominator positive everywhere on
    the closed triangle.
    """
    x1, x2, x3 = _check_points(pts)
    if patch.is_rational:
        C = np.concatenate([patch.values * patch.weights[:, None], patch.weights[:, None]], axis=1)
    else:
        C = patch.values
    work = np.repeat(C[:, :, None], x1.size, axis=2)
    for level in range(patch.n, 0, -1):
        m1, m2, m3 = _lowering_maps(level)
        work = x1 * work[m1] + x2 * work[m2] + x3 * work[m3]
    out = work[0]
    if patch.is_rational:
        return (out[:-1] / out[-1]).T
    return out.T


def bernstein_eval(n: int, k, x) -> float:
    """Single Bernstein basis value of degree n at one point."""
    k1, k2 = int(k[0]), int(k[1])
    k3 = n - k1 - k2
    if k1 < 0 or k2 < 0 or k3 < 0:
        raise DomainError(f"index {(k1, k2)} is not a member of theta({n})")
    x1, x2, x3 = _check_points(np.asarray(x, dtype=np.float64).reshape(1, 2))
    coef = math.comb(n, k1) * math.comb(n - k1, k2)
    return float(coef * x1[0] ** k1 * x2[0] ** k2 * x3[0] ** k3)


def bernstein_matrix(n: int, pts) -> np.ndarray:
    """All Bernstein basis values of degree n: shape (|theta(n)|, npts)."""
    x1, x2, x3 = _check_points(pts)
    ks = theta(n).array()
    k1 = ks[:, 0]
    k2 = ks[:, 1]
    k3 = n - k1 - k2
    coef = np.array(
        [math.comb(n, a) * math.comb(n - a, b) for a, b in ks], dtype=np.float64
    )
    return (
        coef[:, None]
        * x1[None, :] ** k1[:, None]
        * x2[None, :] ** k2[:, None]
        * x3[None, :] ** k3[:, None]
    )


def weight_eval(alpha, pts) -> np.ndarray:
    """Normalized triangle weight at points; includes the constant that makes
    the weight integrate to one over the triangle.

    Raises DomainError where a zero barycentric coordinate meets a negative
    exponent (the weight is unbounded there).
    """
    al = as_alpha(alpha)
    x1, x2, x3 = _check_points(pts)
    for coord, expo, name in ((x1, al.a1, "x1"), (x2, al.a2, "x2"), (x3, al.a3, "1-x1-x2")):
        if expo < 0.0 and np.any(coord == 0.0):
            raise DomainError(
                f"weight is unbounded where {name} = 0 (exponent {expo} < 0)"
            )
    norm = math.exp(
        math.lgamma(al.total + 3.0)
        - math.lgamma(al.a1 + 1.0)
        - math.lgamma(al.a2 + 1.0)
        - math.lgamma(al.a3 + 1.0)
    )
    return norm * x1**al.a1 * x2**al.a2 * x3**al.a3


def elevate_degree(patch: TriPatch, target: int) -> TriPatch:
    """Rewrite a patch exactly in the Bernstein basis of a higher degree.

    Rational patches elevate their homogeneous (weighted) controls, so the
    represented surface is unchanged.
    """
    if target < patch.n:
        raise ParameterError(f"target degree {target} is below patch degree {patch.n}")
    if target == patch.n:
        w = None if patch.weights is None else patch.weights.copy()
        return TriPatch(patch.n, patch.values.copy(), w)
    if patch.is_rational:
        C = np.concatenate([patch.values * patch.weights[:, None], patch.weights[:, None]], axis=1)
    else:
        C = patch.values
    m = patch.n
    while m < target:
        Nn = theta_size(m + 1)
        out = np.zeros((Nn, C.shape[1]))
        for k1, k2 in theta(m + 1):
            p = theta_position(m + 1, k1, k2)
            acc = np.zeros(C.shape[1])
            if k1 >= 1 and k1 - 1 + k2 <= m:
                acc += k1 * C[theta_position(m, k1 - 1, k2)]
            if k2 >= 1 and k1 + k2 - 1 <= m:
                acc += k2 * C[theta_position(m, k1, k2 - 1)]
            if k1 + k2 <= m:
                acc += (m + 1 - k1 - k2) * C[theta_position(m, k1, k2)]
            out[p] = acc / (m + 1)
        C = out
        m += 1
    if patch.is_rational:
        w = C[:, -1]
        return TriPatch(target, C[:, :-1] / w[:, None], w)
    return TriPatch(target, C)
