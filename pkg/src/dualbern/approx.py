"""Constrained L2 degree reduction and rational-patch approximation.

Given a source patch of degree n (polynomial or rational) the reducer finds
the degree-m patch closest in the weighted L2 sense whose boundary-layer
coefficients are prescribed; the interior coefficients come from one matrix
product with the dual-coefficient table — no linear system is solved here.

The only integrals needed pair each source basis function with each target
Bernstein polynomial.  For polynomial sources (no weights, or all weights
equal, where the rational basis collapses) they have a closed form; genuine
rational sources go through an adaptive Gauss ladder that doubles the rule
size until the whole integral table settles to a relative tolerance.
"""

from __future__ import annotations

import math

import numpy as np

from .domains import as_alpha, as_constraint, gamma_set, omega, theta, theta_size
from .dualtable import compute_table
from .errors import ConvergenceError, ParameterError
from .oracles import gram_matrix
from .patch import TriPatch, bernstein_matrix, patch_eval
from .quadrature import triangle_rule

#: Gauss ladder used by the adaptive integrators: points per axis.
_LADDER = (4, 8, 16, 32, 64)


def _is_polynomial(patch: TriPatch) -> bool:
    """True when the patch's basis functions reduce to plain Bernstein ones."""
    if patch.weights is None:
        return True
    return bool(np.all(patch.weights == patch.weights[0]))


def _trinomials(m: int) -> np.ndarray:
    """Trinomial coefficients of degree m in canonical theta order."""
    return np.array(
        [math.comb(m, k1) * math.comb(m - k1, k2) for k1, k2 in theta(m)],
        dtype=np.float64,
    )


def weighted_products(source: TriPatch, m: int, alpha, qtol: float = 1e-12) -> np.ndarray:
    """Integrals of (source basis h) x (degree-m Bernstein l) against the weight.

    Shape (|theta(n)|, |theta(m)|).  For a rational source the basis is
    w_h B_h / sum_j w_j B_j and the entries are computed on the Gauss ladder;
    convergence means one doubling changes no entry by more than qtol
    relative to the table's largest magnitude.
    """
    al = as_alpha(alpha)
    if qtol <= 0.0:
        raise ParameterError(f"qtol={qtol} must be positive")
    if _is_polynomial(source):
        return gram_matrix(al, source.n, m)
    prev = None
    for q in _LADDER:
        pts, wts = triangle_rule(al, q)
        Bn = bernstein_matrix(source.n, pts)
        Bm = bernstein_matrix(m, pts)
        denom = source.weights @ Bn
        core = (source.weights[:, None] * Bn) * (wts / denom)[None, :]
        table = core @ Bm.T
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(table))))
            if float(np.max(np.abs(table - prev))) <= qtol * scale:
                return table
        prev = table
    raise ConvergenceError(
        f"integral table did not settle to qtol={qtol} within {_LADDER[-1]}^2-point rules"
    )


def reduce_degree(
    source: TriPatch,
    m: int,
    alpha,
    c=None,
    boundary=None,
    qtol: float = 1e-12,
) -> TriPatch:
    """Best weighted-L2 degree-m approximation with prescribed boundary layers.

    Parameters
    ----------
    source : patch of degree n (polynomial or rational), any value dimension.
    m : target degree.
    alpha : weight exponents of the L2 inner product.
    c : constraint orders; the indices of theta(m) outside omega(m, c) are
        not free and must be supplied via ``boundary``.
    boundary : array of shape (|theta(m)|, dim); only the rows at constrained
        indices are read, and they are copied into the result verbatim.
    qtol : relative tolerance of the adaptive integrator (rational sources).

    Returns
    -------
    TriPatch of degree m (always polynomial).
    """
    al = as_alpha(alpha)
    cc = as_constraint(c)
    if cc.total > m:
        raise ParameterError(f"constraint total |c|={cc.total} exceeds target degree m={m}")
    dom = theta(m)
    om = omega(m, cc)
    gm = gamma_set(m, cc)
    pos_in = np.array([dom.position(k) for k in om], dtype=np.int64)

    prods = weighted_products(source, m, al, qtol=qtol)
    tri = _trinomials(m)
    u = (prods.T @ source.values) / tri[:, None]

    out = np.zeros((theta_size(m), source.dim))
    if len(gm) > 0:
        if boundary is None:
            raise ParameterError("boundary coefficients are required when constraints are active")
        g = np.asarray(boundary, dtype=np.float64)
        if g.ndim == 1:
            g = g[:, None]
        if g.shape != out.shape:
            raise ParameterError(f"boundary coefficients must have shape {out.shape}, got {g.shape}")
        pos_bd = np.array([dom.position(k) for k in gm], dtype=np.int64)
        G_mm = gram_matrix(al, m)
        v = (G_mm[:, pos_bd] @ g[pos_bd]) / tri[:, None]
        out[pos_bd] = g[pos_bd]
    else:
        v = np.zeros_like(u)

    table = compute_table(al, m, cc)
    E_in = table.dense()[np.ix_(pos_in, pos_in)]
    out[pos_in] = E_in @ (tri[pos_in, None] * (u - v)[pos_in])
    return TriPatch(m, out)


def l2_distance(pa: TriPatch, pb: TriPatch, alpha, qtol: float = 1e-12) -> float:
    """Weighted L2 distance between two patches over the triangle.

    Polynomial pairs use the closed-form mass matrices; any rational operand
    switches to the adaptive Gauss ladder on the squared pointwise difference.
    """
    al = as_alpha(alpha)
    if pa.dim != pb.dim:
        raise ParameterError(f"patches have different value dimensions: {pa.dim} vs {pb.dim}")
    if qtol <= 0.0:
        raise ParameterError(f"qtol={qtol} must be positive")
    if _is_polynomial(pa) and _is_polynomial(pb):
        a = pa.values
        b = pb.values
        G_aa = gram_matrix(al, pa.n)
        G_bb = gram_matrix(al, pb.n)
        G_ab = gram_matrix(al, pa.n, pb.n)
        sq = float(
            np.sum(a * (G_aa @ a)) - 2.0 * np.sum(a * (G_ab @ b)) + np.sum(b * (G_bb @ b))
        )
        return math.sqrt(max(sq, 0.0))
    prev = None
    for q in _LADDER:
        pts, wts = triangle_rule(al, q)
        diff = patch_eval(pa, pts) - patch_eval(pb, pts)
        sq = float(wts @ np.sum(diff * diff, axis=1))
        if prev is not None and abs(sq - prev) <= qtol * max(1.0, abs(sq)):
            return math.sqrt(max(sq, 0.0))
        prev = sq
    raise ConvergenceError(
        f"distance integral did not settle to qtol={qtol} within {_LADDER[-1]}^2-point rules"
    )
