"""Independent verification routes for the dual-coefficient tables.

Nothing in this module shares arithmetic with the block recurrence in
``dualtable``: the Gram-inverse route inverts the explicit Bernstein mass
matrix, the spectral route assembles the table from a double sum over the
orthogonal grid-polynomial family, and ``hahn_reference`` evaluates the
univariate grid polynomials from their terminating series rather than the
three-term recurrence.  Agreement between these routes and the sweep is the
package's primary correctness evidence, so they are deliberately written
for clarity over speed and capped at moderate degrees.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import gammaln

from .domains import CoeffTable, as_alpha, as_constraint, gamma_set, omega, theta, theta_size
from .errors import ConditioningError, ParameterError
from .hahn import hahn_biv_norm_sq, hahn_eval, pochhammer

#: largest degree the dense oracles accept; beyond this the mass matrix is
#: too ill-conditioned (inverse route) and the spectral weights too extreme
#: (double-sum route) for double precision to be trustworthy.
ORACLE_MAX_DEGREE = 12


def gram_matrix(alpha, n: int, m: int | None = None) -> np.ndarray:
    """Weighted inner products of Bernstein bases: entry (h, l) pairs degrees n, m.

    Assembled in log space from gamma functions; every factor is positive for
    admissible exponents, so no signs are tracked.
    """
    al = as_alpha(alpha)
    if m is None:
        m = n
    if n < 0 or m < 0:
        raise ParameterError(f"degrees n={n}, m={m} must be >= 0")
    H = theta(n).array()
    L = theta(m).array()
    h1, h2 = H[:, 0], H[:, 1]
    h3 = n - h1 - h2
    l1, l2 = L[:, 0], L[:, 1]
    l3 = m - l1 - l2
    log_bn = gammaln(n + 1) - gammaln(h1 + 1) - gammaln(h2 + 1) - gammaln(h3 + 1)
    log_bm = gammaln(m + 1) - gammaln(l1 + 1) - gammaln(l2 + 1) - gammaln(l3 + 1)

    def logpoch(a, x):
        return gammaln(a + x) - gammaln(a)

    log_g = (
        log_bn[:, None]
        + log_bm[None, :]
        + logpoch(al.a1 + 1.0, h1[:, None] + l1[None, :])
        + logpoch(al.a2 + 1.0, h2[:, None] + l2[None, :])
        + logpoch(al.a3 + 1.0, h3[:, None] + l3[None, :])
        - logpoch(al.total + 3.0, n + m)
    )
    return np.exp(log_g)


def table_gram_inverse(alpha, n: int) -> CoeffTable:
    """Dual-coefficient table as the inverse of the Bernstein mass matrix.

    Cholesky solve plus iterative refinement with the residual accumulated
    in extended precision; raises ConditioningError when the refined inverse
    still fails a tight residual bound.
    """
    al = as_alpha(alpha)
    if not 0 <= n <= ORACLE_MAX_DEGREE:
        raise ParameterError(f"gram-inverse oracle supports 0 <= n <= {ORACLE_MAX_DEGREE}, got {n}")
    G = gram_matrix(al, n)
    N = G.shape[0]
    try:
        cf = cho_factor(G)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - guards extreme alpha
        raise ConditioningError(f"mass matrix not numerically SPD at n={n}") from exc
    X = cho_solve(cf, np.eye(N))
    G_l = G.astype(np.longdouble)
    eye_l = np.eye(N, dtype=np.longdouble)
    for _ in range(4):
        R = eye_l - G_l @ X.astype(np.longdouble)
        worst = float(np.max(np.abs(R)))
        if worst <= 1e-14 * float(np.max(np.abs(X))) * float(np.max(np.abs(G))) * N:
            break
        X = X + cho_solve(cf, np.asarray(R, dtype=np.float64))
    R = eye_l - G_l @ X.astype(np.longdouble)
    resid = float(np.max(np.abs(R)))
    bound = 1e-11 * max(1.0, float(np.linalg.norm(G, np.inf)) * float(np.linalg.norm(X, np.inf)))
    if resid > bound:
        raise ConditioningError(
            f"mass-matrix inverse failed refinement at n={n}: residual {resid:.3e} > {bound:.3e}"
        )
    X = 0.5 * (X + X.T)
    iu = np.triu_indices(N)
    return CoeffTable(n, X[iu], alpha=al)


def table_direct_sum(alpha, n: int) -> CoeffTable:
    """Dual-coefficient table from the orthogonal-expansion double sum.

    Every entry is  sum_{q,i} c2[q,i] * H[q,i](k) * H[q,i](l)  where H is the
    bivariate grid-polynomial family evaluated at the complement coordinates
    (k2, n - k1 - k2) and c2 collects binomial and norm factors.  Assembled
    as a single congruence product for all entries at once.
    """
    al = as_alpha(alpha)
    if not 0 <= n <= ORACLE_MAX_DEGREE:
        raise ParameterError(f"direct-sum oracle supports 0 <= n <= {ORACLE_MAX_DEGREE}, got {n}")
    N = theta_size(n)
    eta = al.a2 + al.a3 + 1.0

    # first factor: rows i, columns canonical positions of k
    F1 = np.zeros((n + 1, N))
    pos = 0
    for k1 in range(n + 1):
        M = n - k1
        for k2 in range(M + 1):
            col = hahn_eval(n, float(k2), al.a2, al.a3, float(M))
            col[M + 1 :] = 0.0  # degrees above the grid length vanish on-grid
            F1[:, pos] = col
            pos += 1

    # second factor: F2[i, j, k1] at the radial argument n - k1 - i
    F2 = np.zeros((n + 1, n + 1, n + 1))
    for i in range(n + 1):
        for k1 in range(n + 1):
            F2[i, : n - i + 1, k1] = hahn_eval(
                n - i, float(n - k1 - i), eta + 2.0 * i, al.a1, float(n - i)
            )

    # stack the (q, i) pairs and their spectral weights
    H = np.empty((N, N))
    c2 = np.empty(N)
    row = 0
    for q in range(n + 1):
        fall = math.factorial(n) // math.factorial(n - q)  # |(-n)_q|
        for i in range(q + 1):
            pos = 0
            for k1 in range(n + 1):
                width = n - k1 + 1
                H[row, pos : pos + width] = F1[i, pos : pos + width] * F2[i, q - i, k1]
                pos += width
            c2[row] = math.comb(q, i) ** 2 / (
                (math.factorial(q) * fall) ** 2 * hahn_biv_norm_sq(q, i, al)
            )
            row += 1

    dense = H.T @ (c2[:, None] * H)
    dense = 0.5 * (dense + dense.T)
    iu = np.triu_indices(N)
    return CoeffTable(n, dense[iu], alpha=al)


def hahn_reference(l: int, t: float, a: float, b: float, M: float) -> float:
    """Univariate grid polynomial from its terminating series (no recurrence).

    The grid-length factors are kept inside the sum as a polynomial tail so
    that degrees above M (where the standard series form divides by zero)
    are still evaluated correctly.
    """
    if l < 0:
        raise ParameterError(f"degree l={l} must be >= 0")
    s = a + b + 1.0
    total = 0.0
    for j in range(l + 1):
        term = (
            pochhammer(float(-l), j)
            * pochhammer(l + s, j)
            * pochhammer(-t, j)
            / (pochhammer(a + 1.0, j) * math.factorial(j))
        )
        tail = 1.0
        for r in range(j, l):
            tail *= -M + r
        total += term * tail
    return pochhammer(a + 1.0, l) * total


def table_rel_difference(ta: CoeffTable, tb: CoeffTable) -> float:
    """Largest entrywise difference relative to the block-row magnitude.

    The scale of entry (k, l) is the largest absolute value found in either
    table across block rows k and l, which keeps the comparison meaningful
    for tables whose entries span many orders of magnitude.
    """
    if ta.n != tb.n:
        raise ParameterError(f"tables have different degrees: {ta.n} vs {tb.n}")
    A = ta.dense()
    B = tb.dense()
    mag = np.maximum(np.abs(A), np.abs(B))
    row_max = mag.max(axis=1)
    scale = np.maximum(row_max[:, None], row_max[None, :])
    diff = np.abs(A - B)
    rel = np.zeros_like(diff)
    np.divide(diff, scale, out=rel, where=scale > 0)
    return float(rel.max())


def duality_residual(table: CoeffTable, alpha=None, c=None) -> tuple[float, float]:
    """How far the table is from inverting the mass matrix on its domain.

    Returns ``(residual, scale)`` where residual is the max-abs entry of
    E G - I restricted to the constrained interior (all of the triangle when
    c is zero) and scale is ||E||_inf * ||G||_inf over that block — the
    natural yardstick for a relative tolerance.
    """
    if alpha is None:
        alpha = table.alpha
    if alpha is None:
        raise ParameterError("weight exponents are required (table carries no alpha metadata)")
    al = as_alpha(alpha)
    cc = as_constraint(c)
    n = table.n
    G = gram_matrix(al, n)
    E = table.dense()
    if not cc.is_zero:
        pos = np.array([theta(n).position(k) for k in omega(n, cc)], dtype=np.int64)
        G = G[np.ix_(pos, pos)]
        E = E[np.ix_(pos, pos)]
    R = E @ G - np.eye(G.shape[0])
    resid = float(np.max(np.abs(R)))
    scale = float(np.linalg.norm(E, np.inf) * np.linalg.norm(G, np.inf))
    return resid, scale


def reduce_by_normal_equations(values, n: int, m: int, alpha, c=None, boundary=None) -> np.ndarray:
    """Constrained least-squares degree reduction by explicit normal equations.

    Independent cross-check for the production reduction path: assembles the
    mass matrices, moves prescribed boundary coefficients to the right-hand
    side, and solves for the interior coefficients with a dense solver.
    Polynomial sources only (``values`` has shape (|theta(n)|, d)).
    """
    al = as_alpha(alpha)
    cc = as_constraint(c)
    r = np.atleast_2d(np.asarray(values, dtype=np.float64))
    if r.shape[0] != theta_size(n):
        raise ParameterError(
            f"source coefficients must have {theta_size(n)} rows for degree {n}, got {r.shape[0]}"
        )
    if cc.total > m:
        raise ParameterError(f"constraint total |c|={cc.total} exceeds target degree m={m}")
    dom_m = theta(m)
    om = omega(m, cc)
    gm = gamma_set(m, cc)
    pos_in = np.array([dom_m.position(k) for k in om], dtype=np.int64)
    G_nm = gram_matrix(al, n, m)
    G_mm = gram_matrix(al, m, m)
    rhs = (G_nm.T @ r)[pos_in]
    out = np.zeros((theta_size(m), r.shape[1]))
    if len(gm) > 0:
        if boundary is None:
            raise ParameterError("boundary coefficients are required when constraints are active")
        g = np.atleast_2d(np.asarray(boundary, dtype=np.float64))
        if g.shape != out.shape:
            raise ParameterError(
                f"boundary coefficients must have shape {out.shape}, got {g.shape}"
            )
        pos_bd = np.array([dom_m.position(k) for k in gm], dtype=np.int64)
        rhs = rhs - G_mm[np.ix_(pos_in, pos_bd)] @ g[pos_bd]
        out[pos_bd] = g[pos_bd]
    out[pos_in] = np.linalg.solve(G_mm[np.ix_(pos_in, pos_in)], rhs)
    return out
