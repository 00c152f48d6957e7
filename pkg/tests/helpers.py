"""Shared test utilities: closed-form references and random generators.

Everything here is deliberately independent of the package's production
code paths (no recurrences, no compiled kernels) so tests that use these
helpers cross different arithmetic, not the same code twice.
"""

import math

import numpy as np
from scipy.special import gammaln

from dualbern import TriPatch, theta, theta_size


def dirichlet_moment(alpha, p1, p2, p3):
    """Integral of x1^p1 x2^p2 (1-x1-x2)^p3 against the normalized triangle weight."""
    a1, a2, a3 = alpha
    return math.exp(
        gammaln(a1 + 1 + p1)
        + gammaln(a2 + 1 + p2)
        + gammaln(a3 + 1 + p3)
        + gammaln(a1 + a2 + a3 + 3)
        - gammaln(a1 + 1)
        - gammaln(a2 + 1)
        - gammaln(a3 + 1)
        - gammaln(a1 + a2 + a3 + 3 + p1 + p2 + p3)
    )


def gram_row_sum(alpha, n, h1, h2):
    """Closed form for the integral of one Bernstein polynomial (a mass-matrix row sum)."""
    a1, a2, a3 = alpha
    h3 = n - h1 - h2
    log_b = gammaln(n + 1) - gammaln(h1 + 1) - gammaln(h2 + 1) - gammaln(h3 + 1)
    return math.exp(
        log_b
        + gammaln(a1 + 1 + h1)
        - gammaln(a1 + 1)
        + gammaln(a2 + 1 + h2)
        - gammaln(a2 + 1)
        + gammaln(a3 + 1 + h3)
        - gammaln(a3 + 1)
        - (gammaln(a1 + a2 + a3 + 3 + n) - gammaln(a1 + a2 + a3 + 3))
    )


def random_alpha(rng, lo=-0.9, hi=3.0):
    return tuple(float(a) for a in rng.uniform(lo, hi, size=3))


def random_patch(rng, n, dim=1, rational=False, scale=1.0):
    vals = scale * rng.standard_normal((theta_size(n), dim))
    weights = np.exp(rng.uniform(-0.6, 0.6, theta_size(n))) if rational else None
    return TriPatch(n, vals, weights)


def interior_points(rng, count):
    """Strictly interior barycentric points, away from all three edges."""
    pts = rng.dirichlet((2.0, 2.0, 2.0), size=count)[:, :2]
    return 0.9 * pts + 0.05 / 3.0


def recurrence_residuals(table, alpha):
    """Backward-error style residuals of both three-index identities.

    For every admissible pair the identity's terms are summed with full
    signs; the residual is |sum| and the local scale is the sum of absolute
    terms.  Returns the largest ratio residual / scale over all instances
    with a nonzero scale.
    """
    a1, a2, a3 = alpha
    n = table.n
    dom = list(theta(n))

    def sig(t1, t2):
        s0 = (t1 + t2 - n) * (t2 + a2 + 1.0)
        s2 = t2 * (t1 + t2 - a3 - n - 1.0)
        return s0, s2

    def tau(t1, t2):
        t0 = (t1 + t2 - n) * (t1 + a1 + 1.0)
        tt = t1 * (t1 + t2 - a3 - n - 1.0)
        return t0, tt

    worst = 0.0
    for k1, k2 in dom:
        sk0, sk2 = sig(k1, k2)
        tk0, tk2 = tau(k1, k2)
        for l1, l2 in dom:
            sl0, sl2 = sig(l1, l2)
            tl0, tl2 = tau(l1, l2)
            e = table.get((k1, k2), (l1, l2))
            # stepping the second component of the first index
            terms = [
                -sk0 * table.get((k1, k2 + 1), (l1, l2)),
                (sk0 + sk2 - sl0 - sl2) * e,
                -sk2 * table.get((k1, k2 - 1), (l1, l2)),
                sl0 * table.get((k1, k2), (l1, l2 + 1)),
                sl2 * table.get((k1, k2), (l1, l2 - 1)),
            ]
            scale = sum(abs(t) for t in terms)
            if scale > 0.0:
                worst = max(worst, abs(sum(terms)) / scale)
            # stepping the first component of the first index
            terms = [
                -tk0 * table.get((k1 + 1, k2), (l1, l2)),
                (tk0 + tk2 - tl0 - tl2) * e,
                -tk2 * table.get((k1 - 1, k2), (l1, l2)),
                tl0 * table.get((k1, k2), (l1 + 1, l2)),
                tl2 * table.get((k1, k2), (l1 - 1, l2)),
            ]
            scale = sum(abs(t) for t in terms)
            if scale > 0.0:
                worst = max(worst, abs(sum(terms)) / scale)
    return worst
