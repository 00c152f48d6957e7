"""Connection-coefficient tables of (constrained) dual bivariate Bernstein bases.

The central object is the symmetric table e[k, l] such that the dual basis
polynomial attached to index k is  sum_l e[k, l] B_l  in the Bernstein basis
of the same degree.  ``compute_table`` produces it with an O(n^4) block
recurrence (compiled inner loops in ``_kernels``); a plain-Python mirror of
the same sweep is kept for cross-checking the compiled path.

Boundary-constrained tables are obtained from an unconstrained table of
reduced degree and shifted weight exponents, scaled by explicit binomial
ratios; entries pairing any index outside the constrained interior are zero.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .domains import (
    AlphaParams,
    CoeffTable,
    ConstraintVector,
    as_alpha,
    as_constraint,
    omega,
    theta,
    theta_position,
    theta_size,
)
from .errors import DegenerateRecurrenceError, ParameterError
from .hahn import hahn_eval, hahn_rec_coeffs, pochhammer


def compute_table(alpha, n: int, c=None, engine: str = "compiled") -> CoeffTable:
    """Symmetric coefficient table of the dual basis of degree n.

    Parameters
    ----------
    alpha : weight exponent triple (each entry > -1).
    n : basis degree (>= 0).
    c : optional constraint orders; nonzero c yields the table of the dual
        basis of the boundary-constrained subspace, stored over the full
        index triangle with zeros on boundary-paired entries.
    engine : "compiled" (default) or "python" (slow reference sweep, kept
        for validating the compiled path).

    Returns
    -------
    CoeffTable
    """
    al = as_alpha(alpha)
    cc = as_constraint(c)
    if n < 0:
        raise ParameterError(f"degree n={n} must be >= 0")
    if cc.total > n:
        raise ParameterError(f"constraint total |c|={cc.total} exceeds degree n={n}")
    if engine not in ("compiled", "python"):
        raise ParameterError(f"unknown engine {engine!r}")
    if not cc.is_zero:
        inner = compute_table(al.shifted(cc), n - cc.total, engine=engine)
        return _embed_constrained(al, n, cc, inner)
    if engine == "compiled":
        packed = _kernels.dual_table_packed(n, al.a1, al.a2, al.a3, 0)
    else:
        packed = _sweep_reference(n, al.a1, al.a2, al.a3)
    _check_finite(packed, n, al)
    return CoeffTable(n, packed, alpha=al)


def _check_finite(packed: np.ndarray, n: int, al: AlphaParams) -> None:
    # a finite sum certifies every entry; a non-finite one still needs the
    # elementwise scan, since finite values alone can overflow the total
    if math.isfinite(float(packed.sum())):
        return
    if not np.all(np.isfinite(packed)):
        raise DegenerateRecurrenceError(
            f"block recurrence overflowed at n={n}, alpha={al.as_tuple()}"
        )


def compute_table_symmetric(alpha, n: int) -> CoeffTable:
    """Table for a weight with (at least) two equal exponents, at half cost.

    When the second and third exponents are equal the sweep only visits block
    rows with 2*k2 <= n - k1 and recovers the rest by reflection.  The other
    two equalities are reduced to that case by permuting the barycentric
    coordinates and remapping indices accordingly.
    """
    al = as_alpha(alpha)
    if n < 0:
        raise ParameterError(f"degree n={n} must be >= 0")
    if al.a2 == al.a3:
        packed = _kernels.dual_table_packed(n, al.a1, al.a2, al.a3, 1)
        _check_finite(packed, n, al)
        return CoeffTable(n, packed, alpha=al)
    if al.a1 == al.a3:
        # swap the first two coordinates: new exponents (a2, a1, a3)
        swapped = AlphaParams(al.a2, al.a1, al.a3)
        base = compute_table_symmetric(swapped, n)
        remap = lambda k1, k2: (k2, k1)  # noqa: E731
    elif al.a1 == al.a2:
        # cycle coordinates (1,2,3) -> (3,1,2): new exponents (a3, a1, a2)
        cycled = AlphaParams(al.a3, al.a1, al.a2)
        base = compute_table_symmetric(cycled, n)
        remap = lambda k1, k2: (n - k1 - k2, k1)  # noqa: E731
    else:
        raise ParameterError(
            f"alpha={al.as_tuple()} has no two equal entries; use compute_table"
        )
    perm = np.empty(theta_size(n), dtype=np.int64)
    for k in theta(n):
        m1, m2 = remap(k.k1, k.k2)
        perm[theta_position(n, k.k1, k.k2)] = theta_position(n, m1, m2)
    dense = base.dense()[np.ix_(perm, perm)]
    iu = np.triu_indices(theta_size(n))
    return CoeffTable(n, dense[iu], alpha=al)


def _embed_constrained(al: AlphaParams, n: int, cc: ConstraintVector, inner: CoeffTable) -> CoeffTable:
    """Scale the reduced-degree table into the constrained table of degree n."""
    ctot = cc.total
    # global factor: (|alpha|+3)_{2|c|} / prod_i (alpha_i+1)_{2 c_i}
    U = pochhammer(al.total + 3.0, 2 * ctot)
    U /= pochhammer(al.a1 + 1.0, 2 * cc.c1)
    U /= pochhammer(al.a2 + 1.0, 2 * cc.c2)
    U /= pochhammer(al.a3 + 1.0, 2 * cc.c3)
    om = omega(n, cc)
    # per-index factor: ratio of trinomial coefficients at shifted index
    denom = pochhammer(n - ctot + 1.0, ctot)
    v = np.empty(len(om))
    for j, k in enumerate(om):
        k3 = n - k.k1 - k.k2
        v[j] = (
            pochhammer(k.k1 - cc.c1 + 1.0, cc.c1)
            * pochhammer(k.k2 - cc.c2 + 1.0, cc.c2)
            * pochhammer(k3 - cc.c3 + 1.0, cc.c3)
            / denom
        )
    inner_dense = inner.dense()
    block = (U * np.outer(v, v)) * inner_dense  # omega order == inner theta order
    out = CoeffTable(n, alpha=al)
    pos = np.array([theta_position(n, k.k1, k.k2) for k in om], dtype=np.int64)
    dense = np.zeros((theta_size(n), theta_size(n)))
    dense[np.ix_(pos, pos)] = block
    iu = np.triu_indices(theta_size(n))
    out.data[:] = dense[iu]
    return out


def _sweep_reference(n: int, a1: float, a2: float, a3: float) -> np.ndarray:
    """Plain-Python block sweep; same algorithm as the compiled kernel.

    Quadratic memory, Python-speed loops — useful up to n ~ 10 as an
    independent check that compilation did not change the arithmetic.
    """
    N = theta_size(n)
    off = [theta_position(n, l1, 0) for l1 in range(n + 1)] + [N]
    D = np.zeros((N, N))

    # corner block row: series in univariate grid polynomials
    total = a1 + a2 + a3
    eta = a2 + a3 + 1.0
    W = total + n + 3.0
    pref = pochhammer(total + 3.0, n) / pochhammer(1.0, n)
    chead = pochhammer(a1 + 2.0, n) / pochhammer(eta + 1.0, n)
    for l1 in range(n + 1):
        M = n - l1
        cs = np.empty(M + 1)
        cs[0] = chead
        if M >= 1:
            cs[1] = cs[0] * (
                -(2.0 + eta) * W / ((a3 + 1.0) * (a1 + n + 1.0) * (eta + 1.0 + M))
            )
        for i in range(2, M + 1):
            cs[i] = cs[i - 1] * (
                -((2.0 * i + eta) / (2.0 * i - 2.0 + eta))
                * (W + i - 1.0)
                * (eta + i - 1.0)
                / ((a1 + n + 2.0 - i) * i * (a3 + i) * (eta + i + M))
            )
        for l2 in range(M + 1):
            hv = hahn_eval(M, float(l2), a2, a3, float(M))
            D[0, off[l1] + l2] = pref * float(cs @ hv)
        pref *= -1.0 / (a1 + 2.0 + l1)
        chead *= eta + M

    def sig(t1, t2):
        s0 = (t1 + t2 - n) * (t2 + a2 + 1.0)
        s2 = t2 * (t1 + t2 - a3 - n - 1.0)
        return s0, s2

    def tau(t1, t2):
        t0 = (t1 + t2 - n) * (t1 + a1 + 1.0)
        tt2 = t1 * (t1 + t2 - a3 - n - 1.0)
        return t0, tt2

    zrow = np.zeros(N)
    for k1 in range(n + 1):
        for k2 in range(1, n - k1 + 1):
            row_t = D[off[k1] + k2]
            row_c = D[off[k1] + k2 - 1]
            row_p = zrow if k2 == 1 else D[off[k1] + k2 - 2]
            sk0, sk2 = sig(k1, k2 - 1)
            for l1 in range(k1, n + 1):
                for l2 in range(n - l1 + 1):
                    p = off[l1] + l2
                    sl0, sl2 = sig(l1, l2)
                    val = (sk0 + sk2 - sl0 - sl2) * row_c[p] - sk2 * row_p[p]
                    if sl0 != 0.0:
                        val += sl0 * row_c[p + 1]
                    if sl2 != 0.0:
                        val += sl2 * row_c[p - 1]
                    row_t[p] = val / sk0
        if k1 < n:
            row_t = D[off[k1 + 1]]
            row_c = D[off[k1]]
            row_p = zrow if k1 == 0 else D[off[k1 - 1]]
            tk0, tk2 = tau(k1, 0)
            for l1 in range(k1 + 1, n + 1):
                for l2 in range(n - l1 + 1):
                    p = off[l1] + l2
                    tl0, tl2 = tau(l1, l2)
                    val = (tk0 + tk2 - tl0 - tl2) * row_c[p] - tk2 * row_p[p]
                    if tl0 != 0.0:
                        val += tl0 * row_c[off[l1 + 1] + l2]
                    if tl2 != 0.0:
                        val += tl2 * row_c[off[l1 - 1] + l2]
                    row_t[p] = val / tk0

    iu = np.triu_indices(N)
    return D[iu]
